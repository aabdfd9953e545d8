#include "cpnet/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

namespace cpnet {

void ClassSpec::validate() const {
  if (n < 1) throw ValidationError("n must be at least 1");
  if (m < 2) throw ValidationError("m must be at least 2");
  if (k < 0 || k > n - 1) throw ValidationError("k must lie in [0, n-1]");
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base)
      throw BudgetExceeded("integer power overflows 64 bits");
    result *= base;
  }
  return result;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (unsigned i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

std::size_t Cpt::context_index(const Outcome& o, int m) const {
  std::size_t idx = 0;
  for (int p : parents) idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(o[p]);
  return idx;
}

Outcome Cpt::context(std::size_t row, int m) const {
  Outcome ctx(parents.size());
  for (std::size_t i = parents.size(); i-- > 0;) {
    ctx[i] = static_cast<int>(row % static_cast<std::size_t>(m));
    row /= static_cast<std::size_t>(m);
  }
  return ctx;
}

std::vector<PreferenceStatement> Cpt::statements(int m) const {
  std::vector<PreferenceStatement> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) out.push_back({context(r, m), rows[r]});
  return out;
}

std::size_t Cpt::size() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const Order& o) { return !o.empty(); }));
}

bool is_total_order(const Order& order, int m) {
  if (order.size() != static_cast<std::size_t>(m)) return false;
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (int v : order) {
    if (v < 0 || v >= m || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

int rank_in(const Order& order, int value) {
  auto it = std::find(order.begin(), order.end(), value);
  return it == order.end() ? -1 : static_cast<int>(it - order.begin());
}

namespace {

// Stride of parent position i in the row index.
std::size_t stride_of(const Cpt& cpt, std::size_t i, int m) {
  return static_cast<std::size_t>(ipow(static_cast<std::uint64_t>(m),
                                       static_cast<unsigned>(cpt.parents.size() - 1 - i)));
}

bool parent_relevant(const Cpt& cpt, std::size_t i, int m) {
  const std::size_t stride = stride_of(cpt, i, m);
  for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
    const std::size_t digit = (r / stride) % static_cast<std::size_t>(m);
    if (digit != 0) continue;
    for (int d = 1; d < m; ++d) {
      if (cpt.rows[r + static_cast<std::size_t>(d) * stride] != cpt.rows[r]) return true;
    }
  }
  return false;
}

void validate_cpt(const Cpt& cpt, const ClassSpec& spec, int v) {
  const std::string where = "CPT of variable " + std::to_string(v) + ": ";
  if (cpt.variable != v) throw ValidationError(where + "variable index mismatch");
  if (!std::is_sorted(cpt.parents.begin(), cpt.parents.end()) ||
      std::adjacent_find(cpt.parents.begin(), cpt.parents.end()) != cpt.parents.end())
    throw ValidationError(where + "parents must be sorted and distinct");
  for (int p : cpt.parents) {
    if (p < 0 || p >= spec.n) throw ValidationError(where + "parent out of range");
    if (p == v) throw ValidationError(where + "variable cannot be its own parent");
  }
  if (cpt.parents.size() > static_cast<std::size_t>(spec.k))
    throw ValidationError(where + "more parents than the indegree bound");
  const std::uint64_t expected =
      ipow(static_cast<std::uint64_t>(spec.m), static_cast<unsigned>(cpt.parents.size()));
  if (cpt.rows.size() != expected) throw ValidationError(where + "wrong number of rows");
  for (const Order& row : cpt.rows) {
    if (row.empty()) {
      if (spec.complete()) throw ValidationError(where + "empty row in a complete net");
      continue;
    }
    if (!is_total_order(row, spec.m)) throw ValidationError(where + "row is not a total order");
  }
  if (has_dummy_parent(cpt, spec.m)) throw ValidationError(where + "dummy parent");
}

}  // namespace

bool has_dummy_parent(const Cpt& cpt, int m) {
  for (std::size_t i = 0; i < cpt.parents.size(); ++i) {
    if (!parent_relevant(cpt, i, m)) return true;
  }
  return false;
}

Cpt prune_dummy_parents(Cpt cpt, int m) {
  for (;;) {
    std::size_t dummy = cpt.parents.size();
    for (std::size_t i = 0; i < cpt.parents.size(); ++i) {
      if (!parent_relevant(cpt, i, m)) {
        dummy = i;
        break;
      }
    }
    if (dummy == cpt.parents.size()) return cpt;
    Cpt reduced;
    reduced.variable = cpt.variable;
    for (std::size_t i = 0; i < cpt.parents.size(); ++i)
      if (i != dummy) reduced.parents.push_back(cpt.parents[i]);
    reduced.rows.resize(cpt.rows.size() / static_cast<std::size_t>(m));
    for (std::size_t r = 0; r < reduced.rows.size(); ++r) {
      Outcome small = reduced.context(r, m);
      Outcome full;
      for (std::size_t i = 0, j = 0; i < cpt.parents.size(); ++i)
        full.push_back(i == dummy ? 0 : small[j++]);
      std::size_t idx = 0;
      for (int value : full) idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(value);
      reduced.rows[r] = cpt.rows[idx];
    }
    cpt = std::move(reduced);
  }
}

bool has_cycle(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (auto [from, to] : edges) {
    out[static_cast<std::size_t>(from)].push_back(to);
    ++indegree[static_cast<std::size_t>(to)];
  }
  std::queue<int> ready;
  for (int v = 0; v < n; ++v)
    if (indegree[static_cast<std::size_t>(v)] == 0) ready.push(v);
  int seen = 0;
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop();
    ++seen;
    for (int w : out[static_cast<std::size_t>(v)])
      if (--indegree[static_cast<std::size_t>(w)] == 0) ready.push(w);
  }
  return seen != n;
}

CpNet::CpNet(ClassSpec spec, std::vector<Cpt> cpts) : CpNet(spec, std::move(cpts), true) {}

CpNet CpNet::relaxed(ClassSpec spec, std::vector<Cpt> cpts) {
  return CpNet(spec, std::move(cpts), false);
}

CpNet::CpNet(ClassSpec spec, std::vector<Cpt> cpts, bool require_acyclic)
    : spec_(spec), cpts_(std::move(cpts)) {
  spec_.validate();
  if (cpts_.size() != static_cast<std::size_t>(spec_.n))
    throw ValidationError("expected one CPT per variable");
  for (int v = 0; v < spec_.n; ++v) validate_cpt(cpts_[static_cast<std::size_t>(v)], spec_, v);
  acyclic_ = !has_cycle(spec_.n, edges());
  if (require_acyclic && !acyclic_) throw ValidationError("dependency graph has a cycle");
}

bool CpNet::complete() const {
  return std::all_of(cpts_.begin(), cpts_.end(), [](const Cpt& c) {
    return std::none_of(c.rows.begin(), c.rows.end(), [](const Order& o) { return o.empty(); });
  });
}

std::size_t CpNet::size() const {
  std::size_t total = 0;
  for (const Cpt& c : cpts_) total += c.size();
  return total;
}

std::size_t CpNet::edge_count() const {
  std::size_t total = 0;
  for (const Cpt& c : cpts_) total += c.parents.size();
  return total;
}

std::vector<std::pair<int, int>> CpNet::edges() const {
  std::vector<std::pair<int, int>> out;
  for (const Cpt& c : cpts_)
    for (int p : c.parents) out.emplace_back(p, c.variable);
  return out;
}

SwapInstance canonical_swap(const Outcome& o, const Outcome& o2) {
  if (o.size() != o2.size()) throw NotASwap("outcomes have different lengths");
  int swapped = -1;
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (o[i] == o2[i]) continue;
    if (swapped >= 0) throw NotASwap("outcomes differ in more than one variable");
    swapped = static_cast<int>(i);
  }
  if (swapped < 0) throw NotASwap("outcomes are identical");
  if (o[static_cast<std::size_t>(swapped)] < o2[static_cast<std::size_t>(swapped)])
    return {o, o2, swapped};
  return {o2, o, swapped};
}

bool is_canonical(const SwapInstance& x) {
  const auto v = static_cast<std::size_t>(x.swapped);
  return x.first[v] < x.second[v];
}

std::vector<SwapInstance> instance_space(const ClassSpec& spec, bool redundancies) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.n);
  const std::uint64_t contexts = ipow(static_cast<std::uint64_t>(spec.m), spec.n - 1);
  std::vector<SwapInstance> out;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::uint64_t c = 0; c < contexts; ++c) {
      Outcome base(n, 0);
      std::uint64_t rest = c;
      for (std::size_t i = n; i-- > 0;) {
        if (i == v) continue;
        base[i] = static_cast<int>(rest % static_cast<std::uint64_t>(spec.m));
        rest /= static_cast<std::uint64_t>(spec.m);
      }
      for (int a = 0; a < spec.m; ++a) {
        for (int b = a + 1; b < spec.m; ++b) {
          Outcome lo = base, hi = base;
          lo[v] = a;
          hi[v] = b;
          out.push_back({lo, hi, static_cast<int>(v)});
          if (redundancies) out.push_back({hi, lo, static_cast<int>(v)});
        }
      }
    }
  }
  return out;
}

int evaluate_swap(const CpNet& net, const SwapInstance& x) {
  const Cpt& cpt = net.cpt(x.swapped);
  const Order& row = cpt.rows[cpt.context_index(x.first, net.m())];
  if (row.empty()) return 0;
  const auto v = static_cast<std::size_t>(x.swapped);
  return rank_in(row, x.first[v]) < rank_in(row, x.second[v]) ? 1 : 0;
}

std::uint64_t max_size(const ClassSpec& spec) {
  spec.validate();
  const auto m = static_cast<std::uint64_t>(spec.m);
  const std::uint64_t mk = ipow(m, static_cast<unsigned>(spec.k));
  return static_cast<std::uint64_t>(spec.n - spec.k) * mk + (mk - 1) / (m - 1);
}

std::uint64_t max_edges(const ClassSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::uint64_t>(spec.n);
  const auto k = static_cast<std::uint64_t>(spec.k);
  return (n - k) * k + k * (k - 1) / 2;
}

bool subsumes(const CpNet& net, const CpNet& net2) {
  if (net.n() != net2.n() || net.m() != net2.m()) return false;
  const int m = net.m();
  for (int v = 0; v < net.n(); ++v) {
    const Cpt& big = net.cpt(v);
    const Cpt& small = net2.cpt(v);
    // Position of each of small's parents inside big's parent list.
    std::vector<std::size_t> where;
    for (int p : small.parents) {
      auto it = std::find(big.parents.begin(), big.parents.end(), p);
      where.push_back(static_cast<std::size_t>(it - big.parents.begin()));
    }
    for (std::size_t r2 = 0; r2 < small.rows.size(); ++r2) {
      const Order& order2 = small.rows[r2];
      if (order2.empty()) continue;
      for (std::size_t w : where)
        if (w == big.parents.size()) return false;
      const Outcome ctx2 = small.context(r2, m);
      for (std::size_t i = 0; i < order2.size(); ++i) {
        for (std::size_t j = i + 1; j < order2.size(); ++j) {
          bool found = false;
          for (std::size_t r1 = 0; r1 < big.rows.size() && !found; ++r1) {
            const Order& order1 = big.rows[r1];
            if (order1.empty()) continue;
            const Outcome ctx1 = big.context(r1, m);
            bool extends = true;
            for (std::size_t q = 0; q < where.size(); ++q)
              if (ctx1[where[q]] != ctx2[q]) extends = false;
            if (extends && rank_in(order1, order2[i]) < rank_in(order1, order2[j])) found = true;
          }
          if (!found) return false;
        }
      }
    }
  }
  return true;
}

bool strictly_subsumes(const CpNet& net, const CpNet& net2) {
  return subsumes(net, net2) && !(net == net2);
}

CpNet complete_extension(const CpNet& net) {
  std::vector<Cpt> cpts = net.cpts();
  Order identity(static_cast<std::size_t>(net.m()));
  std::iota(identity.begin(), identity.end(), 0);
  for (Cpt& cpt : cpts) {
    for (Order& row : cpt.rows)
      if (row.empty()) row = identity;
    cpt = prune_dummy_parents(std::move(cpt), net.m());
  }
  return CpNet(net.spec(), std::move(cpts));
}

CpNet complement(const CpNet& net) {
  std::vector<Cpt> cpts = net.cpts();
  for (Cpt& cpt : cpts)
    for (Order& row : cpt.rows) std::reverse(row.begin(), row.end());
  if (net.acyclic()) return CpNet(net.spec(), std::move(cpts));
  return CpNet::relaxed(net.spec(), std::move(cpts));
}

}  // namespace cpnet
