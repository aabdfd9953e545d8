#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "cpnet/classes.hpp"

namespace cpnet {

std::optional<std::size_t> ConceptClass::find(Labels labels) const {
  for (std::size_t i = 0; i < concepts.size(); ++i)
    if (concepts[i].labels == labels) return i;
  return std::nullopt;
}

std::optional<std::size_t> ConceptClass::index_of(const SwapInstance& x) const {
  for (std::size_t i = 0; i < instances.size(); ++i)
    if (instances[i] == x) return i;
  return std::nullopt;
}

Labels label_vector(const CpNet& net, const std::vector<SwapInstance>& instances) {
  if (instances.size() > kMaxInstances) throw BudgetExceeded("more than 64 instances");
  Labels labels = 0;
  for (std::size_t i = 0; i < instances.size(); ++i)
    if (evaluate_swap(net, instances[i])) labels |= Labels{1} << i;
  return labels;
}

ConceptClass synthetic_class(std::size_t width, const std::vector<Labels>& labels) {
  if (width > kMaxInstances) throw BudgetExceeded("more than 64 instances");
  ConceptClass cls;
  cls.width = width;
  const Labels mask = width == 64 ? ~Labels{0} : (Labels{1} << width) - 1;
  for (Labels l : labels) {
    if (l & ~mask) throw ValidationError("label vector wider than the instance space");
    if (!cls.find(l)) cls.concepts.push_back({l, std::nullopt});
  }
  return cls;
}

namespace {

std::vector<Order> row_options(const ClassSpec& spec) {
  std::vector<Order> out;
  Order perm(static_cast<std::size_t>(spec.m));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!spec.complete()) out.push_back({});
  return out;
}

// All row tuples for a CPT with the given number of parents that leave no parent dummy.
std::vector<std::vector<Order>> minimal_fillings(const ClassSpec& spec, std::size_t parents) {
  const std::vector<Order> options = row_options(spec);
  const auto rows = static_cast<std::size_t>(ipow(static_cast<std::uint64_t>(spec.m),
                                                  static_cast<unsigned>(parents)));
  Cpt probe;
  probe.parents.resize(parents);
  std::iota(probe.parents.begin(), probe.parents.end(), 0);
  std::vector<std::size_t> pick(rows, 0);
  std::vector<std::vector<Order>> out;
  for (;;) {
    probe.rows.clear();
    for (std::size_t r = 0; r < rows; ++r) probe.rows.push_back(options[pick[r]]);
    if (!has_dummy_parent(probe, spec.m)) out.push_back(probe.rows);
    std::size_t pos = rows;
    while (pos > 0) {
      --pos;
      if (++pick[pos] < options.size()) break;
      pick[pos] = 0;
      if (pos == 0) return out;
    }
    if (rows == 0) return out;
  }
}

std::vector<std::vector<int>> parent_sets(const ClassSpec& spec, int v) {
  std::vector<int> others;
  for (int i = 0; i < spec.n; ++i)
    if (i != v) others.push_back(i);
  std::vector<std::vector<int>> out;
  const auto count = std::size_t{1} << others.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<int> set;
    for (std::size_t i = 0; i < others.size(); ++i)
      if (mask >> i & 1) set.push_back(others[i]);
    if (set.size() <= static_cast<std::size_t>(spec.k)) out.push_back(std::move(set));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

}  // namespace

std::vector<CpNet> enumerate_nets(const ClassSpec& spec, const Budget& budget) {
  spec.validate();
  if (spec.n > 6) throw BudgetExceeded("enumeration limited to n <= 6");
  std::map<std::size_t, std::vector<std::vector<Order>>> fillings;
  std::vector<std::vector<std::vector<int>>> options;
  for (int v = 0; v < spec.n; ++v) options.push_back(parent_sets(spec, v));
  auto fillings_for = [&](std::size_t parents) -> const std::vector<std::vector<Order>>& {
    auto it = fillings.find(parents);
    if (it == fillings.end()) it = fillings.emplace(parents, minimal_fillings(spec, parents)).first;
    return it->second;
  };

  // Visit every acyclic parent assignment; the callback receives the chosen index per variable.
  auto for_each_graph = [&](auto&& fn) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(spec.n), 0);
    for (;;) {
      std::vector<std::pair<int, int>> edges;
      for (int v = 0; v < spec.n; ++v)
        for (int p : options[static_cast<std::size_t>(v)][pick[static_cast<std::size_t>(v)]])
          edges.emplace_back(p, v);
      if (!has_cycle(spec.n, edges)) fn(pick);
      std::size_t pos = pick.size();
      bool done = true;
      while (pos > 0) {
        --pos;
        if (++pick[pos] < options[pos].size()) {
          done = false;
          break;
        }
        pick[pos] = 0;
      }
      if (done) return;
    }
  };

  std::uint64_t total = 0;
  for_each_graph([&](const std::vector<std::size_t>& pick) {
    std::uint64_t product = 1;
    for (int v = 0; v < spec.n; ++v) {
      const auto& parents = options[static_cast<std::size_t>(v)][pick[static_cast<std::size_t>(v)]];
      product *= fillings_for(parents.size()).size();
      if (product > budget.max_nets) break;
    }
    total += product;
    if (total > budget.max_nets) throw BudgetExceeded("class enumeration exceeds the net budget");
  });

  std::vector<CpNet> nets;
  nets.reserve(static_cast<std::size_t>(total));
  for_each_graph([&](const std::vector<std::size_t>& pick) {
    std::vector<const std::vector<std::vector<Order>>*> tables;
    for (int v = 0; v < spec.n; ++v)
      tables.push_back(&fillings_for(
          options[static_cast<std::size_t>(v)][pick[static_cast<std::size_t>(v)]].size()));
    if (std::any_of(tables.begin(), tables.end(), [](auto* t) { return t->empty(); })) return;
    std::vector<std::size_t> choice(static_cast<std::size_t>(spec.n), 0);
    for (;;) {
      std::vector<Cpt> cpts;
      for (int v = 0; v < spec.n; ++v) {
        const auto uv = static_cast<std::size_t>(v);
        cpts.push_back({v, options[uv][pick[uv]], (*tables[uv])[choice[uv]]});
      }
      nets.emplace_back(spec, std::move(cpts));
      std::size_t pos = choice.size();
      bool done = true;
      while (pos > 0) {
        --pos;
        if (++choice[pos] < tables[pos]->size()) {
          done = false;
          break;
        }
        choice[pos] = 0;
      }
      if (done) return;
    }
  });
  return nets;
}

ConceptClass enumerate_class(const ClassSpec& spec, const Budget& budget) {
  ConceptClass cls;
  cls.instances = instance_space(spec, !spec.complete());
  if (cls.instances.size() > kMaxInstances)
    throw BudgetExceeded("instance space exceeds 64 swaps");
  cls.width = cls.instances.size();
  std::unordered_map<Labels, std::size_t> seen;
  for (CpNet& net : enumerate_nets(spec, budget)) {
    const Labels labels = label_vector(net, cls.instances);
    if (seen.emplace(labels, cls.concepts.size()).second)
      cls.concepts.push_back({labels, std::move(net)});
  }
  return cls;
}

ConceptClass separable_xsep_class(int n, int m) {
  const ClassSpec spec{n, m, 0, Completeness::CompleteOnly};
  spec.validate();
  ConceptClass cls;
  for (int v = 0; v < n; ++v) {
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        Outcome lo(static_cast<std::size_t>(n), 0), hi(static_cast<std::size_t>(n), 0);
        lo[static_cast<std::size_t>(v)] = a;
        hi[static_cast<std::size_t>(v)] = b;
        cls.instances.push_back({lo, hi, v});
      }
    }
  }
  if (cls.instances.size() > kMaxInstances) throw BudgetExceeded("instance space exceeds 64 swaps");
  cls.width = cls.instances.size();
  std::unordered_map<Labels, std::size_t> seen;
  for (CpNet& net : enumerate_nets(spec)) {
    const Labels labels = label_vector(net, cls.instances);
    if (seen.emplace(labels, cls.concepts.size()).second)
      cls.concepts.push_back({labels, std::move(net)});
  }
  return cls;
}

CpNet random_net(const ClassSpec& spec, std::mt19937_64& rng) {
  spec.validate();
  std::vector<int> order(static_cast<std::size_t>(spec.n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Cpt> cpts(static_cast<std::size_t>(spec.n));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int v = order[i];
    std::vector<int> earlier(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(i));
    std::shuffle(earlier.begin(), earlier.end(), rng);
    const int limit = std::min(static_cast<int>(i), spec.k);
    const int count = std::uniform_int_distribution<int>(0, limit)(rng);
    Cpt cpt;
    cpt.variable = v;
    cpt.parents.assign(earlier.begin(), earlier.begin() + count);
    std::sort(cpt.parents.begin(), cpt.parents.end());
    const auto rows = ipow(static_cast<std::uint64_t>(spec.m), static_cast<unsigned>(count));
    for (std::uint64_t r = 0; r < rows; ++r) {
      Order row(static_cast<std::size_t>(spec.m));
      std::iota(row.begin(), row.end(), 0);
      std::shuffle(row.begin(), row.end(), rng);
      if (!spec.complete() && std::uniform_int_distribution<int>(0, 2)(rng) == 0) row.clear();
      cpt.rows.push_back(std::move(row));
    }
    cpts[static_cast<std::size_t>(v)] = prune_dummy_parents(std::move(cpt), spec.m);
  }
  return CpNet(spec, std::move(cpts));
}

}  // namespace cpnet
