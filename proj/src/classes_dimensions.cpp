#include <algorithm>
#include <array>
#include <bit>
#include <exception>
#include <limits>
#include <unordered_set>

#include "cpnet/classes.hpp"

namespace cpnet {

namespace {

Labels low_bits(std::size_t w) { return w >= 64 ? ~Labels{0} : (Labels{1} << w) - 1; }

// Next subset of the same cardinality in increasing numeric order.
Labels next_combination(Labels x) {
  const Labels u = x & (~x + 1);
  const Labels v = u + x;
  return v + (((v ^ x) / u) >> 2);
}

template <typename Fn>
void for_each_subset_of_size(std::size_t w, std::size_t d, Fn&& fn) {
  if (d == 0) {
    fn(Labels{0});
    return;
  }
  if (d > w) return;
  const Labels limit = Labels{1} << w;
  for (Labels s = (Labels{1} << d) - 1; s < limit; s = next_combination(s)) {
    if (!fn(s)) return;
  }
}

std::size_t floor_log2(std::size_t x) { return x == 0 ? 0 : std::bit_width(x) - 1; }

void require_narrow(const ConceptClass& cls) {
  if (cls.width >= 64) throw BudgetExceeded("subset searches need fewer than 64 instances");
}

// Minimum hitting set of the difference vectors by branch and bound.
class HittingSet {
 public:
  HittingSet(std::vector<Labels> sets, std::uint64_t max_nodes) : max_nodes_(max_nodes) {
    std::sort(sets.begin(), sets.end(), [](Labels a, Labels b) {
      const int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    // Supersets of other difference vectors are hit automatically.
    for (Labels s : sets) {
      bool redundant = false;
      for (Labels t : sets_) {
        if ((t & s) == t) {
          redundant = true;
          break;
        }
      }
      if (!redundant) sets_.push_back(s);
    }
  }

  std::size_t solve() {
    best_ = greedy();
    search(0, 0, 0);
    return best_;
  }

 private:
  std::size_t greedy() const {
    Labels chosen = 0;
    std::size_t count = 0;
    for (;;) {
      std::array<std::size_t, 64> hits{};
      bool open = false;
      for (Labels s : sets_) {
        if (s & chosen) continue;
        open = true;
        for (Labels rest = s; rest; rest &= rest - 1) ++hits[static_cast<std::size_t>(std::countr_zero(rest))];
      }
      if (!open) return count;
      const auto pick = static_cast<std::size_t>(std::max_element(hits.begin(), hits.end()) - hits.begin());
      chosen |= Labels{1} << pick;
      ++count;
    }
  }

  void search(Labels chosen, Labels forbidden, std::size_t depth) {
    if (++nodes_ > max_nodes_) throw BudgetExceeded("teaching dimension search exceeds node budget");
    Labels branch = 0;
    int branch_size = std::numeric_limits<int>::max();
    Labels packed = 0;
    std::size_t packing = 0;
    for (Labels s : sets_) {
      if (s & chosen) continue;
      const Labels avail = s & ~forbidden;
      if (avail == 0) return;
      const int size = std::popcount(avail);
      if (size < branch_size) {
        branch_size = size;
        branch = avail;
      }
      if ((avail & packed) == 0) {
        packed |= avail;
        ++packing;
      }
    }
    if (branch == 0) {
      best_ = std::min(best_, depth);
      return;
    }
    if (depth + packing >= best_) return;
    for (Labels rest = branch; rest; rest &= rest - 1) {
      const Labels bit = rest & (~rest + 1);
      search(chosen | bit, forbidden, depth + 1);
      forbidden |= bit;
      if (depth + 1 >= best_) return;
    }
  }

  std::vector<Labels> sets_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::size_t best_ = 0;
};

std::vector<Labels> differences(std::size_t target, const std::vector<Labels>& labels) {
  std::vector<Labels> out;
  out.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (i != target) out.push_back(labels[i] ^ labels[target]);
  return out;
}

std::size_t td_of(std::size_t target, const std::vector<Labels>& labels, const Budget& budget) {
  return HittingSet(differences(target, labels), budget.max_nodes).solve();
}

std::vector<Labels> labels_of(const ConceptClass& cls) {
  std::vector<Labels> out;
  out.reserve(cls.size());
  for (const Concept& c : cls.concepts) out.push_back(c.labels);
  return out;
}

std::vector<std::size_t> td_parallel(const std::vector<Labels>& labels, const Budget& budget) {
  std::vector<std::size_t> out(labels.size(), 0);
  std::exception_ptr failure;
  const auto count = static_cast<long>(labels.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = td_of(static_cast<std::size_t>(i), labels, budget);
    } catch (...) {
#pragma omp critical(cpnet_td_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

bool shatters(const ConceptClass& cls, Labels subset) {
  const auto d = static_cast<std::size_t>(std::popcount(subset));
  if (d >= 64 || cls.size() < (std::size_t{1} << std::min<std::size_t>(d, 63))) return false;
  if (d == 0) return !cls.concepts.empty();
  std::vector<unsigned> positions;
  for (Labels rest = subset; rest; rest &= rest - 1)
    positions.push_back(static_cast<unsigned>(std::countr_zero(rest)));
  const std::size_t patterns = std::size_t{1} << d;
  std::vector<bool> seen(patterns, false);
  std::size_t count = 0;
  for (const Concept& c : cls.concepts) {
    std::size_t p = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) p |= ((c.labels >> positions[i]) & 1) << i;
    if (!seen[p]) {
      seen[p] = true;
      if (++count == patterns) return true;
    }
  }
  return false;
}

std::size_t vcd_reference(const ConceptClass& cls, const Budget& budget) {
  if (cls.concepts.empty()) return 0;
  require_narrow(cls);
  const std::size_t dmax = std::min(cls.width, floor_log2(cls.size()));
  std::uint64_t work = 0;
  for (std::size_t d = 1; d <= dmax; ++d) work += binomial(static_cast<unsigned>(cls.width), static_cast<unsigned>(d));
  if (work > budget.max_work / std::max<std::size_t>(1, cls.size()))
    throw BudgetExceeded("shattering search exceeds the work budget");
  for (std::size_t d = dmax; d >= 1; --d) {
    bool found = false;
    for_each_subset_of_size(cls.width, d, [&](Labels s) {
      if (shatters(cls, s)) found = true;
      return !found;
    });
    if (found) return d;
  }
  return 0;
}

namespace {

// Every shattered set, level by level; level d holds the shattered d-subsets.
std::vector<std::vector<Labels>> shattered_levels(const ConceptClass& cls, const Budget& budget,
                                                  bool keep_all) {
  std::vector<std::vector<Labels>> levels;
  if (cls.concepts.empty()) return levels;
  require_narrow(cls);
  levels.push_back({Labels{0}});
  std::uint64_t work = 0;
  std::size_t stored = 1;
  for (std::size_t d = 0;; ++d) {
    if ((std::size_t{1} << std::min<std::size_t>(d + 1, 63)) > cls.size()) break;
    const std::vector<Labels>& current = levels.back();
    std::unordered_set<Labels> lookup(current.begin(), current.end());
    std::vector<Labels> candidates;
    for (Labels s : current) {
      const std::size_t start = s == 0 ? 0 : static_cast<std::size_t>(std::bit_width(s));
      for (std::size_t j = start; j < cls.width; ++j) {
        const Labels t = s | (Labels{1} << j);
        bool all_subsets = true;
        for (Labels rest = s; rest && all_subsets; rest &= rest - 1) {
          const Labels bit = rest & (~rest + 1);
          if (!lookup.count(t & ~bit)) all_subsets = false;
        }
        if (all_subsets) candidates.push_back(t);
      }
    }
    work += candidates.size() * cls.size();
    if (work > budget.max_work) throw BudgetExceeded("shattering search exceeds the work budget");
    std::vector<char> ok(candidates.size(), 0);
    const auto count = static_cast<long>(candidates.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < count; ++i)
      ok[static_cast<std::size_t>(i)] = shatters(cls, candidates[static_cast<std::size_t>(i)]) ? 1 : 0;
    std::vector<Labels> next;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (ok[i]) next.push_back(candidates[i]);
    if (next.empty()) break;
    stored += next.size();
    if (stored > budget.max_shattered_sets)
      throw BudgetExceeded("too many shattered sets to keep");
    levels.push_back(std::move(next));
    if (!keep_all) levels[levels.size() - 2].clear();
  }
  return levels;
}

}  // namespace

std::size_t vcd(const ConceptClass& cls, const Budget& budget) {
  const auto levels = shattered_levels(cls, budget, false);
  return levels.empty() ? 0 : levels.size() - 1;
}

std::size_t td(std::size_t concept_index, const ConceptClass& cls, const Budget& budget) {
  if (concept_index >= cls.size()) throw ValidationError("concept index out of range");
  return td_of(concept_index, labels_of(cls), budget);
}

std::size_t td(const CpNet& net, const ConceptClass& cls, const Budget& budget) {
  const auto idx = cls.find(label_vector(net, cls.instances));
  if (!idx) throw ValidationError("net is not a member of the class");
  return td(*idx, cls, budget);
}

std::size_t td_reference(std::size_t concept_index, const ConceptClass& cls, const Budget& budget) {
  if (concept_index >= cls.size()) throw ValidationError("concept index out of range");
  require_narrow(cls);
  const std::vector<Labels> diffs = differences(concept_index, labels_of(cls));
  std::uint64_t work = 0;
  for (std::size_t s = 0; s <= cls.width; ++s) {
    std::optional<std::size_t> found;
    const std::uint64_t subsets = binomial(static_cast<unsigned>(cls.width), static_cast<unsigned>(s));
    const std::uint64_t per_subset = std::max<std::size_t>(1, diffs.size());
    if (subsets > (budget.max_work - work) / per_subset)
      throw BudgetExceeded("teaching set search exceeds the work budget");
    work += subsets * per_subset;
    for_each_subset_of_size(cls.width, s, [&](Labels subset) {
      const bool teaches = std::all_of(diffs.begin(), diffs.end(),
                                       [subset](Labels d) { return (d & subset) != 0; });
      if (teaches) found = s;
      return !found;
    });
    if (found) return *found;
  }
  throw ValidationError("class contains duplicate concepts");
}

std::vector<std::size_t> td_all(const ConceptClass& cls, const Budget& budget) {
  return td_parallel(labels_of(cls), budget);
}

std::vector<std::size_t> td_all_reference(const ConceptClass& cls, const Budget& budget) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cls.size(); ++i) out.push_back(td_reference(i, cls, budget));
  return out;
}

std::size_t td_class(const ConceptClass& cls, const Budget& budget) {
  const auto all = td_all(cls, budget);
  return all.empty() ? 0 : *std::max_element(all.begin(), all.end());
}

std::size_t td_min(const ConceptClass& cls, const Budget& budget) {
  const auto all = td_all(cls, budget);
  return all.empty() ? 0 : *std::min_element(all.begin(), all.end());
}

std::size_t rtd(const ConceptClass& cls, const Budget& budget) {
  std::vector<Labels> remaining = labels_of(cls);
  std::size_t result = 0;
  while (!remaining.empty()) {
    const auto tds = td_parallel(remaining, budget);
    const std::size_t lowest = *std::min_element(tds.begin(), tds.end());
    result = std::max(result, lowest);
    std::vector<Labels> next;
    for (std::size_t i = 0; i < remaining.size(); ++i)
      if (tds[i] != lowest) next.push_back(remaining[i]);
    remaining = std::move(next);
  }
  return result;
}

namespace detail {

std::vector<std::vector<Labels>> all_shattered_sets(const ConceptClass& cls, const Budget& budget) {
  return shattered_levels(cls, budget, true);
}

Labels full_mask(std::size_t w) { return low_bits(w); }

}  // namespace detail

}  // namespace cpnet
