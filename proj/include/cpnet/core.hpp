#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cpnet/errors.hpp"

namespace cpnet {

enum class Completeness { CompleteOnly, AllowIncomplete };

struct ClassSpec {
  int n = 1;
  int m = 2;
  int k = 0;
  Completeness completeness = Completeness::CompleteOnly;

  void validate() const;
  bool complete() const { return completeness == Completeness::CompleteOnly; }

  friend bool operator==(const ClassSpec&, const ClassSpec&) = default;
};

// Value indices per variable; index 0 is the unbarred value.
using Outcome = std::vector<int>;

struct SwapInstance {
  Outcome first;
  Outcome second;
  int swapped = 0;

  SwapInstance reversed() const { return {second, first, swapped}; }

  friend auto operator<=>(const SwapInstance&, const SwapInstance&) = default;
  friend bool operator==(const SwapInstance&, const SwapInstance&) = default;
};

// Two swaps on the same variable and value pair that a net labels differently.
struct ConflictPair {
  SwapInstance x;
  SwapInstance x2;
  int child = 0;
  int witness_parent = 0;
};

// Most-preferred value first; an empty order means the row carries no statement.
using Order = std::vector<int>;

struct PreferenceStatement {
  Outcome context;  // values of the parents, in parent order
  Order order;

  bool empty() const { return order.empty(); }
};

struct Cpt {
  int variable = 0;
  std::vector<int> parents;  // sorted
  std::vector<Order> rows;   // one per parent context, lexicographic

  // Row index of the parent context carried by a full outcome.
  std::size_t context_index(const Outcome& o, int m) const;
  // Parent values of the given row.
  Outcome context(std::size_t row, int m) const;
  std::vector<PreferenceStatement> statements(int m) const;
  std::size_t size() const;

  friend bool operator==(const Cpt&, const Cpt&) = default;
};

std::uint64_t ipow(std::uint64_t base, unsigned exp);
std::uint64_t binomial(unsigned n, unsigned k);

bool is_total_order(const Order& order, int m);
// Position of value in order, or -1 when the order is empty.
int rank_in(const Order& order, int value);
// True when some parent never changes the statement when it alone changes.
bool has_dummy_parent(const Cpt& cpt, int m);
Cpt prune_dummy_parents(Cpt cpt, int m);

class CpNet {
 public:
  CpNet(ClassSpec spec, std::vector<Cpt> cpts);
  // Same checks except that the dependency graph may contain cycles.
  static CpNet relaxed(ClassSpec spec, std::vector<Cpt> cpts);

  const ClassSpec& spec() const { return spec_; }
  const std::vector<Cpt>& cpts() const { return cpts_; }
  const Cpt& cpt(int v) const { return cpts_.at(static_cast<std::size_t>(v)); }
  int n() const { return spec_.n; }
  int m() const { return spec_.m; }

  bool acyclic() const { return acyclic_; }
  bool complete() const;
  std::size_t size() const;
  std::size_t edge_count() const;
  std::vector<std::pair<int, int>> edges() const;

  friend bool operator==(const CpNet& a, const CpNet& b) {
    return a.spec_ == b.spec_ && a.cpts_ == b.cpts_;
  }

 private:
  CpNet(ClassSpec spec, std::vector<Cpt> cpts, bool require_acyclic);

  ClassSpec spec_;
  std::vector<Cpt> cpts_;
  bool acyclic_ = true;
};

bool has_cycle(int n, const std::vector<std::pair<int, int>>& edges);

SwapInstance canonical_swap(const Outcome& o, const Outcome& o2);
bool is_canonical(const SwapInstance& x);
std::vector<SwapInstance> instance_space(const ClassSpec& spec, bool redundancies);

int evaluate_swap(const CpNet& net, const SwapInstance& x);

std::uint64_t max_size(const ClassSpec& spec);
std::uint64_t max_edges(const ClassSpec& spec);

bool subsumes(const CpNet& net, const CpNet& net2);
bool strictly_subsumes(const CpNet& net, const CpNet& net2);

CpNet complete_extension(const CpNet& net);
// Every statement reversed; all swap labels of a complete net flip.
CpNet complement(const CpNet& net);

// Induced preference graph over all m^n outcomes; vertex i is outcome_at(i).
inline constexpr std::size_t kDefaultVertexLimit = std::size_t{1} << 20;

struct PreferenceGraph {
  int n = 0;
  int m = 2;
  std::vector<std::vector<std::size_t>> adjacency;  // worse -> better
  std::size_t edge_count = 0;

  std::size_t vertex_count() const { return adjacency.size(); }
};

std::size_t outcome_index(const Outcome& o, int m);
Outcome outcome_at(std::size_t index, int n, int m);

PreferenceGraph induced_preference_graph(const CpNet& net,
                                         std::size_t vertex_limit = kDefaultVertexLimit);
bool is_consistent(const CpNet& net, std::size_t vertex_limit = kDefaultVertexLimit);
// True iff o is preferred to o2 via a sequence of improving flips.
bool dominates(const CpNet& net, const Outcome& o, const Outcome& o2,
               std::size_t vertex_limit = kDefaultVertexLimit);

}  // namespace cpnet
