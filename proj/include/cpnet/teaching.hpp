#pragma once

#include <optional>
#include <vector>

#include "cpnet/classes.hpp"
#include "cpnet/core.hpp"
#include "cpnet/io.hpp"
#include "cpnet/universal.hpp"

namespace cpnet {

struct LabeledExample {
  SwapInstance x;
  int label = 0;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

struct TeachingSet {
  std::vector<LabeledExample> examples;
  CpNet target;

  std::size_t size() const { return examples.size(); }
};

// Example stating better > worse. Complete classes use the canonical instance,
// otherwise the instance keeps the given direction.
LabeledExample preference_example(const Outcome& better, const Outcome& worse, bool complete);

// A complete net of size M_k; no net of the class strictly subsumes it.
bool is_maximal(const CpNet& net, const ClassSpec& spec);

TeachingSet teaching_set_maximal(const CpNet& net, const ClassSpec& spec);
TeachingSet teaching_set_universal(const CpNet& net, const ClassSpec& spec, const UniversalSet& u);
TeachingSet teaching_set_incomplete(const CpNet& net, const ClassSpec& spec, const UniversalSet& u);

bool verify_teaching_set(const TeachingSet& t, const ConceptClass& cls);

// First x in xs (ascending) with a partner differing only at the parent and labeled differently.
std::optional<ConflictPair> conflict_pair_from(const CpNet& net, std::vector<SwapInstance> xs,
                                               int parent);
// Exhaustive search over the instance space of the net's class.
std::optional<ConflictPair> find_conflict_pair(const CpNet& net, int child, int parent);

json teaching_set_to_json(const TeachingSet& t);

}  // namespace cpnet
