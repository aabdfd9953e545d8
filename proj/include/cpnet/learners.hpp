#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cpnet/core.hpp"
#include "cpnet/io.hpp"
#include "cpnet/oracles.hpp"
#include "cpnet/universal.hpp"

namespace cpnet {

struct LearnResult {
  CpNet net;
  std::size_t queries_used = 0;  // distinct instances charged during the run
  QueryLog transcript;
};

enum class Strategy { None, Lim, Mal };
enum class LearnerKind { Tree, KBounded };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);
std::string to_string(LearnerKind k);
LearnerKind learner_kind_from_string(const std::string& s);

// sets[j] lists the m outcomes that put every other variable at value j and v at each value.
struct TestSetFamily {
  int variable = 0;
  std::vector<std::vector<Outcome>> sets;
};

TestSetFamily test_sets(int v, const ClassSpec& spec);

// Label of x after the strategy: 1 when x.first is preferred, else 0.
// Lim asks x and falls back to a vote over f_ball(x, 1); Mal always votes over f_ball(x, 1).
int robust_answer(OracleSession& oracle, const SwapInstance& x, Strategy strategy);

// RevertToFirst keeps the original pair and resets eliminated candidates to the first swap's
// values; KeepPair moves to the sub-pair that still conflicts, which stays sound with several
// parents.
enum class Elimination { RevertToFirst, KeepPair };

int find_parent(OracleSession& oracle, const ConflictPair& conflict, std::vector<int> candidates,
                Strategy strategy = Strategy::None,
                Elimination elimination = Elimination::RevertToFirst);

LearnResult learn_tree_complete(OracleSession& oracle, const ClassSpec& spec,
                                Strategy strategy = Strategy::None);
LearnResult learn_tree_incomplete(OracleSession& oracle, const ClassSpec& spec);
LearnResult learn_kbounded_complete(OracleSession& oracle, const ClassSpec& spec,
                                    const UniversalSet& u, Strategy strategy = Strategy::None);
LearnResult learn_kbounded_incomplete(OracleSession& oracle, const ClassSpec& spec,
                                      const UniversalSet& u);
// Tree learner when k = 1, otherwise the k-bounded learner, with every query voted.
LearnResult learn_with_corruption(OracleSession& oracle, const ClassSpec& spec, Strategy strategy,
                                  const std::optional<UniversalSet>& u);
// Dispatches on learner kind and the completeness of the spec.
LearnResult learn(OracleSession& oracle, const ClassSpec& spec, LearnerKind kind,
                  const std::optional<UniversalSet>& u, Strategy strategy = Strategy::None);

unsigned ceil_log2(std::size_t x);
std::size_t tree_query_bound(int n, std::size_t edges, bool complete);
std::size_t kbounded_query_bound(int n, std::size_t universal_size, std::size_t edges,
                                 bool complete);

json learn_result_to_json(const LearnResult& r, OracleKind kind);

}  // namespace cpnet
