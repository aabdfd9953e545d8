#include <algorithm>

#include "learners_internal.hpp"

namespace cpnet {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::None: return "none";
    case Strategy::Lim: return "lim";
    case Strategy::Mal: return "mal";
  }
  return "none";
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "none") return Strategy::None;
  if (s == "lim") return Strategy::Lim;
  if (s == "mal") return Strategy::Mal;
  throw ValidationError("strategy must be none, lim or mal");
}

std::string to_string(LearnerKind k) { return k == LearnerKind::Tree ? "tree" : "kbounded"; }

LearnerKind learner_kind_from_string(const std::string& s) {
  if (s == "tree") return LearnerKind::Tree;
  if (s == "kbounded") return LearnerKind::KBounded;
  throw ValidationError("learner must be tree or kbounded");
}

TestSetFamily test_sets(int v, const ClassSpec& spec) {
  spec.validate();
  if (v < 0 || v >= spec.n) throw ValidationError("variable out of range");
  TestSetFamily family{v, {}};
  for (int j = 0; j < spec.m; ++j) {
    std::vector<Outcome> set;
    for (int r = 0; r < spec.m; ++r) {
      Outcome o(static_cast<std::size_t>(spec.n), j);
      o[static_cast<std::size_t>(v)] = r;
      set.push_back(std::move(o));
    }
    family.sets.push_back(std::move(set));
  }
  return family;
}

int robust_answer(OracleSession& oracle, const SwapInstance& x, Strategy strategy) {
  if (strategy == Strategy::Lim) {
    const Answer direct = oracle.answer(x);
    if (direct != Answer::Unknown) return direct == Answer::Yes ? 1 : 0;
  } else if (strategy == Strategy::None) {
    const Answer direct = oracle.answer(x);
    if (direct == Answer::Unknown)
      throw OracleContradiction("oracle declined to answer and no recovery strategy is active");
    return direct == Answer::Yes ? 1 : 0;
  }
  std::size_t yes = 0, no = 0;
  for (const SwapInstance& y : f_ball(x, 1, oracle.spec())) {
    const Answer a = oracle.answer(y);
    if (a == Answer::Yes) ++yes;
    if (a == Answer::No) ++no;
  }
  if (yes == no) throw MajorityTie("verification queries are evenly split");
  return yes > no ? 1 : 0;
}

int find_parent(OracleSession& oracle, const ConflictPair& conflict, std::vector<int> candidates,
                Strategy strategy, Elimination elimination) {
  const SwapInstance& x = conflict.x;
  const SwapInstance& x2 = conflict.x2;
  if (x.swapped != x2.swapped || x.first[static_cast<std::size_t>(x.swapped)] !=
                                     x2.first[static_cast<std::size_t>(x.swapped)] ||
      x.second[static_cast<std::size_t>(x.swapped)] != x2.second[static_cast<std::size_t>(x.swapped)])
    throw ValidationError("conflict swaps must change the same variable between the same values");
  std::erase_if(candidates, [&](int c) {
    const auto i = static_cast<std::size_t>(c);
    return c == x.swapped || c < 0 || i >= x.first.size() || x.first[i] == x2.first[i];
  });
  if (candidates.size() == 1) return candidates.front();
  detail::Channel channel(oracle, strategy);
  const int ox = channel.observe(x);
  const int ox2 = channel.observe(x2);
  return detail::search_parent(channel, x, ox, x2, ox2, std::move(candidates), elimination);
}

unsigned ceil_log2(std::size_t x) {
  unsigned r = 0;
  while ((std::size_t{1} << r) < x) ++r;
  return r;
}

std::size_t tree_query_bound(int n, std::size_t edges, bool complete) {
  const std::size_t base = 2 * static_cast<std::size_t>(n) + edges * ceil_log2(static_cast<std::size_t>(n));
  return complete ? base : 2 * base;
}

std::size_t kbounded_query_bound(int n, std::size_t universal_size, std::size_t edges,
                                 bool complete) {
  const std::size_t base = static_cast<std::size_t>(n) * universal_size +
                           edges * ceil_log2(static_cast<std::size_t>(n));
  return complete ? base : 2 * base;
}

json learn_result_to_json(const LearnResult& r, OracleKind kind) {
  return {{"net", net_to_json(r.net)},
          {"queries_used", r.queries_used},
          {"transcript", transcript_to_json(kind, r.transcript)}};
}

namespace detail {

Channel::Channel(OracleSession& session, Strategy strategy)
    : session_(session), strategy_(strategy), complete_(session.spec().complete()) {
  if (!complete_ && strategy != Strategy::None)
    throw ValidationError("voting strategies are defined for complete targets only");
}

int Channel::observe(const SwapInstance& x) {
  if (complete_) {
    const bool canonical = is_canonical(x);
    const int label = robust_answer(session_, canonical ? x : x.reversed(), strategy_);
    return (label == 1) == canonical ? 1 : 2;
  }
  const bool forward = robust_answer(session_, x, Strategy::None) == 1;
  const bool backward = robust_answer(session_, x.reversed(), Strategy::None) == 1;
  if (forward && backward) throw OracleContradiction("both directions of a swap were accepted");
  return forward ? 1 : backward ? 2 : 0;
}

int search_parent(Channel& channel, SwapInstance y, int oy, SwapInstance y2, int oy2,
                  std::vector<int> candidates, Elimination elimination) {
  if (oy == oy2) throw NoParentFound("the two swaps are labeled alike");
  if (candidates.empty()) throw NoParentFound("no candidate variables remain");
  while (candidates.size() > 1) {
    const std::size_t half = (candidates.size() + 1) / 2;
    SwapInstance q = y;
    for (std::size_t i = half; i < candidates.size(); ++i) {
      const auto c = static_cast<std::size_t>(candidates[i]);
      q.first[c] = y2.first[c];
      q.second[c] = y2.first[c];
    }
    const int oq = channel.observe(q);
    if (oq == oy) {
      candidates.resize(half);
      if (elimination == Elimination::KeepPair) y = std::move(q);
    } else {
      candidates.erase(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(half));
      y2 = std::move(y);
      oy2 = oy;
      y = std::move(q);
      oy = oq;
    }
  }
  return candidates.front();
}

Order order_from_observation(int observation) {
  if (observation == 1) return {0, 1};
  if (observation == 2) return {1, 0};
  return {};
}

CpNet build_net(const ClassSpec& spec, std::vector<Cpt> cpts) {
  try {
    return CpNet(spec, std::move(cpts));
  } catch (const ValidationError& e) {
    throw OracleContradiction(std::string("answers fit no net of the class: ") + e.what());
  }
}

}  // namespace detail

}  // namespace cpnet
