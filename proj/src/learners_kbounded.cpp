#include <algorithm>
#include <set>

#include "learners_internal.hpp"

namespace cpnet {

namespace {

void require_universal(const UniversalSet& u, const ClassSpec& spec) {
  if (u.m != spec.m || u.z != spec.n - 1)
    throw UniversalSetTooWeak("universal set must have z = n-1 and the class alphabet");
  UniversalSet at_k = u;
  at_k.k = spec.k;
  if (spec.k > u.z || !is_universal(at_k))
    throw UniversalSetTooWeak("vectors are not universal at the class indegree bound");
}

class VariableLearner {
 public:
  VariableLearner(detail::Channel& channel, const ClassSpec& spec, const UniversalSet& u, int v)
      : channel_(channel), spec_(spec), v_(v) {
    for (const Outcome& ctx : context_set(u, v, spec)) {
      SwapInstance x{ctx, ctx, v};
      x.first[static_cast<std::size_t>(v)] = 0;
      x.second[static_cast<std::size_t>(v)] = 1;
      family_.push_back(std::move(x));
    }
    for (const SwapInstance& x : family_) observed_.push_back(channel_.observe(x));
  }

  Cpt learn() {
    std::vector<std::size_t> all(family_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    refine(all, {});
    if (found_.size() > static_cast<std::size_t>(spec_.k))
      throw OracleContradiction("more parents were found than the indegree bound allows");
    Cpt cpt{v_, std::vector<int>(found_.begin(), found_.end()), {}};
    const auto rows = static_cast<std::size_t>(
        ipow(static_cast<std::uint64_t>(spec_.m), static_cast<unsigned>(cpt.parents.size())));
    for (std::size_t r = 0; r < rows; ++r) {
      const Outcome ctx = cpt.context(r, spec_.m);
      std::optional<int> seen;
      for (std::size_t i = 0; i < family_.size(); ++i) {
        if (!matches(family_[i], cpt.parents, ctx)) continue;
        if (seen && *seen != observed_[i])
          throw OracleContradiction("answers disagree under one parent context");
        seen = observed_[i];
      }
      if (!seen) throw UniversalSetTooWeak("a parent context is missing from the context set");
      cpt.rows.push_back(detail::order_from_observation(*seen));
    }
    return cpt;
  }

 private:
  static bool matches(const SwapInstance& x, const std::vector<int>& vars, const Outcome& values) {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (x.first[static_cast<std::size_t>(vars[i])] != values[i]) return false;
    return true;
  }

  bool varies(const std::vector<std::size_t>& part, int var) const {
    const auto p = static_cast<std::size_t>(var);
    return std::any_of(part.begin(), part.end(), [&](std::size_t i) {
      return family_[i].first[p] != family_[part.front()].first[p];
    });
  }

  void refine(const std::vector<std::size_t>& part, std::vector<int> fixed) {
    if (fixed.size() >= static_cast<std::size_t>(spec_.k) || part.empty()) return;
    const int o0 = observed_[part.front()];
    const auto other = std::find_if(part.begin(), part.end(),
                                    [&](std::size_t i) { return observed_[i] != o0; });
    if (other == part.end()) return;

    std::optional<int> parent;
    // A parent already found in another branch is reused before any new search.
    for (int g : found_)
      if (std::find(fixed.begin(), fixed.end(), g) == fixed.end() && varies(part, g)) {
        parent = g;
        break;
      }
    if (!parent) {
      const SwapInstance& x = family_[part.front()];
      const SwapInstance& x2 = family_[*other];
      std::vector<int> candidates;
      for (int c = 0; c < spec_.n; ++c)
        if (c != v_ && x.first[static_cast<std::size_t>(c)] != x2.first[static_cast<std::size_t>(c)])
          candidates.push_back(c);
      parent = detail::search_parent(channel_, x, o0, x2, observed_[*other], candidates,
                                     Elimination::KeepPair);
      found_.insert(*parent);
    }
    fixed.push_back(*parent);
    for (int value = 0; value < spec_.m; ++value) {
      std::vector<std::size_t> sub;
      for (std::size_t i : part)
        if (family_[i].first[static_cast<std::size_t>(*parent)] == value) sub.push_back(i);
      refine(sub, fixed);
    }
  }

  detail::Channel& channel_;
  const ClassSpec& spec_;
  int v_;
  std::vector<SwapInstance> family_;
  std::vector<int> observed_;
  std::set<int> found_;
};

LearnResult run_kbounded(OracleSession& oracle, const ClassSpec& spec, const UniversalSet& u,
                         Strategy strategy) {
  spec.validate();
  if (spec.m != 2) throw DomainError("the k-bounded learner is defined for m = 2");
  if (oracle.spec().n != spec.n || oracle.spec().m != spec.m ||
      oracle.spec().completeness != spec.completeness)
    throw ValidationError("oracle session does not match the class parameters");
  require_universal(u, spec);
  const std::size_t start = oracle.distinct();
  detail::Channel channel(oracle, strategy);
  std::vector<Cpt> cpts;
  for (int v = 0; v < spec.n; ++v) cpts.push_back(VariableLearner(channel, spec, u, v).learn());
  CpNet net = detail::build_net(spec, std::move(cpts));
  return {std::move(net), oracle.distinct() - start, oracle.log()};
}

}  // namespace

LearnResult learn_kbounded_complete(OracleSession& oracle, const ClassSpec& spec,
                                    const UniversalSet& u, Strategy strategy) {
  if (!spec.complete()) throw ValidationError("learn_kbounded_complete needs a complete class");
  return run_kbounded(oracle, spec, u, strategy);
}

LearnResult learn_kbounded_incomplete(OracleSession& oracle, const ClassSpec& spec,
                                      const UniversalSet& u) {
  if (spec.complete())
    throw ValidationError("learn_kbounded_incomplete needs an AllowIncomplete class");
  return run_kbounded(oracle, spec, u, Strategy::None);
}

LearnResult learn_with_corruption(OracleSession& oracle, const ClassSpec& spec, Strategy strategy,
                                  const std::optional<UniversalSet>& u) {
  if (!spec.complete()) throw ValidationError("corrupted oracles are handled for complete classes");
  if (spec.m != 2) throw DomainError("voting strategies are defined for m = 2");
  if (strategy != Strategy::None && spec.n <= 2 * spec.k + 2)
    throw InfeasibleParameters("voting needs n > 2k + 2");
  if (spec.k == 1) return learn_tree_complete(oracle, spec, strategy);
  if (!u) throw ValidationError("the k-bounded learner needs a universal set");
  return learn_kbounded_complete(oracle, spec, *u, strategy);
}

LearnResult learn(OracleSession& oracle, const ClassSpec& spec, LearnerKind kind,
                  const std::optional<UniversalSet>& u, Strategy strategy) {
  if (kind == LearnerKind::Tree) {
    if (spec.complete()) return learn_tree_complete(oracle, spec, strategy);
    if (strategy != Strategy::None) throw ValidationError("voting needs a complete class");
    return learn_tree_incomplete(oracle, spec);
  }
  if (!u) throw ValidationError("the k-bounded learner needs a universal set");
  if (spec.complete()) return learn_kbounded_complete(oracle, spec, *u, strategy);
  if (strategy != Strategy::None) throw ValidationError("voting needs a complete class");
  return learn_kbounded_incomplete(oracle, spec, *u);
}

}  // namespace cpnet
