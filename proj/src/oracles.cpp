#include "cpnet/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace cpnet {

std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Unknown: return "unknown";
  }
  return "unknown";
}

Answer answer_from_string(const std::string& s) {
  if (s == "yes") return Answer::Yes;
  if (s == "no") return Answer::No;
  if (s == "unknown") return Answer::Unknown;
  throw ValidationError("answer must be yes, no or unknown");
}

std::string to_string(OracleKind k) {
  switch (k) {
    case OracleKind::Perfect: return "perfect";
    case OracleKind::Limited: return "limited";
    case OracleKind::Malicious: return "malicious";
    case OracleKind::Human: return "human";
  }
  return "perfect";
}

OracleKind oracle_kind_from_string(const std::string& s) {
  if (s == "perfect") return OracleKind::Perfect;
  if (s == "limited") return OracleKind::Limited;
  if (s == "malicious") return OracleKind::Malicious;
  if (s == "human") return OracleKind::Human;
  throw ValidationError("unknown oracle kind '" + s + "'");
}

OracleSession::OracleSession(OracleKind kind, ClassSpec spec, std::optional<CpNet> target,
                             CorruptionSet corruption, AnswerProvider provider)
    : kind_(kind),
      spec_(spec),
      target_(std::move(target)),
      corruption_(std::move(corruption)),
      provider_(std::move(provider)) {}

OracleSession OracleSession::perfect(CpNet target) {
  const ClassSpec spec = target.spec();
  return OracleSession(OracleKind::Perfect, spec, std::move(target), {}, {});
}

OracleSession OracleSession::limited(CpNet target, CorruptionSet corruption) {
  const ClassSpec spec = target.spec();
  return OracleSession(OracleKind::Limited, spec, std::move(target), std::move(corruption), {});
}

OracleSession OracleSession::malicious(CpNet target, CorruptionSet corruption) {
  const ClassSpec spec = target.spec();
  return OracleSession(OracleKind::Malicious, spec, std::move(target), std::move(corruption), {});
}

OracleSession OracleSession::human(ClassSpec spec, AnswerProvider provider) {
  return OracleSession(OracleKind::Human, spec, std::nullopt, {}, std::move(provider));
}

std::optional<Answer> OracleSession::recorded(const SwapInstance& x) const {
  const auto it = memo_.find(x);
  if (it == memo_.end()) return std::nullopt;
  return it->second;
}

Answer OracleSession::answer(const SwapInstance& x) {
  ++asked_;
  if (const auto it = memo_.find(x); it != memo_.end()) return it->second;
  if (x.first.size() != static_cast<std::size_t>(spec_.n))
    throw ValidationError("query does not match the session's variables");
  Answer a = Answer::No;
  if (kind_ == OracleKind::Human) {
    a = provider_(x);
  } else {
    const bool truth = evaluate_swap(*target_, x) == 1;
    const bool corrupted = corruption_.contains(x);
    if (kind_ == OracleKind::Limited && corrupted) {
      a = Answer::Unknown;
    } else if (kind_ == OracleKind::Malicious && corrupted) {
      a = truth ? Answer::No : Answer::Yes;
    } else {
      a = truth ? Answer::Yes : Answer::No;
    }
  }
  memo_.emplace(x, a);
  log_.emplace_back(x, a);
  return a;
}

std::vector<SwapInstance> f_ball(const SwapInstance& x, int t, const ClassSpec& spec) {
  spec.validate();
  if (t < 1 || t > spec.n - 1) throw ValidationError("need 1 <= t <= n-1");
  std::vector<int> others;
  for (int i = 0; i < spec.n; ++i)
    if (i != x.swapped) others.push_back(i);
  std::vector<SwapInstance> out;
  std::vector<int> chosen;
  // Positions in increasing order, then every assignment of the m-1 other values.
  auto assign = [&](auto&& self, std::size_t i, SwapInstance current) -> void {
    if (i == chosen.size()) {
      out.push_back(std::move(current));
      return;
    }
    const auto p = static_cast<std::size_t>(chosen[i]);
    for (int value = 0; value < spec.m; ++value) {
      if (value == x.first[p]) continue;
      SwapInstance next = current;
      next.first[p] = value;
      next.second[p] = value;
      self(self, i + 1, std::move(next));
    }
  };
  auto pick = [&](auto&& self, std::size_t start) -> void {
    if (chosen.size() == static_cast<std::size_t>(t)) {
      assign(assign, 0, x);
      return;
    }
    for (std::size_t i = start; i < others.size(); ++i) {
      chosen.push_back(others[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  pick(pick, 0);
  return out;
}

int corruption_bound(const ClassSpec& spec, CorruptionMode mode) {
  if (mode == CorruptionMode::LimitedBound) return spec.n - 2 - 2 * spec.k;
  return (spec.n - 1) / 2 - spec.k - 1;
}

CorruptionSample sample_corruption_set(const ClassSpec& spec, const CpNet& target,
                                       CorruptionMode mode, std::uint64_t seed) {
  spec.validate();
  if (spec.m != 2) throw InfeasibleParameters("corruption sampling is defined for m = 2");
  if (target.n() != spec.n || target.m() != spec.m)
    throw ValidationError("target does not match the class parameters");
  if (spec.n <= 2 * spec.k + 2) throw InfeasibleParameters("need n > 2k + 2");
  const int bound = corruption_bound(spec, mode);
  if (bound < 0) throw InfeasibleParameters("per-neighbourhood corruption bound is negative");

  std::vector<SwapInstance> space = instance_space(spec, false);
  std::map<SwapInstance, std::size_t> load;
  std::mt19937_64 rng(seed);
  std::shuffle(space.begin(), space.end(), rng);
  CorruptionSample sample;
  for (const SwapInstance& y : space) {
    if (bound == 0) break;
    // y lies in F^1(x) exactly when x lies in F^1(y).
    const auto ball = f_ball(y, 1, spec);
    const bool fits = std::all_of(ball.begin(), ball.end(), [&](const SwapInstance& x) {
      return load[x] + 1 <= static_cast<std::size_t>(bound);
    });
    if (!fits) continue;
    sample.set.members.insert(y);
    for (const SwapInstance& x : ball) sample.certificate = std::max(sample.certificate, ++load[x]);
  }
  return sample;
}

HopelessCase hopeless_corruption_set(const ClassSpec& spec, int v, const Outcome& parent_context) {
  spec.validate();
  if (spec.m != 2) throw InfeasibleParameters("the construction is defined for m = 2");
  if (spec.k < 1) throw InfeasibleParameters("need k >= 1");
  if (v < 0 || v >= spec.n) throw ValidationError("variable out of range");
  if (parent_context.size() != static_cast<std::size_t>(spec.k))
    throw ValidationError("parent context must assign k values");
  for (int value : parent_context)
    if (value < 0 || value >= spec.m) throw ValidationError("context value out of range");

  std::vector<Cpt> base(static_cast<std::size_t>(spec.n));
  for (int i = 0; i < spec.n; ++i) base[static_cast<std::size_t>(i)] = {i, {}, {{0, 1}}};
  Cpt child{v, {}, {}};
  for (int i = 0; i < spec.n && static_cast<int>(child.parents.size()) < spec.k; ++i)
    if (i != v) child.parents.push_back(i);
  // Parity of the parent values keeps every parent relevant.
  const auto rows = static_cast<std::size_t>(ipow(2, static_cast<unsigned>(spec.k)));
  for (std::size_t r = 0; r < rows; ++r) {
    const Outcome ctx = child.context(r, spec.m);
    const int parity = std::accumulate(ctx.begin(), ctx.end(), 0) % 2;
    child.rows.push_back(parity == 0 ? Order{0, 1} : Order{1, 0});
  }
  std::size_t flipped = 0;
  for (int value : parent_context) flipped = flipped * 2 + static_cast<std::size_t>(value);
  Cpt other = child;
  std::reverse(other.rows[flipped].begin(), other.rows[flipped].end());

  std::vector<Cpt> first = base, second = base;
  first[static_cast<std::size_t>(v)] = child;
  second[static_cast<std::size_t>(v)] = prune_dummy_parents(other, spec.m);
  const ClassSpec complete{spec.n, spec.m, spec.k, Completeness::CompleteOnly};
  HopelessCase out{{}, CpNet(complete, first), CpNet(complete, second)};
  for (const SwapInstance& x : instance_space(complete, false)) {
    if (x.swapped != v) continue;
    bool matches = true;
    for (std::size_t i = 0; i < child.parents.size(); ++i)
      if (x.first[static_cast<std::size_t>(child.parents[i])] != parent_context[i]) matches = false;
    if (matches) out.set.members.insert(x);
  }
  return out;
}

json transcript_to_json(OracleKind kind, const QueryLog& log) {
  json queries = json::array();
  for (const auto& [x, a] : log) queries.push_back({{"x", swap_to_json(x)}, {"answer", to_string(a)}});
  return {{"kind", to_string(kind)}, {"queries", queries}, {"distinct", log.size()}};
}

json transcript_to_json(const OracleSession& session) {
  return transcript_to_json(session.kind(), session.log());
}

QueryLog transcript_from_json(const json& j) {
  if (!j.is_object() || !j.contains("queries") || !j.at("queries").is_array())
    throw ValidationError("transcript needs a 'queries' array");
  QueryLog log;
  for (const json& q : j.at("queries")) {
    if (!q.contains("x") || !q.contains("answer") || !q.at("answer").is_string())
      throw ValidationError("transcript entries need 'x' and 'answer'");
    log.emplace_back(swap_from_json(q.at("x")), answer_from_string(q.at("answer").get<std::string>()));
  }
  return log;
}

json corruption_set_to_json(const CorruptionSet& l) {
  json out = json::array();
  for (const SwapInstance& x : l.members) out.push_back(swap_to_json(x));
  return out;
}

CorruptionSet corruption_set_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("corruption set must be a JSON list");
  CorruptionSet l;
  for (const json& item : j) l.members.insert(swap_from_json(item));
  return l;
}

}  // namespace cpnet
