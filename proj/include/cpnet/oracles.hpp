#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cpnet/core.hpp"
#include "cpnet/io.hpp"

namespace cpnet {

enum class Answer { Yes, No, Unknown };
enum class OracleKind { Perfect, Limited, Malicious, Human };

std::string to_string(Answer a);
Answer answer_from_string(const std::string& s);
std::string to_string(OracleKind k);
OracleKind oracle_kind_from_string(const std::string& s);

struct CorruptionSet {
  std::set<SwapInstance> members;

  bool contains(const SwapInstance& x) const { return members.count(x) > 0; }
  std::size_t size() const { return members.size(); }
};

// Supplies answers for human sessions; it may throw to suspend the caller.
using AnswerProvider = std::function<Answer(const SwapInstance&)>;

using QueryLog = std::vector<std::pair<SwapInstance, Answer>>;

class OracleSession {
 public:
  static OracleSession perfect(CpNet target);
  static OracleSession limited(CpNet target, CorruptionSet corruption);
  static OracleSession malicious(CpNet target, CorruptionSet corruption);
  static OracleSession human(ClassSpec spec, AnswerProvider provider);

  // Persistent: a repeated instance is answered from the log and not charged again.
  Answer answer(const SwapInstance& x);

  OracleKind kind() const { return kind_; }
  const ClassSpec& spec() const { return spec_; }
  const std::optional<CpNet>& target() const { return target_; }
  const CorruptionSet& corruption() const { return corruption_; }
  std::size_t queries_asked() const { return asked_; }
  std::size_t distinct() const { return log_.size(); }
  const QueryLog& log() const { return log_; }
  std::optional<Answer> recorded(const SwapInstance& x) const;

 private:
  OracleSession(OracleKind kind, ClassSpec spec, std::optional<CpNet> target,
                CorruptionSet corruption, AnswerProvider provider);

  OracleKind kind_;
  ClassSpec spec_;
  std::optional<CpNet> target_;
  CorruptionSet corruption_;
  AnswerProvider provider_;
  std::size_t asked_ = 0;
  QueryLog log_;
  std::map<SwapInstance, Answer> memo_;
};

// Swaps on V(x) with the same value pair whose context is at Hamming distance exactly t.
std::vector<SwapInstance> f_ball(const SwapInstance& x, int t, const ClassSpec& spec);

enum class CorruptionMode { LimitedBound, MaliciousBound };

// Largest allowed |F^1(x) ∩ L| for the mode; negative when infeasible.
int corruption_bound(const ClassSpec& spec, CorruptionMode mode);

struct CorruptionSample {
  CorruptionSet set;
  std::size_t certificate = 0;  // max over x of |F^1(x) ∩ L|
};

CorruptionSample sample_corruption_set(const ClassSpec& spec, const CpNet& target,
                                       CorruptionMode mode, std::uint64_t seed);

struct HopelessCase {
  CorruptionSet set;
  CpNet first;
  CpNet second;
};

// v receives the k lowest-indexed other variables as parents; the nets differ only in
// v's statement under the given parent context.
HopelessCase hopeless_corruption_set(const ClassSpec& spec, int v, const Outcome& parent_context);

json transcript_to_json(const OracleSession& session);
json transcript_to_json(OracleKind kind, const QueryLog& log);
QueryLog transcript_from_json(const json& j);
json corruption_set_to_json(const CorruptionSet& l);
CorruptionSet corruption_set_from_json(const json& j);

}  // namespace cpnet
