#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cpnet/learners.hpp"

namespace cpnet {

struct HttpError : Error {
  HttpError(int status, const std::string& message) : Error(message), status(status) {}
  int status;
};

enum class SessionStatus { AwaitingAnswer, Learning, Done, Aborted };
std::string to_string(SessionStatus s);

enum class HumanAnswer { First, Second, Unknown };
HumanAnswer human_answer_from_string(const std::string& s);
std::string to_string(HumanAnswer a);

// Optional display names; the core stays index-based.
struct NameDictionary {
  std::vector<std::string> attributes;
  std::vector<std::vector<std::string>> values;

  bool empty() const { return attributes.empty() && values.empty(); }
};

json names_to_json(const NameDictionary& names);
NameDictionary names_from_json(const json& j);

struct SessionConfig {
  ClassSpec spec;
  LearnerKind learner = LearnerKind::Tree;
  std::optional<UniversalSet> universal;
  NameDictionary names;
};

struct ElicitationSession {
  std::string id;
  SessionConfig config;
  SessionStatus status = SessionStatus::Learning;
  std::optional<SwapInstance> pending;
  std::vector<std::pair<SwapInstance, HumanAnswer>> history;
  std::optional<CpNet> result;
  std::size_t queries_used = 0;
  std::string error;
  std::chrono::steady_clock::time_point last_activity;
};

// The learner is resumed by replaying every recorded answer from the start; learners are
// deterministic, so the replay reaches the same pending query.
class SessionManager {
 public:
  struct Options {
    std::optional<std::filesystem::path> data_dir;
    std::chrono::seconds timeout{0};  // zero disables expiry
  };

  SessionManager();
  explicit SessionManager(Options options);

  json create(const json& request);
  json get(const std::string& id);
  json answer(const std::string& id, const json& request);
  json model(const std::string& id);
  json remove(const std::string& id);
  std::vector<std::string> ids() const;

  static SessionConfig config_from_json(const json& request);
  static json config_to_json(const SessionConfig& config);

 private:
  struct Slot {
    std::mutex mutex;
    ElicitationSession session;
  };

  std::shared_ptr<Slot> slot(const std::string& id);
  void advance(ElicitationSession& s);
  void expire(ElicitationSession& s);
  void persist(const ElicitationSession& s) const;
  void restore();
  json view(const ElicitationSession& s) const;
  std::string fresh_id();

  Options options_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::uint64_t counter_ = 0;
};

json session_to_json(const ElicitationSession& s);

// Blocking HTTP front end for a SessionManager.
class SessionServer {
 public:
  explicit SessionServer(SessionManager& manager);
  ~SessionServer();
  SessionServer(const SessionServer&) = delete;
  SessionServer& operator=(const SessionServer&) = delete;

  bool listen(const std::string& host, int port);
  // Binds an ephemeral port and returns it; serve with listen_after_bind().
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cpnet
