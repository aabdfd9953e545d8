#include "cpnet/service.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <httplib.h>
#include <spdlog/spdlog.h>

namespace cpnet {

namespace {

struct NeedAnswer {
  SwapInstance x;
};

SessionStatus status_from_string(const std::string& s) {
  if (s == "awaiting_answer") return SessionStatus::AwaitingAnswer;
  if (s == "learning") return SessionStatus::Learning;
  if (s == "done") return SessionStatus::Done;
  if (s == "aborted") return SessionStatus::Aborted;
  throw ValidationError("unknown session status '" + s + "'");
}

HumanAnswer flipped(HumanAnswer a) {
  if (a == HumanAnswer::First) return HumanAnswer::Second;
  if (a == HumanAnswer::Second) return HumanAnswer::First;
  return a;
}

json spec_to_json(const ClassSpec& spec) {
  return {{"n", spec.n},
          {"m", spec.m},
          {"k", spec.k},
          {"completeness", spec.complete() ? "complete" : "incomplete"}};
}

ClassSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("'spec' must be an object");
  ClassSpec spec;
  for (const char* key : {"n", "m", "k"})
    if (!j.contains(key) || !j.at(key).is_number_integer())
      throw ValidationError(std::string("spec needs integer field '") + key + "'");
  spec.n = j.at("n").get<int>();
  spec.m = j.at("m").get<int>();
  spec.k = j.at("k").get<int>();
  const std::string c = j.value("completeness", std::string("complete"));
  if (c == "complete") {
    spec.completeness = Completeness::CompleteOnly;
  } else if (c == "incomplete") {
    spec.completeness = Completeness::AllowIncomplete;
  } else {
    throw ValidationError("completeness must be complete or incomplete");
  }
  spec.validate();
  return spec;
}

std::string value_name(const NameDictionary& names, int variable, int value) {
  const auto v = static_cast<std::size_t>(variable);
  const auto i = static_cast<std::size_t>(value);
  if (v < names.values.size() && i < names.values[v].size()) return names.values[v][i];
  return std::to_string(value);
}

std::string attribute_name(const NameDictionary& names, int variable) {
  const auto v = static_cast<std::size_t>(variable);
  if (v < names.attributes.size()) return names.attributes[v];
  return "v" + std::to_string(variable);
}

json query_view(const SwapInstance& x, const NameDictionary& names) {
  json view = swap_to_json(x);
  json attributes = json::array(), first = json::array(), second = json::array();
  for (std::size_t i = 0; i < x.first.size(); ++i) {
    const int v = static_cast<int>(i);
    attributes.push_back(attribute_name(names, v));
    first.push_back(value_name(names, v, x.first[i]));
    second.push_back(value_name(names, v, x.second[i]));
  }
  view["attributes"] = attributes;
  view["first_labels"] = first;
  view["second_labels"] = second;
  return view;
}

}  // namespace

std::string to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::AwaitingAnswer: return "awaiting_answer";
    case SessionStatus::Learning: return "learning";
    case SessionStatus::Done: return "done";
    case SessionStatus::Aborted: return "aborted";
  }
  return "aborted";
}

HumanAnswer human_answer_from_string(const std::string& s) {
  if (s == "first") return HumanAnswer::First;
  if (s == "second") return HumanAnswer::Second;
  if (s == "unknown") return HumanAnswer::Unknown;
  throw ValidationError("answer must be first, second or unknown");
}

std::string to_string(HumanAnswer a) {
  switch (a) {
    case HumanAnswer::First: return "first";
    case HumanAnswer::Second: return "second";
    case HumanAnswer::Unknown: return "unknown";
  }
  return "unknown";
}

json names_to_json(const NameDictionary& names) {
  return {{"attributes", names.attributes}, {"values", names.values}};
}

NameDictionary names_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("'names' must be an object");
  NameDictionary names;
  try {
    if (j.contains("attributes")) names.attributes = j.at("attributes").get<std::vector<std::string>>();
    if (j.contains("values"))
      names.values = j.at("values").get<std::vector<std::vector<std::string>>>();
  } catch (const json::exception&) {
    throw ValidationError("names must hold lists of strings");
  }
  return names;
}

SessionConfig SessionManager::config_from_json(const json& request) {
  if (!request.is_object() || !request.contains("spec"))
    throw ValidationError("request needs a 'spec'");
  SessionConfig config;
  config.spec = spec_from_json(request.at("spec"));
  if (!request.contains("learner") || !request.at("learner").is_string())
    throw ValidationError("request needs a 'learner'");
  config.learner = learner_kind_from_string(request.at("learner").get<std::string>());
  if (request.contains("names")) config.names = names_from_json(request.at("names"));
  if (config.names.attributes.size() > static_cast<std::size_t>(config.spec.n) ||
      config.names.values.size() > static_cast<std::size_t>(config.spec.n))
    throw ValidationError("more names than variables");
  if (config.learner == LearnerKind::KBounded) {
    if (request.contains("universal") && !request.at("universal").is_null()) {
      config.universal = universal_from_json(request.at("universal"));
    } else {
      try {
        config.universal = construct_minimal(config.spec.m, config.spec.n - 1, config.spec.k);
      } catch (const BudgetExceeded&) {
        config.universal = construct_product(config.spec.m, config.spec.n - 1, config.spec.k);
      }
    }
  }
  if (config.learner == LearnerKind::Tree && config.spec.k > 1)
    throw ValidationError("tree sessions need k <= 1");
  if (config.learner == LearnerKind::KBounded && config.spec.m != 2)
    throw ValidationError("k-bounded sessions need m = 2");
  return config;
}

json SessionManager::config_to_json(const SessionConfig& config) {
  json j{{"spec", spec_to_json(config.spec)}, {"learner", to_string(config.learner)}};
  if (config.universal) j["universal"] = universal_to_json(*config.universal);
  if (!config.names.empty()) j["names"] = names_to_json(config.names);
  return j;
}

json session_to_json(const ElicitationSession& s) {
  json history = json::array();
  for (const auto& [x, a] : s.history) history.push_back({{"x", swap_to_json(x)}, {"answer", to_string(a)}});
  json j{{"id", s.id},
         {"status", to_string(s.status)},
         {"config", SessionManager::config_to_json(s.config)},
         {"history", history},
         {"queries_used", s.queries_used}};
  j["pending"] = s.pending ? swap_to_json(*s.pending) : json(nullptr);
  if (s.result) j["result"] = net_to_json(*s.result);
  if (!s.error.empty()) j["error"] = s.error;
  return j;
}

SessionManager::SessionManager() : SessionManager(Options{}) {}

SessionManager::SessionManager(Options options) : options_(std::move(options)) {
  if (options_.data_dir) {
    std::filesystem::create_directories(*options_.data_dir);
    restore();
  }
}

std::string SessionManager::fresh_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << std::hex << rng() << '-' << ++counter_;
  return out.str();
}

std::shared_ptr<SessionManager::Slot> SessionManager::slot(const std::string& id) {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw HttpError(404, "unknown session '" + id + "'");
  return it->second;
}

std::vector<std::string> SessionManager::ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& entry : sessions_) out.push_back(entry.first);
  return out;
}

void SessionManager::advance(ElicitationSession& s) {
  std::map<SwapInstance, HumanAnswer> facts;
  for (const auto& [x, a] : s.history)
    facts[canonical_swap(x.first, x.second)] = is_canonical(x) ? a : flipped(a);
  AnswerProvider provider = [&facts](const SwapInstance& y) {
    const auto it = facts.find(canonical_swap(y.first, y.second));
    if (it == facts.end()) throw NeedAnswer{y};
    const HumanAnswer a = is_canonical(y) ? it->second : flipped(it->second);
    return a == HumanAnswer::First ? Answer::Yes : Answer::No;
  };
  OracleSession oracle = OracleSession::human(s.config.spec, provider);
  s.status = SessionStatus::Learning;
  s.pending.reset();
  try {
    LearnResult r = learn(oracle, s.config.spec, s.config.learner, s.config.universal);
    s.result = std::move(r.net);
    s.queries_used = r.queries_used;
    s.status = SessionStatus::Done;
    spdlog::info("session {} finished after {} answers", s.id, s.history.size());
  } catch (const NeedAnswer& need) {
    s.pending = need.x;
    s.queries_used = oracle.distinct();
    s.status = SessionStatus::AwaitingAnswer;
  } catch (const Error& e) {
    s.status = SessionStatus::Aborted;
    s.error = e.what();
    spdlog::warn("session {} aborted: {}", s.id, e.what());
  }
}

void SessionManager::expire(ElicitationSession& s) {
  if (options_.timeout.count() <= 0 || s.status != SessionStatus::AwaitingAnswer) return;
  if (std::chrono::steady_clock::now() - s.last_activity > options_.timeout) {
    s.status = SessionStatus::Aborted;
    s.pending.reset();
    s.error = "session timed out";
    persist(s);
  }
}

void SessionManager::persist(const ElicitationSession& s) const {
  if (!options_.data_dir) return;
  const auto path = *options_.data_dir / (s.id + ".json");
  const auto tmp = path.string() + ".tmp";
  save_json(tmp, session_to_json(s));
  std::filesystem::rename(tmp, path);
}

void SessionManager::restore() {
  for (const auto& entry : std::filesystem::directory_iterator(*options_.data_dir)) {
    if (entry.path().extension() != ".json") continue;
    try {
      const json j = load_json(entry.path().string());
      auto slot = std::make_shared<Slot>();
      ElicitationSession& s = slot->session;
      s.id = j.at("id").get<std::string>();
      s.config = config_from_json(j.at("config"));
      for (const json& h : j.at("history"))
        s.history.emplace_back(swap_from_json(h.at("x")),
                               human_answer_from_string(h.at("answer").get<std::string>()));
      s.last_activity = std::chrono::steady_clock::now();
      if (status_from_string(j.at("status").get<std::string>()) == SessionStatus::Aborted) {
        s.status = SessionStatus::Aborted;
        s.error = j.value("error", std::string());
      } else {
        advance(s);
      }
      sessions_[s.id] = std::move(slot);
      spdlog::info("restored session {} from {}", s.id, entry.path().string());
    } catch (const std::exception& e) {
      spdlog::warn("skipping {}: {}", entry.path().string(), e.what());
    }
  }
}

json SessionManager::view(const ElicitationSession& s) const {
  json j{{"id", s.id},
         {"status", to_string(s.status)},
         {"answered", s.history.size()},
         {"queries_used", s.queries_used},
         {"accepts_unknown", !s.config.spec.complete()}};
  j["query"] = s.pending ? query_view(*s.pending, s.config.names) : json(nullptr);
  if (s.result) j["model"] = net_to_json(*s.result);
  if (!s.error.empty()) j["error"] = s.error;
  return j;
}

json SessionManager::create(const json& request) {
  auto slot = std::make_shared<Slot>();
  ElicitationSession& s = slot->session;
  s.config = config_from_json(request);
  s.last_activity = std::chrono::steady_clock::now();
  {
    std::lock_guard lock(mutex_);
    s.id = fresh_id();
  }
  std::lock_guard session_lock(slot->mutex);
  advance(s);
  persist(s);
  {
    std::lock_guard lock(mutex_);
    sessions_[s.id] = slot;
  }
  spdlog::info("created {} session {} (n={}, m={}, k={})", to_string(s.config.learner), s.id,
               s.config.spec.n, s.config.spec.m, s.config.spec.k);
  return view(s);
}

json SessionManager::get(const std::string& id) {
  auto target = slot(id);
  std::lock_guard lock(target->mutex);
  expire(target->session);
  return view(target->session);
}

json SessionManager::answer(const std::string& id, const json& request) {
  auto target = slot(id);
  std::lock_guard lock(target->mutex);
  ElicitationSession& s = target->session;
  expire(s);
  if (s.status != SessionStatus::AwaitingAnswer || !s.pending)
    throw HttpError(409, "session is not awaiting an answer");
  if (!request.is_object() || !request.contains("answer") || !request.at("answer").is_string())
    throw HttpError(400, "request needs an 'answer' string");
  HumanAnswer a;
  try {
    a = human_answer_from_string(request.at("answer").get<std::string>());
  } catch (const ValidationError& e) {
    throw HttpError(400, e.what());
  }
  if (a == HumanAnswer::Unknown && s.config.spec.complete())
    throw HttpError(422, "complete-mode sessions need a preference");
  s.history.emplace_back(*s.pending, a);
  s.last_activity = std::chrono::steady_clock::now();
  advance(s);
  persist(s);
  return view(s);
}

json SessionManager::model(const std::string& id) {
  auto target = slot(id);
  std::lock_guard lock(target->mutex);
  const ElicitationSession& s = target->session;
  if (s.status != SessionStatus::Done || !s.result) throw HttpError(409, "session has no model yet");
  return {{"net", net_to_json(*s.result)},
          {"dot", dependency_dot(*s.result, s.config.names.attributes)}};
}

json SessionManager::remove(const std::string& id) {
  auto target = slot(id);
  std::lock_guard lock(target->mutex);
  ElicitationSession& s = target->session;
  if (s.status != SessionStatus::Done) {
    s.status = SessionStatus::Aborted;
    s.pending.reset();
    if (s.error.empty()) s.error = "aborted by client";
    persist(s);
  }
  return view(s);
}

struct SessionServer::Impl {
  explicit Impl(SessionManager& m) : manager(m) {}

  template <typename F>
  void handle(httplib::Response& res, int ok_status, F&& f) {
    try {
      const json body = f();
      res.status = ok_status;
      res.set_content(body.dump(), "application/json");
      return;
    } catch (const HttpError& e) {
      res.status = e.status;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
    } catch (const json::exception& e) {
      res.status = 400;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
    } catch (const Error& e) {
      res.status = 400;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
    }
  }

  SessionManager& manager;
  httplib::Server server;
};

SessionServer::SessionServer(SessionManager& manager) : impl_(std::make_unique<Impl>(manager)) {
  Impl& impl = *impl_;
  auto& srv = impl.server;
  srv.Post("/sessions", [&impl](const httplib::Request& req, httplib::Response& res) {
    impl.handle(res, 201, [&] { return impl.manager.create(json::parse(req.body)); });
  });
  srv.Get(R"(/sessions/([^/]+))", [&impl](const httplib::Request& req, httplib::Response& res) {
    impl.handle(res, 200, [&] { return impl.manager.get(req.matches[1]); });
  });
  srv.Delete(R"(/sessions/([^/]+))", [&impl](const httplib::Request& req, httplib::Response& res) {
    impl.handle(res, 200, [&] { return impl.manager.remove(req.matches[1]); });
  });
  srv.Post(R"(/sessions/([^/]+)/answer)",
           [&impl](const httplib::Request& req, httplib::Response& res) {
             impl.handle(res, 200, [&] {
               return impl.manager.answer(req.matches[1], json::parse(req.body));
             });
           });
  srv.Get(R"(/sessions/([^/]+)/model)", [&impl](const httplib::Request& req, httplib::Response& res) {
    impl.handle(res, 200, [&] { return impl.manager.model(req.matches[1]); });
  });
  srv.set_logger([](const httplib::Request& req, const httplib::Response& res) {
    spdlog::debug("{} {} -> {}", req.method, req.path, res.status);
  });
}

SessionServer::~SessionServer() { stop(); }

bool SessionServer::listen(const std::string& host, int port) {
  spdlog::info("listening on {}:{}", host, port);
  return impl_->server.listen(host, port);
}

int SessionServer::bind_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool SessionServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void SessionServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void SessionServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace cpnet
