#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <httplib.h>

#include <filesystem>
#include <thread>

#include "cpnet/service.hpp"
#include "test_support.hpp"

using namespace cpnet;
using namespace testing;

namespace {

json tree_request(int n, const std::string& completeness, int k = 1) {
  return {{"spec", {{"n", n}, {"m", 2}, {"k", k}, {"completeness", completeness}}},
          {"learner", "tree"}};
}

std::string scripted_answer(const CpNet& target, const json& query) {
  const SwapInstance x{query.at("first").get<Outcome>(), query.at("second").get<Outcome>(),
                       query.at("swapped").get<int>()};
  if (evaluate_swap(target, x) == 1) return "first";
  if (evaluate_swap(target, x.reversed()) == 1) return "second";
  return "unknown";
}

// Answers every pending query from the target until the session leaves the awaiting state.
json drive(SessionManager& manager, json view, const CpNet& target, std::size_t& prompts) {
  while (view.at("status") == "awaiting_answer") {
    ++prompts;
    view = manager.answer(view.at("id").get<std::string>(),
                          {{"answer", scripted_answer(target, view.at("query"))}});
  }
  return view;
}

int status_of(const std::function<void()>& call) {
  try {
    call();
  } catch (const HttpError& e) {
    return e.status;
  }
  return 200;
}

CpNet n3_tree() { return CpNet(complete_spec(3, 2, 1), load("n3.json").cpts()); }

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("scripted tree session recovers N3") {
  SessionManager manager;
  const CpNet target = n3_tree();
  json view = manager.create(tree_request(3, "complete"));
  CHECK(view.at("accepts_unknown") == false);
  std::size_t prompts = 0;
  view = drive(manager, view, target, prompts);
  CHECK(view.at("status") == "done");
  CHECK(prompts <= 8);
  const json model = manager.model(view.at("id").get<std::string>());
  CHECK(net_from_json(model.at("net"), Completeness::CompleteOnly) == target);
  CHECK(model.at("dot").get<std::string>().find("->") != std::string::npos);
}

TEST_CASE("k-bounded session with the default universal set") {
  SessionManager manager;
  const CpNet target = load("n1.json");
  json view = manager.create({{"spec", {{"n", 3}, {"m", 2}, {"k", 2}}}, {"learner", "kbounded"}});
  std::size_t prompts = 0;
  view = drive(manager, view, target, prompts);
  REQUIRE(view.at("status") == "done");
  CHECK(net_from_json(view.at("model"), Completeness::CompleteOnly) == target);
}

TEST_CASE("incomplete session accepts unknown answers") {
  SessionManager manager;
  const ClassSpec spec = incomplete_spec(2, 2, 1);
  const CpNet target(spec, {make_cpt(0, {}, {{0, 1}}), make_cpt(1, {0}, {{}, {1, 0}})});
  json view = manager.create(tree_request(2, "incomplete"));
  CHECK(view.at("accepts_unknown") == true);
  std::size_t prompts = 0;
  view = drive(manager, view, target, prompts);
  REQUIRE(view.at("status") == "done");
  CHECK(net_from_json(view.at("model"), Completeness::AllowIncomplete) == target);
}

TEST_CASE("error statuses") {
  SessionManager manager;
  const json view = manager.create(tree_request(3, "complete"));
  const std::string id = view.at("id").get<std::string>();
  CHECK(status_of([&] { manager.get("missing"); }) == 404);
  CHECK(status_of([&] { manager.answer(id, {{"answer", "unknown"}}); }) == 422);
  CHECK(status_of([&] { manager.answer(id, {{"answer", "maybe"}}); }) == 400);
  CHECK(status_of([&] { manager.answer(id, json::array()); }) == 400);
  CHECK(status_of([&] { manager.model(id); }) == 409);
  CHECK_THROWS(manager.create({{"learner", "tree"}}));
  manager.remove(id);
  CHECK(manager.get(id).at("status") == "aborted");
  CHECK(status_of([&] { manager.answer(id, {{"answer", "first"}}); }) == 409);
}

TEST_CASE("answering a finished session is a conflict") {
  SessionManager manager;
  json view = manager.create(tree_request(1, "complete", 0));
  const std::string id = view.at("id").get<std::string>();
  manager.answer(id, {{"answer", "first"}});
  CHECK(manager.get(id).at("status") == "done");
  CHECK(status_of([&] { manager.answer(id, {{"answer", "first"}}); }) == 409);
}

TEST_CASE("replay is deterministic") {
  SessionManager a, b;
  const CpNet target = n3_tree();
  json va = a.create(tree_request(3, "complete"));
  json vb = b.create(tree_request(3, "complete"));
  while (va.at("status") == "awaiting_answer") {
    REQUIRE(vb.at("status") == "awaiting_answer");
    CHECK(va.at("query") == vb.at("query"));
    const std::string answer = scripted_answer(target, va.at("query"));
    va = a.answer(va.at("id").get<std::string>(), {{"answer", answer}});
    vb = b.answer(vb.at("id").get<std::string>(), {{"answer", answer}});
  }
  CHECK(va.at("model") == vb.at("model"));
}

TEST_CASE("sessions survive a restart") {
  const auto dir = fresh_dir("cpnet_service_restore");
  const CpNet target = n3_tree();
  std::string id;
  json query;
  {
    SessionManager manager({dir, std::chrono::seconds{0}});
    json view = manager.create(tree_request(3, "complete"));
    id = view.at("id").get<std::string>();
    view = manager.answer(id, {{"answer", scripted_answer(target, view.at("query"))}});
    query = view.at("query");
  }
  SessionManager restored({dir, std::chrono::seconds{0}});
  json view = restored.get(id);
  CHECK(view.at("answered") == 1);
  CHECK(view.at("query") == query);
  std::size_t prompts = 1;
  view = drive(restored, view, target, prompts);
  CHECK(view.at("status") == "done");
  CHECK(prompts <= 8);
  std::filesystem::remove_all(dir);
}

TEST_CASE("display names decorate the query") {
  SessionManager manager;
  json request = tree_request(2, "complete");
  request["names"] = {{"attributes", json::array({"main", "wine"})},
                      {"values", json::array({json::array({"fish", "meat"}),
                                              json::array({"white", "red"})})}};
  const json view = manager.create(request);
  const json& q = view.at("query");
  CHECK(q.at("attributes") == json({"main", "wine"}));
  CHECK(q.at("first_labels").size() == 2);
}

TEST_CASE("http round trip") {
  SessionManager manager;
  SessionServer server(manager);
  const int port = server.bind_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  const CpNet target = n3_tree();
  auto created = client.Post("/sessions", tree_request(3, "complete").dump(), "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  json view = json::parse(created->body);
  const std::string id = view.at("id").get<std::string>();

  auto missing = client.Get("/sessions/nope");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  auto early = client.Get("/sessions/" + id + "/model");
  REQUIRE(early);
  CHECK(early->status == 409);

  auto unknown = client.Post("/sessions/" + id + "/answer", json{{"answer", "unknown"}}.dump(),
                             "application/json");
  REQUIRE(unknown);
  CHECK(unknown->status == 422);

  auto garbage = client.Post("/sessions/" + id + "/answer", "{not json", "application/json");
  REQUIRE(garbage);
  CHECK(garbage->status == 400);

  while (view.at("status") == "awaiting_answer") {
    auto res = client.Post("/sessions/" + id + "/answer",
                           json{{"answer", scripted_answer(target, view.at("query"))}}.dump(),
                           "application/json");
    REQUIRE(res);
    REQUIRE(res->status == 200);
    view = json::parse(res->body);
  }
  CHECK(view.at("status") == "done");

  auto again = client.Post("/sessions/" + id + "/answer", json{{"answer", "first"}}.dump(),
                           "application/json");
  REQUIRE(again);
  CHECK(again->status == 409);

  auto model = client.Get("/sessions/" + id + "/model");
  REQUIRE(model);
  CHECK(model->status == 200);
  CHECK(net_from_json(json::parse(model->body).at("net"), Completeness::CompleteOnly) == target);

  auto fetched = client.Get("/sessions/" + id);
  REQUIRE(fetched);
  CHECK(json::parse(fetched->body).at("status") == "done");

  auto second = client.Post("/sessions", tree_request(2, "complete").dump(), "application/json");
  REQUIRE(second);
  const std::string id2 = json::parse(second->body).at("id").get<std::string>();
  auto removed = client.Delete("/sessions/" + id2);
  REQUIRE(removed);
  CHECK(removed->status == 200);
  CHECK(json::parse(removed->body).at("status") == "aborted");

  server.stop();
  worker.join();
}
