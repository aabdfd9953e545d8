#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include "cpnet/io.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string command = std::string(CPNET_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  std::array<char, 4096> buffer{};
  while (const std::size_t got = fread(buffer.data(), 1, buffer.size(), pipe)) r.out.append(buffer.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(CPNET_TEST_DATA) + "/" + name; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("dims prints the closed-form values") {
  const Run r = run("dims --n 3 --m 2 --k 2 --complete");
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].rfind("n,m,k,completeness,instances,concepts,vcd,td,rtd", 0) == 0);
  CHECK(rows[1] == "3,2,2,complete,12,488,7,12,7,,,,");
}

TEST_CASE("dims reports budget failures with exit code 2") {
  CHECK(run("dims --n 9 --m 2 --k 8").code == 2);
}

TEST_CASE("learn recovers the parity net") {
  const Run r = run("learn --target " + data("parity3.json") + " --k 2 --universal " + data("u_2_2_2.txt"));
  CHECK(r.code == 0);
  const auto j = cpnet::json::parse(r.out);
  CHECK(j.at("exact") == true);
  CHECK(cpnet::net_from_json(j.at("net")) == cpnet::load_net(data("parity3.json")));
}

TEST_CASE("learn writes a transcript") {
  const auto path = std::filesystem::temp_directory_path() / "cpnet_cli_transcript.json";
  std::filesystem::remove(path);
  const Run r = run("learn --target " + data("n3.json") + " --k 1 --transcript " + path.string());
  CHECK(r.code == 0);
  const auto j = cpnet::load_json(path.string());
  CHECK(j.at("queries").size() == cpnet::json::parse(r.out).at("queries_used").get<std::size_t>());
  std::filesystem::remove(path);
}

TEST_CASE("simulate with the malicious strategy is always exact") {
  const Run r = run("simulate --n 7 --k 1 --strategy mal --trials 20 --seed 1");
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 21);
  CHECK(rows[0] == "trial,seed,strategy,corrupted,certificate,queries,exact");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].substr(rows[i].rfind(',') + 1) == "true");
}

TEST_CASE("universal prints a minimal set") {
  const Run r = run("universal --m 2 --z 3 --k 2");
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 4);
  const Run j = run("universal --m 2 --z 4 --k 1 --format json");
  CHECK(cpnet::json::parse(j.out).at("vectors").size() == 2);
}

TEST_CASE("teach verifies the maximal teaching set") {
  const Run r = run("teach --target " + data("n1.json") + " --verify");
  CHECK(r.code == 0);
  const auto j = cpnet::json::parse(r.out);
  CHECK(j.at("verified") == true);
  CHECK(j.at("size") == 7);
}

TEST_CASE("bad invocations fail") {
  CHECK(run("learn").code == 1);
  CHECK(run("dims --n 3 --m 2 --k 7").code != 0);
  CHECK(run("--help").code == 0);
}
