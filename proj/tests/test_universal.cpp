#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "test_support.hpp"

using namespace cpnet;
using namespace testing;

namespace {

UniversalSet make(int m, int k, std::vector<std::vector<int>> vectors) {
  UniversalSet u;
  u.m = m;
  u.k = k;
  u.z = vectors.empty() ? 0 : static_cast<int>(vectors.front().size());
  u.vectors = std::move(vectors);
  return u;
}

// Independent check: every k-subset of coordinates sees every pattern.
bool brute_universal(const UniversalSet& u) {
  const int z = u.z;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << z); ++mask) {
    if (__builtin_popcountll(mask) != u.k) continue;
    std::set<std::vector<int>> seen;
    for (const auto& v : u.vectors) {
      std::vector<int> proj;
      for (int i = 0; i < z; ++i)
        if ((mask >> i) & 1U) proj.push_back(v[static_cast<std::size_t>(i)]);
      seen.insert(proj);
    }
    if (seen.size() != ipow(static_cast<std::uint64_t>(u.m), static_cast<unsigned>(u.k)))
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("the four-vector set is (2,3,2)-universal") {
  CHECK(is_universal(make(2, 2, {{0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 0}})));
  CHECK_FALSE(is_universal(make(2, 2, {{0, 0, 0}, {1, 0, 1}, {0, 1, 1}})));
}

TEST_CASE("length-10 vectors with at most three ones") {
  std::vector<std::vector<int>> vectors;
  for (int mask = 0; mask < 1024; ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) > 3) continue;
    std::vector<int> v(10);
    for (int i = 0; i < 10; ++i) v[static_cast<std::size_t>(i)] = (mask >> i) & 1;
    vectors.push_back(v);
  }
  CHECK(is_universal(make(2, 3, vectors)));
  CHECK_FALSE(is_universal(make(2, 4, vectors)));
}

TEST_CASE("the zero vector is 0-universal") { CHECK(is_universal(make(2, 0, {{0, 0, 0}}))); }

TEST_CASE("product construction") {
  const UniversalSet u = construct_product(2, 3, 1);
  CHECK(is_universal(u));
  CHECK(u.size() <= 6);
  CHECK(construct_product(2, 3, 3).size() == 8);
  CHECK(construct_product(3, 2, 2).size() == 9);
  CHECK(construct_product(2, 4, 0).size() == 1);
  for (int k = 0; k <= 3; ++k) CHECK(brute_universal(construct_product(2, 3, k)));
}

TEST_CASE("minimal construction sizes") {
  CHECK(construct_minimal(2, 3, 2).size() == 4);
  CHECK(construct_minimal(2, 4, 1).size() == 2);
  CHECK(construct_minimal(3, 2, 2).size() == 9);
  CHECK(construct_minimal(2, 5, 0).size() == 1);
  for (int z = 1; z <= 4; ++z)
    for (int k = 0; k <= std::min(z, 2); ++k) CHECK(brute_universal(construct_minimal(2, z, k)));
}

TEST_CASE("context set and swap expression for variable A") {
  const UniversalSet u = make(2, 2, {{0, 0, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 0}});
  const auto contexts = context_set(u, 0, complete_spec(4, 2, 2));
  const std::vector<Outcome> expected = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 1, 1, 0}};
  CHECK(contexts == expected);
  const auto expr = swap_expression(contexts, 0, std::vector<Order>(4, Order{0, 1}));
  REQUIRE(expr.swaps.size() == 4);
  CHECK(expr.swaps[0] == SwapInstance{{0, 0, 0, 0}, {1, 0, 0, 0}, 0});
  CHECK(expr.swaps[1] == SwapInstance{{0, 1, 0, 1}, {1, 1, 0, 1}, 0});
  CHECK(expr.swaps[2] == SwapInstance{{0, 0, 1, 1}, {1, 0, 1, 1}, 0});
  CHECK(expr.swaps[3] == SwapInstance{{0, 1, 1, 0}, {1, 1, 1, 0}, 0});
}

TEST_CASE("swap expressions chain m-1 swaps per context") {
  const auto expr = swap_expression({{0, 1}}, 0, {{2, 0, 1}});
  REQUIRE(expr.swaps.size() == 2);
  CHECK(expr.swaps[0] == SwapInstance{{0, 1}, {2, 1}, 0});
  CHECK(expr.swaps[1] == SwapInstance{{0, 1}, {1, 1}, 0});
  const auto single = swap_expression({{0, 0}}, 1, {{0, 1}});
  CHECK(single.swaps.size() == 1);
}

TEST_CASE("universal set text round trip") {
  const UniversalSet u = load_universal(data_path("u_2_3_2.txt"), 2, 2);
  CHECK(u.z == 3);
  CHECK(u.size() == 4);
  CHECK(is_universal(u));
  CHECK(universal_from_text(universal_to_text(u), 2, 2).vectors == u.vectors);
  CHECK(universal_from_json(universal_to_json(u)).vectors == u.vectors);
}
