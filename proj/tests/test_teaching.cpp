#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpnet/teaching.hpp"
#include "test_support.hpp"

using namespace cpnet;
using namespace testing;

namespace {

const ConceptClass& full_class() {
  static const ConceptClass cls = enumerate_class(complete_spec(3, 2, 2));
  return cls;
}

// The seven entailments of the worked example for N1; the last four swap C.
std::vector<LabeledExample> worked_entailments() {
  const std::vector<std::pair<Outcome, Outcome>> pairs = {
      {{0, 0, 0}, {1, 0, 0}}, {{0, 0, 0}, {0, 1, 0}}, {{1, 1, 1}, {1, 0, 1}},
      {{0, 0, 0}, {0, 0, 1}}, {{0, 1, 0}, {0, 1, 1}}, {{1, 0, 0}, {1, 0, 1}},
      {{1, 1, 1}, {1, 1, 0}}};
  std::vector<LabeledExample> out;
  for (const auto& [better, worse] : pairs) out.push_back(preference_example(better, worse, true));
  return out;
}

bool contains_instance(const TeachingSet& t, const SwapInstance& x) {
  return std::any_of(t.examples.begin(), t.examples.end(),
                     [&](const LabeledExample& e) { return e.x == x; });
}

void check_labels_agree(const TeachingSet& t) {
  for (const LabeledExample& e : t.examples) CHECK(evaluate_swap(t.target, e.x) == e.label);
}

}  // namespace

TEST_CASE("preference examples use canonical instances in complete classes") {
  const LabeledExample e = preference_example({1, 1, 1}, {1, 0, 1}, true);
  CHECK(e.x == SwapInstance{{1, 0, 1}, {1, 1, 1}, 1});
  CHECK(e.label == 0);
  const LabeledExample raw = preference_example({1, 1, 1}, {1, 0, 1}, false);
  CHECK(raw.x == SwapInstance{{1, 1, 1}, {1, 0, 1}, 1});
  CHECK(raw.label == 1);
}

TEST_CASE("worked entailment set teaches N1") {
  const CpNet n1 = load("n1.json");
  const TeachingSet t{worked_entailments(), n1};
  check_labels_agree(t);
  CHECK(verify_teaching_set(t, full_class()));

  TeachingSet without_c{{}, n1};
  for (const LabeledExample& e : t.examples)
    if (e.x.swapped != 2) without_c.examples.push_back(e);
  CHECK_FALSE(verify_teaching_set(without_c, full_class()));
}

TEST_CASE("an empty teaching set does not identify a concept among two") {
  const ConceptClass cls = enumerate_class(complete_spec(1, 2, 0));
  REQUIRE(cls.size() == 2);
  CHECK_FALSE(verify_teaching_set({{}, *cls.concepts[0].net}, cls));
}

TEST_CASE("maximal teaching sets") {
  const CpNet n1 = load("n1.json");
  CHECK(is_maximal(n1, n1.spec()));
  const TeachingSet t = teaching_set_maximal(n1, n1.spec());
  CHECK(t.size() == 7);
  check_labels_agree(t);
  CHECK(verify_teaching_set(t, full_class()));
  CHECK_FALSE(is_maximal(load("n3.json"), n1.spec()));
  CHECK_THROWS_AS(teaching_set_maximal(load("n3.json"), n1.spec()), NotMaximal);
}

TEST_CASE("reverse of every example in a complete teaching set carries the opposite label") {
  const CpNet n1 = load("n1.json");
  for (const LabeledExample& e : teaching_set_maximal(n1, n1.spec()).examples)
    CHECK(evaluate_swap(n1, e.x.reversed()) == 1 - e.label);
}

TEST_CASE("universal teaching set for the four-variable net includes the conflict pair") {
  const CpNet net = load("four_vars.json");
  const UniversalSet u = load_universal(data_path("u_2_3_2.txt"), 2, 2);
  const TeachingSet t = teaching_set_universal(net, net.spec(), u);
  check_labels_agree(t);
  CHECK(contains_instance(t, {{0, 0, 0, 0}, {0, 1, 0, 0}, 1}));
  CHECK(contains_instance(t, {{1, 0, 0, 0}, {1, 1, 0, 0}, 1}));
}

TEST_CASE("separable nets are taught with n(m-1) examples") {
  for (int m : {2, 3}) {
    const ClassSpec spec = complete_spec(3, m, 0);
    Order order;
    for (int value = 0; value < m; ++value) order.push_back(value);
    const CpNet net(spec, {make_cpt(0, {}, {order}), make_cpt(1, {}, {order}),
                           make_cpt(2, {}, {order})});
    const TeachingSet t = teaching_set_universal(net, spec, construct_product(m, 2, 0));
    CHECK(t.size() == static_cast<std::size_t>(3 * (m - 1)));
    check_labels_agree(t);
  }
}

TEST_CASE("tree nets stay within e + n(m-1)m examples") {
  const ClassSpec spec = complete_spec(3, 2, 1);
  const UniversalSet u = construct_minimal(2, 2, 1);
  const ConceptClass cls = enumerate_class(spec);
  for (const Concept& c : cls.concepts) {
    const TeachingSet t = teaching_set_universal(*c.net, spec, u);
    CHECK(t.size() <= c.net->edge_count() + 3 * 2);
    CHECK(verify_teaching_set(t, cls));
  }
}

TEST_CASE("empty separable net in the incomplete class") {
  const ClassSpec spec = incomplete_spec(2, 2, 0);
  const CpNet empty(spec, {make_cpt(0, {}, {{}}), make_cpt(1, {}, {{}})});
  const TeachingSet t = teaching_set_incomplete(empty, spec, construct_product(2, 1, 0));
  CHECK(t.size() == 4);
  for (const LabeledExample& e : t.examples) CHECK(e.label == 0);
  CHECK(verify_teaching_set(t, enumerate_class(spec)));
}

TEST_CASE("one-edge incomplete net is identified") {
  const ClassSpec spec = incomplete_spec(2, 2, 1);
  const CpNet net(spec, {make_cpt(0, {}, {{0, 1}}), make_cpt(1, {0}, {{0, 1}, {}})});
  const TeachingSet t = teaching_set_incomplete(net, spec, construct_minimal(2, 1, 1));
  check_labels_agree(t);
  CHECK(verify_teaching_set(t, enumerate_class(spec)));
}

TEST_CASE("conflict pair in the worked net") {
  const CpNet n1 = load("n1.json");
  const auto pair = find_conflict_pair(n1, 2, 0);
  REQUIRE(pair);
  CHECK(pair->child == 2);
  CHECK(pair->witness_parent == 0);
  CHECK(evaluate_swap(n1, pair->x) != evaluate_swap(n1, pair->x2));
  CHECK_FALSE(find_conflict_pair(load("n3.json"), 2, 0));
  CHECK_FALSE(find_conflict_pair(load("n3.json"), 1, 2));
  CHECK(find_conflict_pair(load("n3.json"), 1, 0));
}

TEST_CASE("property: conflict pair exists exactly for parents") {
  for (const Concept& c : full_class().concepts) {
    const CpNet& net = *c.net;
    for (int child = 0; child < 3; ++child)
      for (int parent = 0; parent < 3; ++parent) {
        if (child == parent) continue;
        const auto& ps = net.cpt(child).parents;
        const bool is_parent = std::find(ps.begin(), ps.end(), parent) != ps.end();
        CHECK(find_conflict_pair(net, child, parent).has_value() == is_parent);
      }
  }
}

TEST_CASE("property: constructive teaching sets verify") {
  const ConceptClass& cls = full_class();
  const UniversalSet u = construct_minimal(2, 2, 2);
  for (const Concept& c : cls.concepts) {
    const TeachingSet t = teaching_set_universal(*c.net, cls.concepts[0].net->spec(), u);
    CHECK(verify_teaching_set(t, cls));
    if (is_maximal(*c.net, c.net->spec())) {
      const TeachingSet tm = teaching_set_maximal(*c.net, c.net->spec());
      CHECK(tm.size() == 7);
      CHECK(verify_teaching_set(tm, cls));
    }
  }
  const ClassSpec inc = incomplete_spec(2, 2, 1);
  const ConceptClass inc_cls = enumerate_class(inc);
  for (const Concept& c : inc_cls.concepts)
    CHECK(verify_teaching_set(teaching_set_incomplete(*c.net, inc, construct_minimal(2, 1, 1)),
                              inc_cls));
}

TEST_CASE("teaching set json has one entry per example") {
  const CpNet n1 = load("n1.json");
  const json j = teaching_set_to_json(teaching_set_maximal(n1, n1.spec()));
  REQUIRE(j.is_array());
  CHECK(j.size() == 7);
  CHECK(j[0].contains("label"));
}
