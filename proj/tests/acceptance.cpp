#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cpnet/classes.hpp"
#include "cpnet/learners.hpp"
#include "cpnet/oracles.hpp"
#include "cpnet/teaching.hpp"
#include "cpnet/universal.hpp"

using namespace cpnet;

namespace {

// Collects the first few failed expectations of one criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 5) notes_ << (failures_ > 1 ? "; " : "") << what;
  }
  bool ok() const { return failures_ == 0; }
  std::string notes() const { return notes_.str(); }

 private:
  std::size_t failures_ = 0;
  std::ostringstream notes_;
};

ClassSpec complete_spec(int n, int k) { return {n, 2, k, Completeness::CompleteOnly}; }
ClassSpec incomplete_spec(int n, int k) { return {n, 2, k, Completeness::AllowIncomplete}; }

std::string data(const std::string& name) { return std::string(CPNET_TEST_DATA) + "/" + name; }

std::string num(std::size_t v) { return std::to_string(v); }

void unbounded_dims(Checker& c) {
  const ConceptClass full = enumerate_class(complete_spec(3, 2));
  const std::size_t mk = max_size(complete_spec(3, 2));
  c.expect(mk == 7, "M_k = " + num(mk));
  c.expect(vcd(full) == 7, "vcd = " + num(vcd(full)));
  c.expect(vcd_reference(full) == 7, "reference vcd differs");
  c.expect(rtd(full) == mk, "rtd = " + num(rtd(full)));
  c.expect(td_class(full) == 3 * 4, "td = " + num(td_class(full)));
  const ConceptClass sep = enumerate_class(complete_spec(3, 0));
  c.expect(vcd(sep) == 3, "separable vcd = " + num(vcd(sep)));
  c.expect(td_class(sep) == 3, "separable td = " + num(td_class(sep)));
  c.expect(rtd(sep) == 3, "separable rtd = " + num(rtd(sep)));
}

void incomplete_dims(Checker& c) {
  for (int k = 0; k <= 1; ++k) {
    const std::size_t inc = vcd(enumerate_class(incomplete_spec(2, k)));
    const std::size_t com = vcd(enumerate_class(complete_spec(2, k)));
    c.expect(inc == com, "k=" + std::to_string(k) + " vcd " + num(inc) + " vs " + num(com));
  }
  const std::size_t td0 = td_class(enumerate_class(incomplete_spec(2, 0)));
  c.expect(td0 == 4, "incomplete separable td = " + num(td0));
}

void worked_td(Checker& c) {
  const ConceptClass full = enumerate_class(complete_spec(3, 2));
  const std::vector<std::pair<std::string, std::size_t>> expected = {
      {"n1.json", 7}, {"n2.json", 9}, {"n3.json", 10}};
  for (const auto& [name, value] : expected) {
    const std::size_t got = td(load_net(data(name)), full);
    c.expect(got == value, name + " td = " + num(got));
  }
}

void check_learned(Checker& c, const CpNet& target, const LearnResult& r, std::size_t bound,
                   const std::string& label) {
  c.expect(r.net == target, label + ": wrong net");
  c.expect(r.queries_used <= bound, label + ": " + num(r.queries_used) + " > " + num(bound));
}

void learner_sweep(Checker& c) {
  const ClassSpec tree = complete_spec(3, 1);
  for (const CpNet& target : enumerate_nets(tree)) {
    auto oracle = OracleSession::perfect(target);
    check_learned(c, target, learn_tree_complete(oracle, tree),
                  tree_query_bound(3, target.edge_count(), true), "tree n=3");
  }
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k < n; ++k) {
      const ClassSpec spec = complete_spec(n, k);
      const UniversalSet u = construct_minimal(2, n - 1, k);
      for (const CpNet& target : enumerate_nets(spec)) {
        auto oracle = OracleSession::perfect(target);
        check_learned(c, target, learn_kbounded_complete(oracle, spec, u),
                      kbounded_query_bound(n, u.size(), target.edge_count(), true),
                      "k-bounded n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
    }
  for (int k = 0; k <= 1; ++k) {
    const ClassSpec spec = incomplete_spec(2, k);
    const UniversalSet u = construct_minimal(2, 1, k);
    for (const CpNet& target : enumerate_nets(spec)) {
      auto a = OracleSession::perfect(target);
      check_learned(c, target, learn_tree_incomplete(a, spec),
                    tree_query_bound(2, target.edge_count(), false), "incomplete tree");
      auto b = OracleSession::perfect(target);
      check_learned(c, target, learn_kbounded_incomplete(b, spec, u),
                    kbounded_query_bound(2, u.size(), target.edge_count(), false),
                    "incomplete k-bounded");
    }
  }
}

void corruption_trials(Checker& c, CorruptionMode mode, Strategy strategy) {
  const ClassSpec spec = complete_spec(7, 1);
  const int bound = corruption_bound(spec, mode);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const CpNet target = random_net(spec, rng);
    const CorruptionSample sample = sample_corruption_set(spec, target, mode, seed);
    c.expect(static_cast<int>(sample.certificate) <= bound,
             "seed " + std::to_string(seed) + " certificate " + num(sample.certificate));
    auto oracle = mode == CorruptionMode::MaliciousBound
                      ? OracleSession::malicious(target, sample.set)
                      : OracleSession::limited(target, sample.set);
    try {
      const LearnResult r = learn_with_corruption(oracle, spec, strategy, std::nullopt);
      c.expect(r.net == target, "seed " + std::to_string(seed) + " not exact");
    } catch (const Error& e) {
      c.expect(false, "seed " + std::to_string(seed) + ": " + e.what());
    }
  }
}

void corruption(Checker& c) {
  corruption_trials(c, CorruptionMode::MaliciousBound, Strategy::Mal);
  corruption_trials(c, CorruptionMode::LimitedBound, Strategy::Lim);

  const ClassSpec spec = complete_spec(7, 1);
  const HopelessCase h = hopeless_corruption_set(spec, 3, {1});
  c.expect(h.set.size() == 32, "hopeless |L| = " + num(h.set.size()));
  c.expect(!(h.first == h.second), "hopeless targets coincide");
  auto first = OracleSession::limited(h.first, h.set);
  auto second = OracleSession::limited(h.second, h.set);
  for (const SwapInstance& x : instance_space(spec, false))
    c.expect(first.answer(x) == second.answer(x), "hopeless answers differ");
  c.expect(first.log() == second.log(), "hopeless transcripts differ");
}

void audits(Checker& c) {
  const double kz = kz_lower_bound(7, 6, static_cast<int>(max_edges(complete_spec(7, 6))));
  c.expect(kz == 178.5, "kz = " + std::to_string(kz));
  c.expect(kz > 127.0, "kz does not exceed 2^7 - 1");
  const StructuralReport sep = structural_report(separable_xsep_class(3, 2));
  c.expect(sep.is_maximum && sep.is_maximal && sep.is_intersection_closed && sep.is_extremal,
           "separable class is not all true");
  const StructuralReport tree = structural_report(enumerate_class(complete_spec(2, 1)));
  c.expect(!tree.is_maximum && !tree.is_maximal && !tree.is_intersection_closed &&
               !tree.is_extremal,
           "tree class is not all false");
}

void properties(Checker& c) {
  const ClassSpec full_spec = complete_spec(3, 2);
  const ConceptClass full = enumerate_class(full_spec);
  const auto xs = instance_space(full_spec, false);
  const UniversalSet u = construct_minimal(2, 2, 2);
  for (const Concept& concept_entry : full.concepts) {
    const CpNet& net = *concept_entry.net;
    for (const SwapInstance& x : xs)
      c.expect(evaluate_swap(net, x) + evaluate_swap(net, x.reversed()) == 1,
               "complementarity broken");
    for (int child = 0; child < 3; ++child)
      for (int parent = 0; parent < 3; ++parent) {
        if (child == parent) continue;
        const auto& ps = net.cpt(child).parents;
        const bool is_parent = std::find(ps.begin(), ps.end(), parent) != ps.end();
        c.expect(find_conflict_pair(net, child, parent).has_value() == is_parent,
                 "conflict pair does not match parenthood");
      }
    c.expect(verify_teaching_set(teaching_set_universal(net, full_spec, u), full),
             "universal teaching set fails");
    if (is_maximal(net, full_spec))
      c.expect(verify_teaching_set(teaching_set_maximal(net, full_spec), full),
               "maximal teaching set fails");
  }
  const ClassSpec inc_spec = incomplete_spec(2, 1);
  const ConceptClass inc = enumerate_class(inc_spec);
  for (const Concept& concept_entry : inc.concepts)
    c.expect(verify_teaching_set(
                 teaching_set_incomplete(*concept_entry.net, inc_spec, construct_minimal(2, 1, 1)),
                 inc),
             "incomplete teaching set fails");
  for (const ClassSpec& spec : {full_spec, complete_spec(3, 1), complete_spec(3, 0), inc_spec,
                                incomplete_spec(3, 1)})
    for (const CpNet& net : enumerate_nets(spec))
      c.expect(is_consistent(net), "acyclic net is inconsistent");
  for (const ClassSpec& spec : {full_spec, complete_spec(3, 1), complete_spec(3, 0),
                                complete_spec(2, 1)})
    c.expect(is_complement_closed(enumerate_class(spec)), "class not closed under complement");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria = {
      {"unbounded and separable dimensions at n=3", unbounded_dims},
      {"incomplete dimensions at n=2", incomplete_dims},
      {"worked teaching dimensions of N1 N2 N3", worked_td},
      {"learner exactness sweep", learner_sweep},
      {"corruption robustness and hopeless case", corruption},
      {"lower-bound and structural audits", audits},
      {"property suites", properties},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.ok()) {
      std::printf("PASS %s (%.1fs)\n", name.c_str(), seconds);
    } else {
      ++failed;
      std::printf("FAIL %s (%.1fs): %s\n", name.c_str(), seconds, c.notes().c_str());
    }
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
