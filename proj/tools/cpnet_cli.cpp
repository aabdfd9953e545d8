#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "cpnet/classes.hpp"
#include "cpnet/learners.hpp"
#include "cpnet/service.hpp"
#include "cpnet/teaching.hpp"
#include "cpnet/universal.hpp"

using namespace cpnet;

namespace {

std::size_t max_indegree(const CpNet& net) {
  std::size_t k = 0;
  for (const Cpt& cpt : net.cpts()) k = std::max(k, cpt.parents.size());
  return k;
}

bool same_labels(const CpNet& a, const CpNet& b) {
  for (const SwapInstance& x : instance_space(a.spec(), !a.spec().complete()))
    if (evaluate_swap(a, x) != evaluate_swap(b, x)) return false;
  return true;
}

UniversalSet default_universal(int m, int z, int k) {
  try {
    return construct_minimal(m, z, k);
  } catch (const BudgetExceeded&) {
    return construct_product(m, z, k);
  }
}

struct DimsArgs {
  int n = 3, m = 2, k = 0;
  bool incomplete = false;
  bool structural = false;
  bool header = true;
};

int run_dims(const DimsArgs& a) {
  const ClassSpec spec{a.n, a.m, a.k,
                       a.incomplete ? Completeness::AllowIncomplete : Completeness::CompleteOnly};
  spec.validate();
  const DimsRow row = compute_dims(spec, a.structural);
  if (a.header) std::cout << dims_csv_header() << '\n';
  std::cout << dims_csv_row(row) << '\n';
  return 0;
}

struct TeachArgs {
  std::string target;
  std::string universal;
  std::string method = "auto";
  int k = -1;
  bool verify = false;
};

int run_teach(const TeachArgs& a) {
  const CpNet net = load_net(a.target);
  ClassSpec spec = net.spec();
  if (a.k >= 0) spec.k = a.k;
  spec.validate();
  std::string method = a.method;
  if (method == "auto") {
    if (!spec.complete())
      method = "incomplete";
    else if (is_maximal(net, spec))
      method = "maximal";
    else
      method = "universal";
  }
  auto universal = [&] {
    return a.universal.empty() ? default_universal(spec.m, spec.n - 1, spec.k)
                               : load_universal(a.universal, spec.m, spec.k);
  };
  TeachingSet t = [&] {
    if (method == "maximal") return teaching_set_maximal(net, spec);
    if (method == "universal") return teaching_set_universal(net, spec, universal());
    if (method == "incomplete") return teaching_set_incomplete(net, spec, universal());
    throw ValidationError("method must be auto, maximal, universal or incomplete");
  }();
  json out{{"method", method}, {"size", t.size()}, {"examples", teaching_set_to_json(t)}};
  if (a.verify) out["verified"] = verify_teaching_set(t, enumerate_class(spec));
  std::cout << out.dump(2) << '\n';
  return 0;
}

struct LearnArgs {
  std::string target;
  std::string universal;
  std::string strategy = "none";
  std::string learner = "auto";
  std::string transcript;
  int k = -1;
  std::uint64_t seed = 1;
};

int run_learn(const LearnArgs& a) {
  const CpNet target = load_net(a.target);
  ClassSpec spec = target.spec();
  spec.k = a.k >= 0 ? a.k : static_cast<int>(max_indegree(target));
  spec.validate();
  if (max_indegree(target) > static_cast<std::size_t>(spec.k))
    throw ValidationError("target exceeds the requested indegree bound");
  const CpNet bound_target(spec, target.cpts());
  const Strategy strategy = strategy_from_string(a.strategy);

  LearnerKind kind = LearnerKind::KBounded;
  if (a.learner == "auto") {
    kind = spec.k <= 1 && a.universal.empty() ? LearnerKind::Tree : LearnerKind::KBounded;
  } else {
    kind = learner_kind_from_string(a.learner);
  }
  std::optional<UniversalSet> u;
  if (!a.universal.empty()) u = load_universal(a.universal, spec.m, spec.k);
  else if (kind == LearnerKind::KBounded) u = default_universal(spec.m, spec.n - 1, spec.k);

  std::optional<OracleSession> oracle;
  std::size_t corrupted = 0;
  if (strategy == Strategy::None) {
    oracle = OracleSession::perfect(bound_target);
  } else {
    const CorruptionMode mode =
        strategy == Strategy::Mal ? CorruptionMode::MaliciousBound : CorruptionMode::LimitedBound;
    CorruptionSample sample = sample_corruption_set(spec, bound_target, mode, a.seed);
    corrupted = sample.set.size();
    oracle = strategy == Strategy::Mal ? OracleSession::malicious(bound_target, sample.set)
                                       : OracleSession::limited(bound_target, sample.set);
  }
  const LearnResult r = strategy == Strategy::None ? learn(*oracle, spec, kind, u)
                                                   : learn_with_corruption(*oracle, spec, strategy, u);
  json out{{"net", net_to_json(r.net)},
           {"queries_used", r.queries_used},
           {"exact", same_labels(r.net, bound_target)},
           {"learner", to_string(kind)},
           {"strategy", to_string(strategy)},
           {"corrupted", corrupted}};
  if (!a.transcript.empty()) {
    save_json(a.transcript, transcript_to_json(*oracle));
    out["transcript"] = a.transcript;
  } else {
    out["transcript"] = transcript_to_json(*oracle);
  }
  std::cout << out.dump(2) << '\n';
  return out["exact"].get<bool>() ? 0 : 1;
}

struct UniversalArgs {
  int m = 2, z = 2, k = 1;
  std::string method = "minimal";
  std::string format = "text";
  std::string out;
};

int run_universal(const UniversalArgs& a) {
  const UniversalSet u = a.method == "product" ? construct_product(a.m, a.z, a.k)
                         : a.method == "minimal"
                             ? construct_minimal(a.m, a.z, a.k)
                             : throw ValidationError("method must be minimal or product");
  const std::string text =
      a.format == "json" ? universal_to_json(u).dump(2) + "\n" : universal_to_text(u);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream(a.out) << text;
  }
  return 0;
}

struct SimulateArgs {
  int n = 7, k = 1, trials = 20;
  std::string strategy = "mal";
  std::string universal;
  std::uint64_t seed = 1;
};

int run_simulate(const SimulateArgs& a) {
  const ClassSpec spec{a.n, 2, a.k, Completeness::CompleteOnly};
  spec.validate();
  const Strategy strategy = strategy_from_string(a.strategy);
  std::optional<UniversalSet> u;
  if (spec.k != 1)
    u = a.universal.empty() ? default_universal(2, spec.n - 1, spec.k)
                            : load_universal(a.universal, 2, spec.k);
  std::cout << "trial,seed,strategy,corrupted,certificate,queries,exact\n";
  bool all_exact = true;
  for (int t = 0; t < a.trials; ++t) {
    const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(t);
    std::mt19937_64 rng(seed);
    const CpNet target = random_net(spec, rng);
    std::optional<OracleSession> oracle;
    CorruptionSample sample;
    if (strategy == Strategy::None) {
      oracle = OracleSession::perfect(target);
    } else {
      const CorruptionMode mode =
          strategy == Strategy::Mal ? CorruptionMode::MaliciousBound : CorruptionMode::LimitedBound;
      sample = sample_corruption_set(spec, target, mode, seed);
      oracle = strategy == Strategy::Mal ? OracleSession::malicious(target, sample.set)
                                         : OracleSession::limited(target, sample.set);
    }
    bool exact = false;
    std::size_t queries = 0;
    try {
      const LearnResult r = learn_with_corruption(*oracle, spec, strategy, u);
      exact = same_labels(r.net, target);
      queries = r.queries_used;
    } catch (const OracleContradiction&) {
      queries = oracle->distinct();
    } catch (const MajorityTie&) {
      queries = oracle->distinct();
    }
    all_exact = all_exact && exact;
    std::cout << t << ',' << seed << ',' << to_string(strategy) << ',' << sample.set.size() << ','
              << sample.certificate << ',' << queries << ',' << (exact ? "true" : "false") << '\n';
  }
  return all_exact ? 0 : 1;
}

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir;
  int timeout = 0;
};

int run_serve(const ServeArgs& a) {
  SessionManager::Options options;
  if (!a.data_dir.empty()) options.data_dir = a.data_dir;
  options.timeout = std::chrono::seconds(a.timeout);
  SessionManager manager(options);
  SessionServer server(manager);
  return server.listen(a.host, a.port) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CP-net learning, teaching and elicitation toolkit"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  DimsArgs dims;
  auto* dims_cmd = app.add_subcommand("dims", "Brute-force VCD, TD and RTD of a CP-net class");
  dims_cmd->add_option("--n", dims.n, "Number of variables")->required();
  dims_cmd->add_option("--m", dims.m, "Domain size");
  dims_cmd->add_option("--k", dims.k, "Indegree bound");
  auto* complete_flag = dims_cmd->add_flag("--complete", "Complete nets over X_swap (default)");
  dims_cmd->add_flag("--incomplete", dims.incomplete, "Incomplete nets over both swap directions")
      ->excludes(complete_flag);
  dims_cmd->add_flag("--structural", dims.structural, "Add the structural report columns");
  dims_cmd->add_flag("!--no-header", dims.header, "Omit the CSV header");

  TeachArgs teach;
  auto* teach_cmd = app.add_subcommand("teach", "Build a teaching set for a net");
  teach_cmd->add_option("--target", teach.target, "Net JSON")->required()->check(CLI::ExistingFile);
  teach_cmd->add_option("--universal", teach.universal, "Universal set file")->check(CLI::ExistingFile);
  teach_cmd->add_option("--method", teach.method, "auto, maximal, universal or incomplete");
  teach_cmd->add_option("--k", teach.k, "Indegree bound of the class");
  teach_cmd->add_flag("--verify", teach.verify, "Check uniqueness against the enumerated class");

  LearnArgs learn_args;
  auto* learn_cmd = app.add_subcommand("learn", "Learn a target net from simulated queries");
  learn_cmd->add_option("--target", learn_args.target, "Net JSON")->required()->check(CLI::ExistingFile);
  learn_cmd->add_option("--k", learn_args.k, "Indegree bound");
  learn_cmd->add_option("--strategy", learn_args.strategy, "none, lim or mal");
  learn_cmd->add_option("--seed", learn_args.seed, "Seed for the corruption set");
  learn_cmd->add_option("--universal", learn_args.universal, "Universal set file")
      ->check(CLI::ExistingFile);
  learn_cmd->add_option("--learner", learn_args.learner, "auto, tree or kbounded");
  learn_cmd->add_option("--transcript", learn_args.transcript, "Write the query transcript here");

  UniversalArgs uni;
  auto* uni_cmd = app.add_subcommand("universal", "Construct a universal set");
  uni_cmd->add_option("--m", uni.m, "Alphabet size");
  uni_cmd->add_option("--z", uni.z, "Vector length")->required();
  uni_cmd->add_option("--k", uni.k, "Strength")->required();
  uni_cmd->add_option("--method", uni.method, "minimal or product");
  uni_cmd->add_option("--format", uni.format, "text or json");
  uni_cmd->add_option("--out", uni.out, "Output file");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Seeded corruption experiments as CSV");
  sim_cmd->add_option("--n", sim.n, "Number of variables");
  sim_cmd->add_option("--k", sim.k, "Indegree bound");
  sim_cmd->add_option("--strategy", sim.strategy, "none, lim or mal");
  sim_cmd->add_option("--trials", sim.trials, "Number of trials");
  sim_cmd->add_option("--seed", sim.seed, "First seed");
  sim_cmd->add_option("--universal", sim.universal, "Universal set file")->check(CLI::ExistingFile);

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP elicitation service");
  serve_cmd->add_option("--host", serve.host, "Bind address")->envname("CPNET_HOST");
  serve_cmd->add_option("--port", serve.port, "Port")->envname("CPNET_PORT");
  serve_cmd->add_option("--data-dir", serve.data_dir, "Session directory")->envname("CPNET_DATA_DIR");
  serve_cmd->add_option("--timeout", serve.timeout, "Idle seconds before a session aborts")
      ->envname("CPNET_SESSION_TIMEOUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    if (*dims_cmd) return run_dims(dims);
    if (*teach_cmd) return run_teach(teach);
    if (*learn_cmd) return run_learn(learn_args);
    if (*uni_cmd) return run_universal(uni);
    if (*sim_cmd) return run_simulate(sim);
    if (*serve_cmd) return run_serve(serve);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
