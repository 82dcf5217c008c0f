// superlin: verify, classify, canonicalize, discover and simulate
// finite-dimensional linearizing embeddings of polynomial control systems.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "superlin/io.hpp"
#include "superlin/random.hpp"
#include "superlin/selftest.hpp"
#include "superlin/sim.hpp"

namespace {

using nlohmann::json;
using namespace superlin;

constexpr int kExitPass = 0;
constexpr int kExitVerdictFailure = 1;
constexpr int kExitInputError = 2;

struct CommonOptions {
  std::string input;
  std::string json_out;
  std::uint64_t seed = 0;
  double horizon = 2.0;
  double step = 1e-3;
  double tol = 1e-6;
  int max_degree = 4;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool with_input = true) {
  if (with_input) cmd->add_option("input", opt.input, "system description file")->required();
  cmd->add_option("--json", opt.json_out, "write the machine-readable report here");
  cmd->add_option("--seed", opt.seed, "seed for stochastic draws (default 0)");
  cmd->add_option("--horizon", opt.horizon, "integration horizon (default 2)");
  cmd->add_option("--step", opt.step, "integration step (default 1e-3)");
  cmd->add_option("--tol", opt.tol, "numeric pass tolerance (default 1e-6)");
  cmd->add_option("--max-degree", opt.max_degree, "discovery degree bound (default 4)");
}

int emit(const CommonOptions& opt, json report, bool passed,
         std::chrono::steady_clock::time_point started) {
  report["passed"] = passed;
  report["timing_ms"] = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                            started)
          .count());
  std::cout << render_report_text(report);
  if (!opt.json_out.empty()) {
    std::ofstream out(opt.json_out);
    if (!out) {
      std::cerr << "error: cannot write " << opt.json_out << "\n";
      return kExitInputError;
    }
    out << report.dump(2) << "\n";
  }
  return passed ? kExitPass : kExitVerdictFailure;
}

json base_report(const std::string& command, const CommonOptions& opt, const SystemFile& sf) {
  json report;
  report["command"] = command;
  report["input"] = opt.input;
  report["digest"] = input_digest(system_file_to_json(sf));
  return report;
}

Embedding require_embedding(const SystemFile& sf) {
  if (!sf.embedding) throw SchemaError("this command needs an embedding block in the input file");
  return *sf.embedding;
}

int cmd_verify(const CommonOptions& opt) {
  const auto started = std::chrono::steady_clock::now();
  const SystemFile sf = load_system_file(opt.input);
  const Embedding emb = require_embedding(sf);
  const VerificationReport rep = verify_embedding(sf.system, emb);
  json report = base_report("verify", opt, sf);
  report["verification"] = report_to_json(rep);
  const bool passed = rep.system_form_ok && rep.necessary_ok && rep.sufficient_ok;
  return emit(opt, std::move(report), passed, started);
}

int cmd_classify(const CommonOptions& opt) {
  const auto started = std::chrono::steady_clock::now();
  const SystemFile sf = load_system_file(opt.input);
  const Embedding emb = require_embedding(sf);
  json report = base_report("classify", opt, sf);
  report["classification"] = classification_to_json(classify_observables(emb));
  const ReducedFormCheck reduced = is_reduced_visible_form(emb);
  report["reduced_visible_form"] = reduced.ok;
  report["reduced_form_diagnostics"] = reduced.diagnostics;
  report["balanced"] = is_balanced(emb);
  return emit(opt, std::move(report), true, started);
}

int cmd_canonicalize(const CommonOptions& opt, bool discover_first) {
  const auto started = std::chrono::steady_clock::now();
  const SystemFile sf = load_system_file(opt.input);
  json report = base_report("canonicalize", opt, sf);

  Embedding emb = [&]() -> Embedding {
    if (sf.embedding) return *sf.embedding;
    if (!discover_first)
      throw SchemaError("no embedding in the input file; pass --discover to search for one");
    DiscoveryConfig cfg;
    cfg.max_degree = opt.max_degree;
    DiscoveryResult res = discover_embedding(sf.system, cfg);
    if (!res.found()) throw Error("discovery found no embedding within the bounds");
    return *res.embedding;
  }();

  // pipeline: normalize -> verify -> classify -> balance -> canonicalize
  try {
    const VerificationReport pre = verify_embedding(sf.system, emb);
    if (pre.sufficient_ok) {
      if (!is_reduced_visible_form(emb).ok) emb = reduce_observables(emb);
      const ObservableClassification cls = classify_observables(emb);
      if (cls.g_rank == 1 && !is_single_visible_normalized(emb))
        emb = normalize_single_visible(emb);
    }

    const VerificationReport rep = verify_embedding(sf.system, emb);
    report["verification"] = report_to_json(rep);
    report["classification"] = classification_to_json(classify_observables(emb));
    report["balanced"] = is_balanced(emb);
    report["origin_equilibrium"] = is_zero(sf.system.f_at_origin());

    if (!rep.sufficient_ok) {
      report["error"] = "closure identities do not hold; nothing to canonicalize";
      return emit(opt, std::move(report), false, started);
    }
    const CanonicalForm cf = canonicalize(sf.system, emb);
    report["canonical"] = canonical_form_to_json(cf);
  } catch (const Error& e) {
    report["error"] = e.what();
    return emit(opt, std::move(report), false, started);
  }
  return emit(opt, std::move(report), true, started);
}

int cmd_discover(const CommonOptions& opt, int max_observables, const std::string& out_path) {
  const auto started = std::chrono::steady_clock::now();
  const SystemFile sf = load_system_file(opt.input);
  json report = base_report("discover", opt, sf);

  DiscoveryConfig cfg;
  cfg.max_degree = opt.max_degree;
  cfg.max_observables = max_observables;
  const DiscoveryResult res = discover_embedding(sf.system, cfg);
  report["found"] = res.found();
  if (res.found()) {
    report["m"] = res.embedding->m;
    report["embedding"] = embedding_to_json(*res.embedding);
    const VerificationReport rep = verify_embedding(sf.system, *res.embedding);
    report["verification"] = report_to_json(rep);
    if (!out_path.empty()) {
      SystemFile enriched{sf.system, res.embedding};
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitInputError;
      }
      out << system_file_to_json(enriched).dump(2) << "\n";
    }
  } else {
    json frontier = json::array();
    for (const Monomial& m : res.frontier)
      frontier.push_back(Polynomial::term(m, Rational(1)).to_string());
    report["frontier"] = std::move(frontier);
  }
  return emit(opt, std::move(report), res.found(), started);
}

int cmd_simulate(const CommonOptions& opt, int draws, const std::string& csv_path) {
  const auto started = std::chrono::steady_clock::now();
  const SystemFile sf = load_system_file(opt.input);
  const Embedding emb = require_embedding(sf);
  json report = base_report("simulate", opt, sf);

  Rng rng(opt.seed);
  double max_diagram = 0.0;
  double max_gp = 0.0;
  for (int d = 0; d < draws; ++d) {
    Eigen::VectorXd x0(sf.system.n);
    for (int i = 0; i < sf.system.n; ++i) x0(i) = rng.uniform_real(-2.0, 2.0);
    ControlSignal u;
    const int intervals = 4;
    for (int i = 0; i <= intervals; ++i)
      u.breakpoints.push_back(opt.horizon * static_cast<double>(i) / intervals);
    for (int i = 0; i < intervals; ++i) u.values.push_back(rng.uniform_real(-1.0, 1.0));
    max_diagram = std::max(max_diagram,
                           check_diagram(sf.system, emb, x0, u, opt.horizon, opt.step));
    max_gp = std::max(max_gp,
                      check_gp_identity(sf.system, emb, x0, u, opt.horizon, opt.step));
  }
  report["simulation"] = {
      {"draws", draws},
      {"horizon", opt.horizon},
      {"step", opt.step},
      {"max_check_diagram", max_diagram},
      {"max_check_gp_identity", max_gp},
      {"tolerance", opt.tol},
  };

  if (!csv_path.empty()) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Ones(sf.system.n);
    Eigen::VectorXd z0(emb.n + emb.m);
    z0.head(emb.n) = x0;
    z0.tail(emb.m) = emb.p.eval(x0);
    const ControlSignal u = ControlSignal::zero(opt.horizon);
    const Trajectory base = integrate(system_field(sf.system), x0, u, opt.horizon, opt.step);
    const Trajectory lifted = integrate(lifted_field(emb), z0, u, opt.horizon, opt.step);
    std::ofstream out(csv_path);
    if (!out) {
      std::cerr << "error: cannot write " << csv_path << "\n";
      return kExitInputError;
    }
    write_csv(out, base, &lifted);
  }

  const bool passed = max_diagram <= opt.tol && max_gp <= opt.tol;
  return emit(opt, std::move(report), passed, started);
}

int cmd_selftest(const CommonOptions& opt) {
  const auto started = std::chrono::steady_clock::now();
  const std::vector<SelftestSuite> suites = run_selftest(opt.seed);
  json report;
  report["command"] = "selftest";
  report["seed"] = opt.seed;
  json sj = json::array();
  for (const SelftestSuite& s : suites) {
    std::cout << "  " << s.name << ": " << s.passed << "/" << s.total << "\n";
    sj.push_back({{"name", s.name}, {"passed", s.passed}, {"total", s.total}});
  }
  report["suites"] = std::move(sj);
  return emit(opt, std::move(report), all_passed(suites), started);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analysis and canonical forms for super-linearizable polynomial systems"};
  app.require_subcommand(1);

  CommonOptions opt;
  int draws = 20;
  int max_observables = 64;
  std::string csv_path, out_path;
  bool discover_first = false;

  CLI::App* verify = app.add_subcommand("verify", "check the exact embedding identities");
  add_common_flags(verify, opt);
  CLI::App* classify = app.add_subcommand("classify", "visible/hidden observables, rank, balance");
  add_common_flags(classify, opt);
  CLI::App* canon = app.add_subcommand("canonicalize", "compute the canonical split of the state");
  add_common_flags(canon, opt);
  canon->add_flag("--discover", discover_first, "search for an embedding if the file has none");
  CLI::App* discover = app.add_subcommand("discover", "search for a linearizing observable set");
  add_common_flags(discover, opt);
  discover->add_option("--max-observables", max_observables, "observable count bound (default 64)");
  discover->add_option("--out", out_path, "write the system plus discovered embedding here");
  CLI::App* simulate = app.add_subcommand("simulate", "trajectory certificates for the embedding");
  add_common_flags(simulate, opt);
  simulate->add_option("--draws", draws, "number of random (x0, u) draws (default 20)");
  simulate->add_option("--csv", csv_path, "export one trajectory pair as CSV");
  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in property sweeps");
  add_common_flags(selftest, opt, /*with_input=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInputError;
  }

  try {
    if (verify->parsed()) return cmd_verify(opt);
    if (classify->parsed()) return cmd_classify(opt);
    if (canon->parsed()) return cmd_canonicalize(opt, discover_first);
    if (discover->parsed()) return cmd_discover(opt, max_observables, out_path);
    if (simulate->parsed()) return cmd_simulate(opt, draws, csv_path);
    if (selftest->parsed()) return cmd_selftest(opt);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerdictFailure;
  }
  return kExitInputError;
}
