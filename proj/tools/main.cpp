#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "diriop/mapspec.hpp"
#include "diriop/selftest.hpp"
#include "diriop/serialize.hpp"

namespace {

using diriop::io::json;

constexpr int exit_ok = 0;
constexpr int exit_selftest_failure = 1;
constexpr int exit_parse_error = 2;
constexpr int exit_not_automorphism = 3;
constexpr int exit_not_self_map = 4;

struct Options {
  std::string map_spec;
  std::string phi_spec;
  std::string psi_spec;
  int directions = 256;
  int k_min = 4;
  int k_max = 40;
  double q_threshold = 1e-3;
  double rho = 0.9;
  int order = 512;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 20240801;
  bool trace = false;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw diriop::Error("cannot open output file: " + path);
  f << content;
}

void emit(const Options& opt, const json& payload) {
  std::string text = payload.dump(2);
  text += '\n';
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    write_file(opt.out + ".json", text);
    std::cout << text;
  }
}

diriop::ScanConfig<double> scan_config(const Options& opt) {
  diriop::ScanConfig<double> cfg;
  cfg.directions = opt.directions;
  cfg.ladder = {opt.k_min, opt.k_max};
  cfg.q_threshold = opt.q_threshold;
  return cfg;
}

int cmd_classify(const Options& opt) {
  diriop::MobiusMapd m = diriop::parse_map_spec(opt.map_spec);
  emit(opt, diriop::io::classify_report(m));
  return exit_ok;
}

int cmd_diff_scan(const Options& opt) {
  diriop::MobiusMapd phi = diriop::parse_map_spec(opt.phi_spec);
  diriop::MobiusMapd psi = diriop::parse_map_spec(opt.psi_spec);
  if (!diriop::is_self_map(phi) || !diriop::is_self_map(psi))
    throw diriop::NotSelfMap("diff-scan: both symbols must be self-maps of the disk");

  auto cfg = scan_config(opt);
  auto report = diriop::boundary_scan(phi, psi, cfg);

  auto payload = [&](bool include_cells) {
    json p = {{"schema_version", "1"},
              {"phi", diriop::io::to_json(phi)},
              {"psi", diriop::io::to_json(psi)},
              {"scan", diriop::io::to_json(report, include_cells)}};
    if (report.witness) {
      auto ladder_res = diriop::ratio_limit_check(phi, psi, report.witness->zeta, cfg.ladder,
                                                  cfg.q_threshold);
      json samples = json::array();
      for (const auto& s : ladder_res.samples) samples.push_back(diriop::io::to_json(s));
      p["witness_analysis"] = {{"zeta", diriop::io::to_json(report.witness->zeta)},
                               {"case_report", diriop::io::to_json(ladder_res.report)},
                               {"ratio_ladder", samples}};
    } else {
      p["witness_analysis"] = json();
    }
    return p;
  };

  if (opt.out.empty()) {
    if (opt.format == "csv") {
      std::cout << diriop::io::scan_csv(report);
    } else {
      std::cout << payload(false).dump(2) << "\n";
    }
  } else {
    // Full report (with cells) goes to the files; stdout gets the summary.
    write_file(opt.out + ".json", payload(true).dump(2) + "\n");
    write_file(opt.out + ".csv", diriop::io::scan_csv(report));
    std::cout << payload(false).dump(2) << "\n";
  }
  return exit_ok;
}

int cmd_commutator(const Options& opt) {
  diriop::MobiusMapd phi = diriop::parse_map_spec(opt.phi_spec);
  diriop::MobiusMapd psi = diriop::parse_map_spec(opt.psi_spec);

  auto v = diriop::commutator_compact_decision(psi, phi, scan_config(opt));
  std::string evidence_ref;
  if (v.evidence && !opt.out.empty()) {
    evidence_ref = opt.out + "_evidence.json";
    json ev = {{"schema_version", "1"}, {"scan", diriop::io::to_json(*v.evidence)}};
    write_file(evidence_ref, ev.dump(2) + "\n");
    write_file(opt.out + "_evidence.csv", diriop::io::scan_csv(*v.evidence));
  }
  if (opt.trace) {
    diriop::RadiusLadder ladder{opt.k_min, std::min(opt.k_max, 16)};
    auto trace = diriop::commutator_norm_trace(psi, phi, std::complex<double>(1.0), ladder,
                                               {opt.rho, opt.order});
    std::string csv = diriop::io::trace_csv(ladder.deltas<double>(), trace);
    if (opt.out.empty()) {
      std::cout << csv;
    } else {
      write_file(opt.out + "_trace.csv", csv);
    }
  }
  emit(opt, diriop::io::to_json(v, evidence_ref));
  return exit_ok;
}

int cmd_selftest(const Options& opt) {
  diriop::selftest::Config cfg;
  cfg.seed = opt.seed;
  cfg.rho = opt.rho;
  cfg.order = opt.order;
  auto results = diriop::selftest::run_all(cfg);
  int failures = 0;
  for (const auto& r : results) {
    failures += r.failures;
    std::printf("%s %s (checks=%d, failures=%d, skipped=%d)\n", r.passed() ? "PASS" : "FAIL",
                r.name.c_str(), r.checks, r.failures, r.skipped);
  }
  std::printf("%s: %zu properties, %d failing checks\n", failures == 0 ? "OK" : "FAILED",
              results.size(), failures);
  return failures == 0 ? exit_ok : exit_selftest_failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear-fractional composition operators on the Dirichlet space: "
               "classification, difference scans, commutator compactness"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", opt.out, "Output path prefix for artifact files");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--directions", opt.directions, "Boundary direction count")
        ->check(CLI::Range(1, 1 << 16));
    sub->add_option("--kmin", opt.k_min, "Shallowest ladder exponent (delta = 2^-k)")
        ->check(CLI::Range(1, 48));
    sub->add_option("--kmax", opt.k_max, "Deepest ladder exponent")->check(CLI::Range(1, 48));
    sub->add_option("--qthreshold", opt.q_threshold, "Persistence threshold for the scan quantity")
        ->check(CLI::PositiveNumber);
  };
  auto add_oracle = [&](CLI::App* sub) {
    sub->add_option("--rho", opt.rho, "Oracle sampling radius")->check(CLI::Range(0.05, 0.999));
    sub->add_option("--order", opt.order, "Oracle truncation order")->check(CLI::Range(4, 1 << 16));
  };

  CLI::App* classify = app.add_subcommand("classify", "Classify a disk automorphism");
  classify->add_option("--map", opt.map_spec, "Map specification")->required();
  add_common(classify);

  CLI::App* diff_scan =
      app.add_subcommand("diff-scan", "Boundary scan of the difference necessary condition");
  diff_scan->add_option("--phi", opt.phi_spec, "First symbol")->required();
  diff_scan->add_option("--psi", opt.psi_spec, "Second symbol")->required();
  add_grid(diff_scan);
  add_common(diff_scan);

  CLI::App* commutator =
      app.add_subcommand("commutator", "Decide non-trivial compactness of the commutator");
  commutator->add_option("--phi", opt.phi_spec, "Composition symbol")->required();
  commutator->add_option("--psi", opt.psi_spec, "Adjoint symbol")->required();
  commutator->add_flag("--trace", opt.trace,
                       "Also emit a commutator norm trace CSV (ladder capped at k = 16; deeper "
                       "rungs are truncation-limited for the series oracle)");
  add_grid(commutator);
  add_oracle(commutator);
  add_common(commutator);

  CLI::App* selftest = app.add_subcommand("selftest", "Run the module invariant suite");
  selftest->add_option("--seed", opt.seed, "Random seed for property runs");
  add_oracle(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_parse_error;
  }

  try {
    if (app.got_subcommand(classify)) return cmd_classify(opt);
    if (app.got_subcommand(diff_scan)) return cmd_diff_scan(opt);
    if (app.got_subcommand(commutator)) return cmd_commutator(opt);
    if (app.got_subcommand(selftest)) return cmd_selftest(opt);
  } catch (const diriop::SpecParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_parse_error;
  } catch (const diriop::NotAutomorphism& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_not_automorphism;
  } catch (const diriop::NotSelfMap& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_not_self_map;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_parse_error;
  }
  return exit_ok;
}
