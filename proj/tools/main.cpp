// Command-line front end: simulate scenarios, audit schedulers, check
// robogram anonymity, search for non-convergence witnesses, run the
// self-test suite.  Exit codes: 0 attracted / pass, 10 theorem-relevant
// witness, 20 inconclusive, 30 fairness violation, 1 failed check,
// 2 usage or input errors.

#include "roboline/harness.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

std::optional<roboline::Rational> parse_rational_flag(const std::string& text,
                                                      const char* flag) {
  auto r = roboline::Rational::parse(text);
  if (!r) std::cerr << "error: " << flag << " expects a rational like 1/10, got \""
                    << text << "\"\n";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simulator and property checker for byzantine-tolerant robot "
               "protocols on the rational line"};
  app.require_subcommand(1);

  // run ----------------------------------------------------------------
  auto* run = app.add_subcommand("run", "Simulate a scenario and decide convergence");
  roboline::RunOptions run_options;
  std::string run_epsilon;
  std::uint64_t run_horizon = 0, run_hold = 0;
  run->add_option("--scenario", run_options.scenario_path, "Scenario file")->required();
  run->add_option("--trace", run_options.trace_path, "Write the round-by-round trace here");
  run->add_option("--trace-format", run_options.trace_format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  run->add_option("--verdict", run_options.verdict_path, "Write the verdict JSON here");
  auto* run_horizon_opt = run->add_option("--horizon", run_horizon, "Override the horizon");
  auto* run_hold_opt =
      run->add_option("--hold-window", run_hold, "Override the hold window");
  run->add_option("--epsilon", run_epsilon, "Override epsilon (rational, e.g. 1/100)");

  // verify-morph ---------------------------------------------------------
  auto* morph = app.add_subcommand("verify-morph",
                                   "Check a robogram only reads the observation multiset");
  roboline::VerifyMorphOptions morph_options;
  morph->add_option("--robogram", morph_options.robogram, "midpoint, median or first-good")
      ->required();
  morph->add_option("--good", morph_options.good_count, "Good robot count");
  morph->add_option("--byz", morph_options.byz_count, "Byzantine robot count");
  morph->add_option("--samples", morph_options.samples, "Random positions to test");
  morph->add_option("--perm-samples", morph_options.permutation_samples,
                    "Permutations per position when too many to enumerate");
  morph->add_option("--seed", morph_options.seed, "RNG seed");

  // falsify ---------------------------------------------------------------
  auto* falsify = app.add_subcommand("falsify",
                                     "Search an adversary grid for a non-convergence witness");
  roboline::FalsifyOptions falsify_options;
  std::vector<std::string> falsify_deltas;
  falsify->add_option("--scenario", falsify_options.scenario_path,
                      "Scenario file (population, start, robogram, query)")
      ->required();
  falsify->add_option("--family", falsify_options.family, "pull or split")
      ->check(CLI::IsMember({"pull", "split"}));
  falsify->add_option("--deltas", falsify_deltas, "Byzantine offsets to try")
      ->delimiter(',');
  falsify->add_option("--modes", falsify_options.modes, "Pull modes to try (alt, chase)")
      ->delimiter(',');
  falsify->add_option("--k", falsify_options.k_bound, "k bound for the split family");
  falsify->add_option("--verdict", falsify_options.verdict_path, "Write the result JSON here");
  falsify->add_option("--jobs", falsify_options.jobs, "Evaluate grid points in parallel");

  // check-fairness ----------------------------------------------------------
  auto* fairness = app.add_subcommand("check-fairness", "Audit a scenario's scheduler");
  roboline::CheckFairnessOptions fairness_options;
  std::uint64_t fairness_horizon = 0;
  fairness->add_option("--scenario", fairness_options.scenario_path, "Scenario file")
      ->required();
  auto* fairness_horizon_opt =
      fairness->add_option("--horizon", fairness_horizon, "Audit horizon");

  // selftest ------------------------------------------------------------------
  app.add_subcommand("selftest", "Run the acceptance criteria");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    if (run_horizon_opt->count()) run_options.horizon = run_horizon;
    if (run_hold_opt->count()) run_options.hold_window = run_hold;
    if (!run_epsilon.empty()) {
      auto eps = parse_rational_flag(run_epsilon, "--epsilon");
      if (!eps) return 2;
      run_options.epsilon = *eps;
    }
    return roboline::cmd_run(run_options, std::cout, std::cerr);
  }
  if (morph->parsed()) {
    return roboline::cmd_verify_morph(morph_options, std::cout, std::cerr);
  }
  if (falsify->parsed()) {
    for (const std::string& d : falsify_deltas) {
      auto r = parse_rational_flag(d, "--deltas");
      if (!r) return 2;
      falsify_options.deltas.push_back(*r);
    }
    return roboline::cmd_falsify(falsify_options, std::cout, std::cerr);
  }
  if (fairness->parsed()) {
    if (fairness_horizon_opt->count()) fairness_options.horizon = fairness_horizon;
    return roboline::cmd_check_fairness(fairness_options, std::cout, std::cerr);
  }
  return roboline::cmd_selftest(std::cout, std::cerr);
}
