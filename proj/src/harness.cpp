#include "roboline/harness.hpp"

#include "roboline/acceptance.hpp"
#include "roboline/execution.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

namespace roboline {

Rational random_rational(std::mt19937_64& rng, long long num_range, long long den_range) {
  long long span = 2 * num_range + 1;
  long long num = static_cast<long long>(rng() % static_cast<unsigned long long>(span)) -
                  num_range;
  long long den =
      1 + static_cast<long long>(rng() % static_cast<unsigned long long>(den_range));
  return Rational(BigInt(num), BigInt(den));
}

Rational random_nonzero_rational(std::mt19937_64& rng, long long num_range,
                                 long long den_range) {
  for (;;) {
    Rational r = random_rational(rng, num_range, den_range);
    if (!r.is_zero()) return r;
  }
}

std::vector<Position> random_positions(std::mt19937_64& rng, const IdentSpace& space,
                                       std::size_t count, long long num_range,
                                       long long den_range) {
  std::vector<Position> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Position p;
    for (std::size_t g = 0; g < space.good_count; ++g) {
      p.good.push_back(random_rational(rng, num_range, den_range));
    }
    for (std::size_t b = 0; b < space.byz_count; ++b) {
      p.byz.push_back(random_rational(rng, num_range, den_range));
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

nlohmann::json fairness_json(const FairnessReport& report) {
  nlohmann::json j;
  switch (report.kind) {
    case FairnessReport::Kind::StructurallyFair:
      j["kind"] = "structurally_fair";
      break;
    case FairnessReport::Kind::FairUpToHorizon:
      j["kind"] = "fair_up_to_horizon";
      break;
    case FairnessReport::Kind::ViolationAt:
      j["kind"] = "violation";
      j["violation_round"] = report.violation_round;
      j["robot"] = report.robot;
      break;
  }
  j["horizon"] = report.horizon;
  j["max_gap"] = report.max_gap;
  return j;
}

nlohmann::json check_json(const ScenarioCheck& check) {
  nlohmann::json j;
  j["demon"] = check.demon_description;
  j["rounds_simulated"] = check.rounds;
  if (const auto* a = std::get_if<Attracted>(&check.verdict)) {
    j["verdict"] = "attracted";
    j["attracted"] = {{"center", a->center.str()},
                      {"entry_round", a->entry_round},
                      {"epsilon", a->epsilon.str()},
                      {"horizon", a->horizon}};
  } else if (const auto* w = std::get_if<NonConvergenceWitness>(&check.verdict)) {
    j["verdict"] = "non_convergence_witness";
    nlohmann::json wj;
    wj["kind"] = w->recurrence.kind == RecurrenceWitness::Kind::ExactCycle
                     ? "exact_cycle"
                     : "cycle_modulo_translation";
    wj["start_round"] = w->recurrence.start_round;
    wj["period"] = w->recurrence.period;
    wj["shift"] = w->recurrence.shift.str();
    wj["epsilon"] = w->epsilon.str();
    if (w->why == NonConvergenceWitness::Why::SpreadExceeds2Eps) {
      wj["justification"] = "spread_exceeds_2eps";
      wj["spread_round"] = w->spread_round;
      wj["spread"] = w->spread.str();
    } else {
      wj["justification"] = "nonzero_drift";
    }
    wj["theorem_relevant"] = check.theorem_relevant;
    wj["void"] = check.witness_void;
    j["witness"] = wj;
  } else {
    j["verdict"] = "inconclusive";
    j["inconclusive"] = {{"horizon", std::get<Inconclusive>(check.verdict).horizon}};
  }
  j["fairness"] = fairness_json(check.fairness);
  if (check.fsync_holds) j["fsync_holds"] = *check.fsync_holds;
  if (check.k_bound) {
    nlohmann::json kj;
    kj["k"] = check.k_bound->k;
    kj["pass"] = check.k_bound->pass;
    if (check.k_bound->violation) {
      kj["violation"] = {{"robot", check.k_bound->violation->robot},
                         {"other", check.k_bound->violation->other},
                         {"count", check.k_bound->violation->count},
                         {"round", check.k_bound->violation->round}};
    }
    j["k_bound"] = kj;
  }
  j["exit_code"] = exit_code(check);
  return j;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    err << "error: cannot open " << path << " for writing\n";
    return false;
  }
  out << content;
  return true;
}

void print_errors(const std::vector<ScenarioError>& errors, const std::string& path,
                  std::ostream& err) {
  for (const ScenarioError& e : errors) {
    err << path << ':';
    if (e.line) err << e.line << ':';
    if (!e.field.empty()) err << ' ' << e.field << ':';
    err << ' ' << e.message << '\n';
  }
  err << "error: " << errors.size() << " problem" << (errors.size() == 1 ? "" : "s")
      << " in scenario\n";
}

struct LoadedScenario {
  Scenario scenario;
  Robogram robogram;
  std::unique_ptr<Demon> demon;
};

std::optional<LoadedScenario> load_scenario(const std::string& path, std::ostream& err,
                                            bool build = true) {
  auto text = read_file(path);
  if (!text) {
    err << "error: cannot read scenario file " << path << '\n';
    return std::nullopt;
  }
  ScenarioParseResult parsed = parse_scenario(*text);
  if (!parsed.ok()) {
    print_errors(parsed.errors, path, err);
    return std::nullopt;
  }
  LoadedScenario out{std::move(*parsed.scenario), Robogram{}, nullptr};
  out.robogram = resolve_robogram(out.scenario);
  if (build) {
    try {
      out.demon = build_demon(out.scenario);
    } catch (const std::exception& e) {
      err << "error: cannot build demon: " << e.what() << '\n';
      return std::nullopt;
    }
  }
  return out;
}

}  // namespace

nlohmann::json verdict_json(const ScenarioCheck& check, const std::string& robogram,
                            const ConvergenceQuery& q) {
  nlohmann::json j = check_json(check);
  j["robogram"] = robogram;
  j["epsilon"] = q.epsilon.str();
  j["horizon"] = q.horizon;
  j["hold_window"] = q.hold_window;
  return j;
}

nlohmann::json falsify_json(const FalsifyResult& result, const std::string& robogram,
                            const ConvergenceQuery& q) {
  nlohmann::json j;
  j["robogram"] = robogram;
  j["epsilon"] = q.epsilon.str();
  j["horizon"] = q.horizon;
  j["hold_window"] = q.hold_window;
  j["found"] = result.found();
  nlohmann::json attempts = nlohmann::json::array();
  for (const FalsifyAttempt& a : result.attempts) {
    const char* outcome = nullptr;
    switch (a.outcome) {
      case FalsifyAttempt::Outcome::Witness: outcome = "witness"; break;
      case FalsifyAttempt::Outcome::WitnessVoid: outcome = "witness_void"; break;
      case FalsifyAttempt::Outcome::Attracted: outcome = "attracted"; break;
      case FalsifyAttempt::Outcome::Inconclusive: outcome = "inconclusive"; break;
      case FalsifyAttempt::Outcome::Rejected: outcome = "rejected"; break;
    }
    attempts.push_back({{"demon", a.label}, {"outcome", outcome}, {"detail", a.detail}});
  }
  j["attempts"] = attempts;
  if (result.found()) {
    j["witness_demon"] = result.witness_label;
    j["witness"] = verdict_json(*result.witness, robogram, q);
  }
  return j;
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  auto loaded = load_scenario(options.scenario_path, err);
  if (!loaded) return 2;
  ConvergenceQuery q = loaded->scenario.query;
  if (options.horizon) q.horizon = *options.horizon;
  if (options.hold_window) q.hold_window = *options.hold_window;
  if (options.epsilon) {
    if (options.epsilon->sign() <= 0) {
      err << "error: epsilon must be positive\n";
      return 2;
    }
    q.epsilon = *options.epsilon;
  }

  Trace trace = simulate(loaded->robogram, *loaded->demon, loaded->scenario.good, q.horizon);
  ScenarioCheck check = check_recorded(loaded->robogram, *loaded->demon, trace, q);

  if (!options.trace_path.empty()) {
    std::ostringstream ss;
    if (options.trace_format == "jsonl") {
      write_trace_jsonl(trace, ss);
    } else if (options.trace_format == "csv") {
      write_trace_csv(trace, ss);
    } else {
      err << "error: unknown trace format " << options.trace_format << '\n';
      return 2;
    }
    if (!write_file(options.trace_path, ss.str(), err)) return 2;
  }

  nlohmann::json verdict = verdict_json(check, loaded->scenario.robogram, q);
  if (!options.verdict_path.empty()) {
    if (!write_file(options.verdict_path, verdict.dump(2) + "\n", err)) return 2;
  }
  out << verdict.dump(2) << '\n';
  return exit_code(check);
}

int cmd_verify_morph(const VerifyMorphOptions& options, std::ostream& out,
                     std::ostream& err) {
  auto robogram = find_robogram(options.robogram);
  if (!robogram) {
    err << "error: unknown robogram \"" << options.robogram << "\"\n";
    return 2;
  }
  IdentSpace space{options.good_count, options.byz_count};
  if (space.total() == 0) {
    err << "error: empty population\n";
    return 2;
  }
  std::mt19937_64 rng(options.seed);
  std::vector<Position> positions = random_positions(rng, space, options.samples);
  MorphReport report = check_algomorph(*robogram, space, positions,
                                       options.permutation_samples, options.seed + 1);
  out << "robogram " << options.robogram << " on " << space.good_count << " good + "
      << space.byz_count << " byz\n";
  out << "positions tested:    " << report.positions_tested << '\n';
  out << "permutations tested: " << report.permutations_tested
      << (report.exhaustive ? " (exhaustive)" : " (sampled)") << '\n';
  if (report.pass) {
    out << "result: pass (robogram reads only the observation multiset)\n";
    return 0;
  }
  const MorphCounterexample& ce = *report.counterexample;
  out << "result: FAIL -- output depends on robot identities\n";
  out << "  position good=[";
  for (std::size_t i = 0; i < ce.position.good.size(); ++i) {
    out << (i ? ", " : "") << ce.position.good[i].str();
  }
  out << "] byz=[";
  for (std::size_t i = 0; i < ce.position.byz.size(); ++i) {
    out << (i ? ", " : "") << ce.position.byz[i].str();
  }
  out << "]\n  relabelling [";
  for (std::size_t i = 0; i < ce.sigma.size(); ++i) {
    out << (i ? ", " : "") << ce.sigma.apply(i);
  }
  out << "]\n  before: " << ce.expected.str() << "  after: " << ce.got.str() << '\n';
  return 1;
}

int cmd_falsify(const FalsifyOptions& options, std::ostream& out, std::ostream& err) {
  auto loaded = load_scenario(options.scenario_path, err, /*build=*/false);
  if (!loaded) return 2;
  const Scenario& s = loaded->scenario;

  std::vector<DemonGridPoint> grid;
  if (options.family == "pull") {
    std::vector<Rational> deltas = options.deltas;
    if (deltas.empty()) deltas = {Rational(1), Rational(100)};
    std::vector<PullMode> modes;
    for (const std::string& m : options.modes) {
      if (m == "alt") {
        modes.push_back(PullMode::AlternatingSides);
      } else if (m == "chase") {
        modes.push_back(PullMode::ChaseEscape);
      } else {
        err << "error: unknown pull mode \"" << m << "\"\n";
        return 2;
      }
    }
    if (modes.empty()) modes = {PullMode::AlternatingSides, PullMode::ChaseEscape};
    grid = pull_grid(s.space, deltas, modes);
  } else if (options.family == "split") {
    std::vector<Rational> deltas = options.deltas;
    if (deltas.empty()) deltas = {Rational(100)};
    grid = split_grid(s.space, deltas, options.k_bound);
  } else {
    err << "error: unknown adversary family \"" << options.family << "\"\n";
    return 2;
  }

  FalsifyResult result;
  try {
    result = falsify(loaded->robogram, s.good, grid, s.query, options.jobs);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  nlohmann::json j = falsify_json(result, s.robogram, s.query);
  if (!options.verdict_path.empty()) {
    if (!write_file(options.verdict_path, j.dump(2) + "\n", err)) return 2;
  }
  out << j.dump(2) << '\n';
  return result.found() ? 10 : 20;
}

int cmd_check_fairness(const CheckFairnessOptions& options, std::ostream& out,
                       std::ostream& err) {
  auto loaded = load_scenario(options.scenario_path, err);
  if (!loaded) return 2;
  std::uint64_t horizon = options.horizon.value_or(loaded->scenario.query.horizon);

  Trace trace =
      simulate(loaded->robogram, *loaded->demon, loaded->scenario.good, horizon);
  FairnessReport report = audit_fairness(trace, *loaded->demon);
  nlohmann::json j;
  j["demon"] = loaded->demon->describe();
  j["fairness"] = fairness_json(report);
  if (loaded->demon->fully_synchronous()) j["fsync_holds"] = audit_fsync(trace);
  if (auto k = loaded->demon->k_bound()) {
    KBoundReport kb = audit_k_bounded(trace, *k);
    j["k_bound"] = {{"k", kb.k}, {"pass", kb.pass}};
  }
  out << j.dump(2) << '\n';
  return report.fair() ? 0 : 30;
}

int cmd_selftest(std::ostream& out, std::ostream& err) {
  auto started = std::chrono::steady_clock::now();
  std::vector<CriterionResult> results = run_acceptance_suite();
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);

  bool all_pass = true;
  for (const CriterionResult& r : results) {
    out << (r.pass ? "[ ok ]" : "[FAIL]") << ' ' << r.number << ". " << r.name << '\n';
    if (!r.pass) {
      all_pass = false;
      err << "  criterion " << r.number << " failed: " << r.detail << '\n';
    }
  }
  out << "selftest wall time: " << elapsed.count() << " ms (budget 30000 ms)\n";
  if (elapsed.count() >= 30000) {
    err << "selftest exceeded its runtime budget\n";
    all_pass = false;
  }
  out << (all_pass ? "selftest: all criteria pass\n" : "selftest: FAILURES\n");
  return all_pass ? 0 : 1;
}

}  // namespace roboline
