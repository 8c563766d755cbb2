#include "roboline/acceptance.hpp"

#include "roboline/adversary.hpp"
#include "roboline/convergence.hpp"
#include "roboline/demon.hpp"
#include "roboline/execution.hpp"
#include "roboline/geometry.hpp"
#include "roboline/harness.hpp"
#include "roboline/population.hpp"
#include "roboline/robogram.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <sstream>
#include <variant>

namespace roboline {

namespace {

struct Check {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;  // keep the first failure
    pass = false;
  }
};

// --- 1. similarity laws ----------------------------------------------------

CriterionResult criterion_similarity_laws() {
  Check c;
  std::mt19937_64 rng(101);
  std::size_t cases = 1000;
  for (std::size_t i = 0; i < cases && c.pass; ++i) {
    Rational k = random_nonzero_rational(rng, 30, 9);
    Rational t = random_rational(rng, 30, 9);
    Rational x = random_rational(rng, 30, 9);
    Rational k2 = random_nonzero_rational(rng, 30, 9);
    Rational t2 = random_rational(rng, 30, 9);
    Similarity s(k, t);
    Similarity s2(k2, t2);

    if (s.inverse().apply(s.apply(x)) != x) c.fail("inverse round-trip (left) failed");
    if (s.apply(s.inverse().apply(x)) != x) c.fail("inverse round-trip (right) failed");
    if (compose(s, s.inverse()) != Similarity::identity()) {
      c.fail("compose(s, s^-1) is not the identity");
    }
    if (compose(s.inverse(), s) != Similarity::identity()) {
      c.fail("compose(s^-1, s) is not the identity");
    }
    if (compose(s, s2).apply(x) != s.apply(s2.apply(x))) {
      c.fail("composition homomorphism failed");
    }
    if (compose(s, Similarity::identity()) != s || compose(Similarity::identity(), s) != s) {
      c.fail("identity is not neutral for composition");
    }
    if (Similarity::identity().apply(x) != x) c.fail("identity moved a point");
    if (s.inverse().inverse() != s) c.fail("double inverse is not the identity map");
  }
  if (c.pass) c.detail = std::to_string(cases) + " seeded triples, all laws exact";
  return {1, "similarity laws (inverse, composition, identity)", c.pass, c.detail};
}

// --- 2. permutation invariance ----------------------------------------------

CriterionResult criterion_algomorph() {
  Check c;
  std::mt19937_64 rng(202);
  std::uint64_t permutations = 0;
  for (std::size_t n = 1; n <= 5 && c.pass; ++n) {
    for (std::size_t good = 0; good <= n && c.pass; ++good) {
      IdentSpace space{good, n - good};
      auto positions = random_positions(rng, space, 50);
      for (const char* name : {"midpoint", "median"}) {
        MorphReport report = check_algomorph(*find_robogram(name), space, positions);
        permutations += report.permutations_tested;
        if (!report.exhaustive) c.fail("expected exhaustive permutations for n <= 5");
        if (!report.pass) {
          c.fail(std::string(name) + " not permutation-invariant on population " +
                 std::to_string(good) + "+" + std::to_string(n - good));
        }
      }
    }
  }

  // The deliberately broken robogram must fail, and with a minimal (single
  // swap) counterexample.
  if (c.pass) {
    IdentSpace space{2, 1};
    std::vector<Position> positions = {Position{{Rational(0), Rational(7)}, {Rational(3)}}};
    MorphReport report = check_algomorph(*find_robogram("first-good"), space, positions);
    if (report.pass || !report.counterexample) {
      c.fail("identifier-reading robogram passed the anonymity check");
    } else {
      const Permutation& sigma = report.counterexample->sigma;
      std::size_t displaced = 0;
      for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (sigma.apply(i) != i) ++displaced;
      }
      if (displaced != 2) c.fail("counterexample permutation is not a single swap");
    }
  }
  if (c.pass) {
    c.detail = "populations up to 5 robots, " + std::to_string(permutations) +
               " permutations; broken robogram caught by a single swap";
  }
  return {2, "robograms invariant under relabelling; broken one caught", c.pass, c.detail};
}

// --- 3. frame independence ---------------------------------------------------

CriterionResult criterion_frame_independence() {
  Check c;
  std::mt19937_64 rng(303);
  for (std::size_t i = 0; i < 100 && c.pass; ++i) {
    IdentSpace space{1 + i % 4, i % 3};
    Position p = random_positions(rng, space, 1)[0];
    for (const char* name : {"midpoint", "median"}) {
      Robogram r = *find_robogram(name);
      std::vector<Rational> scales = {1, 2, Rational(1, 7)};
      if (std::string(name) == "midpoint") scales.push_back(-3);
      GoodPositions reference;
      for (std::size_t s = 0; s < scales.size(); ++s) {
        DemonicAction da;
        da.byz = p.byz;
        da.frames.assign(p.good.size(), scales[s]);
        GoodPositions next = round(r, da, p.good);
        if (s == 0) {
          reference = next;
        } else if (next != reference) {
          c.fail(std::string(name) + ": scale " + scales[s].str() +
                 " changed the outcome of a round");
        }
      }
    }
  }
  if (c.pass) c.detail = "100 positions, scales {1, 2, 1/7} (+ -3 for midpoint) agree";
  return {3, "round output independent of frame scale", c.pass, c.detail};
}

// --- 4. inactivity ------------------------------------------------------------

CriterionResult criterion_inactivity() {
  Check c;
  std::mt19937_64 rng(404);
  for (std::size_t i = 0; i < 100 && c.pass; ++i) {
    IdentSpace space{1 + i % 5, i % 3};
    Position p = random_positions(rng, space, 1)[0];
    for (const char* name : {"midpoint", "median"}) {
      DemonicAction da;
      da.byz = p.byz;
      da.frames.assign(p.good.size(), 0);
      for (std::size_t g = 0; g < p.good.size(); ++g) {
        if (rng() % 2 == 0) da.frames[g] = 1 + static_cast<long long>(rng() % 3);
      }
      GoodPositions next = round(*find_robogram(name), da, p.good);
      for (std::size_t g = 0; g < p.good.size(); ++g) {
        if (da.frames[g].is_zero() && next[g] != p.good[g]) {
          c.fail("a robot with frame 0 moved");
        }
      }
    }
  }
  if (c.pass) c.detail = "100 positions, both robograms: frame 0 robots never move";
  return {4, "frame 0 means the robot stays put", c.pass, c.detail};
}

// --- 5. scheduler audits --------------------------------------------------

CriterionResult criterion_scheduler_audits() {
  Check c;
  GoodPositions gp0 = {Rational(0), Rational(6), Rational(11)};
  Robogram median = *find_robogram("median");

  std::vector<std::unique_ptr<Demon>> fsync_family;
  fsync_family.push_back(fsync_demon({}, 1));
  fsync_family.push_back(fsync_demon({Rational(100)}, 2));
  fsync_family.push_back(fsync_demon({Rational(0), Rational(5)},
                                     std::vector<Rational>{1, Rational(1, 7), -3}));
  fsync_family.push_back(adversary_pull({Rational(1), PullMode::AlternatingSides, 1},
                                        IdentSpace{3, 3}));
  fsync_family.push_back(adversary_pull({Rational(100), PullMode::ChaseEscape, 1},
                                        IdentSpace{3, 4}));
  for (const auto& demon : fsync_family) {
    if (!demon->fully_synchronous()) c.fail(demon->describe() + " lost its fsync claim");
    FairnessReport fair = check_fair(median, *demon, gp0, 50);
    if (!fair.fair()) c.fail(demon->describe() + " failed the fairness audit");
    if (fair.kind != FairnessReport::Kind::StructurallyFair) {
      c.fail(demon->describe() + " should be structurally fair");
    }
    if (!check_fsync(median, *demon, gp0, 50)) {
      c.fail(demon->describe() + " skipped a robot despite claiming full synchrony");
    }
  }

  for (std::uint64_t k = 1; k <= 3 && c.pass; ++k) {
    auto rr = round_robin_demon(3, k, {Rational(50)}, 1);
    KBoundReport kb = check_k_bounded(median, *rr, gp0, k, 60);
    if (!kb.pass) c.fail("roundrobin k=" + std::to_string(k) + " failed its own k bound");
    FairnessReport fair = check_fair(median, *rr, gp0, 60);
    if (fair.kind != FairnessReport::Kind::FairUpToHorizon) {
      c.fail("roundrobin k=" + std::to_string(k) + " audit did not pass at the horizon");
    }
  }
  if (c.pass) {
    c.detail = "5 fsync-claiming demons structurally fair and honest; roundrobin k=1..3 "
               "within their k bounds";
  }
  return {5, "fsync demons pass fairness; roundrobin passes k-bound audit", c.pass, c.detail};
}

// --- 6. positive control ----------------------------------------------------

ConvergenceQuery positive_control_query() {
  ConvergenceQuery q;
  q.epsilon = Rational(1, 100);
  q.horizon = 200;
  q.hold_window = 100;
  return q;
}

CriterionResult criterion_positive_control() {
  Check c;
  Robogram median = *find_robogram("median");
  auto demon = fsync_demon({Rational(100)}, 1);
  GoodPositions gp0 = {Rational(0), Rational(10), Rational(20)};
  ConvergenceQuery q = positive_control_query();

  ScenarioCheck check = check_solution_scenario(median, *demon, gp0, q);
  const auto* a = std::get_if<Attracted>(&check.verdict);
  if (!a) {
    c.fail("expected an attracted verdict, got " + verdict_summary(check.verdict));
  } else {
    if (a->center != Rational(10)) c.fail("center is " + a->center.str() + ", expected 10");
    if (a->entry_round != 1) {
      c.fail("entry round is " + std::to_string(a->entry_round) + ", expected 1");
    }
  }
  if (exit_code(check) != 0) c.fail("exit code should be 0 for the positive control");

  auto rec = detect_recurrence(median, *demon, gp0, q.horizon);
  if (!rec || rec->kind != RecurrenceWitness::Kind::ExactCycle || rec->start_round != 1 ||
      rec->period != 1) {
    c.fail("expected ExactCycle(start 1, period 1) once the swarm collapses onto 10");
  }
  if (c.pass) c.detail = "attracted at center 10 from round 1; exact cycle of period 1";
  return {6, "positive control: median gathers 3 good robots despite 1 byz", c.pass, c.detail};
}

// --- 7 & 8. adversarial witnesses -------------------------------------------

ConvergenceQuery witness_query() {
  ConvergenceQuery q;
  q.epsilon = Rational(1, 10);
  q.horizon = 1000;
  q.hold_window = 100;
  return q;
}

CriterionResult criterion_pull_witness() {
  Check c;
  IdentSpace space{2, 2};
  GoodPositions gp0 = {Rational(0), Rational(4)};
  ConvergenceQuery q = witness_query();
  auto grid = pull_grid(space, {Rational(1), Rational(100)},
                        {PullMode::AlternatingSides, PullMode::ChaseEscape});

  std::string summaries;
  for (const char* name : {"midpoint", "median"}) {
    Robogram r = *find_robogram(name);
    FalsifyResult result = falsify(r, gp0, grid, q);
    if (!result.found()) {
      c.fail(std::string(name) + ": no witness found over the pull grid");
      continue;
    }
    const auto& w = std::get<NonConvergenceWitness>(result.witness->verdict);
    if (!result.witness->theorem_relevant) {
      c.fail(std::string(name) + ": witness is not theorem-relevant");
    }
    if (!result.witness->fairness.fair() || !result.witness->fsync_holds.value_or(false)) {
      c.fail(std::string(name) + ": pull demon failed its own audits");
    }
    // Replay the recurrence one more time here, independently of falsify's
    // internal revalidation.
    auto point = std::find_if(grid.begin(), grid.end(), [&](const DemonGridPoint& p) {
      return p.label == result.witness_label;
    });
    auto fresh = point->make();
    if (!revalidate_recurrence(r, *fresh, gp0, w.recurrence)) {
      c.fail(std::string(name) + ": witness failed replay");
    }
    if (exit_code(*result.witness) != 10) c.fail("witness exit code is not 10");
    summaries += std::string(name) + ": " + result.witness_label + " (" +
                 verdict_summary(result.witness->verdict) + "); ";
  }
  if (c.pass) c.detail = summaries;
  return {7, "pull adversary defeats both robograms with 2 good vs 2 byz", c.pass, c.detail};
}

CriterionResult criterion_split_witness() {
  Check c;
  IdentSpace space{2, 1};
  GoodPositions gp0 = {Rational(0), Rational(4)};
  ConvergenceQuery q = witness_query();
  Robogram median = *find_robogram("median");
  auto grid = split_grid(space, {Rational(100)}, 2);

  FalsifyResult result = falsify(median, gp0, grid, q);
  if (!result.found()) {
    c.fail("no witness found for the split adversary");
  } else {
    const ScenarioCheck& check = *result.witness;
    const auto& w = std::get<NonConvergenceWitness>(check.verdict);
    if (!check.theorem_relevant) c.fail("witness is not theorem-relevant");
    if (check.fairness.kind != FairnessReport::Kind::FairUpToHorizon) {
      c.fail("split demon's fairness must be audited on the run, not assumed");
    }
    if (!check.k_bound || !check.k_bound->pass || check.k_bound->k != 2) {
      c.fail("split demon is not 2-bounded on this run");
    }
    if (w.recurrence.kind != RecurrenceWitness::Kind::ExactCycle) {
      c.fail("expected an exact cycle (the split construction freezes the swarm)");
    }
    if (w.why != NonConvergenceWitness::Why::SpreadExceeds2Eps) {
      c.fail("expected a spread justification");
    }
    auto fresh = grid.front().make();
    if (!revalidate_recurrence(median, *fresh, gp0, w.recurrence)) {
      c.fail("witness failed replay");
    }
    if (c.pass) c.detail = verdict_summary(check.verdict) + "; fair up to horizon, 2-bounded";
  }
  return {8, "split adversary defeats median with 2 good vs 1 byz, 2-bounded fair",
          c.pass, c.detail};
}

// --- 9. regime guard ---------------------------------------------------------

CriterionResult criterion_regime_guard() {
  Check c;
  IdentSpace space{3, 1};
  GoodPositions gp0 = {Rational(0), Rational(10), Rational(20)};
  ConvergenceQuery q = positive_control_query();
  Robogram median = *find_robogram("median");

  auto grid = pull_grid(space, {Rational(1), Rational(100)},
                        {PullMode::AlternatingSides, PullMode::ChaseEscape});
  FalsifyResult result = falsify(median, gp0, grid, q);
  if (result.found()) {
    c.fail("pull fabricated a witness outside its regime (byz < good)");
  }
  for (const FalsifyAttempt& a : result.attempts) {
    if (a.outcome != FalsifyAttempt::Outcome::Rejected) {
      c.fail(a.label + " was not rejected despite byz < good");
    }
  }

  auto demon = fsync_demon({Rational(100)}, 1);
  ScenarioCheck control = check_solution_scenario(median, *demon, gp0, q);
  if (!std::holds_alternative<Attracted>(control.verdict)) {
    c.fail("positive control no longer attracted in the same population");
  }
  if (c.pass) {
    c.detail = "all 4 grid points rejected (requires byz >= good); control still attracted";
  }
  return {9, "no fabricated witness when the population is out of regime", c.pass, c.detail};
}

// --- 10. determinism ----------------------------------------------------------

CriterionResult criterion_determinism() {
  Check c;
  IdentSpace space{2, 2};
  GoodPositions gp0 = {Rational(0), Rational(4)};
  ConvergenceQuery q = witness_query();
  Robogram midpoint = *find_robogram("midpoint");
  auto grid = pull_grid(space, {Rational(1), Rational(100)},
                        {PullMode::AlternatingSides, PullMode::ChaseEscape});

  auto run_once = [&](unsigned jobs) {
    FalsifyResult result = falsify(midpoint, gp0, grid, q, jobs);
    return falsify_json(result, "midpoint", q).dump();
  };
  std::string first = run_once(1);
  std::string second = run_once(1);
  if (first != second) c.fail("two identical falsify runs produced different verdicts");
  if (run_once(4) != first) c.fail("parallel falsify changed the verdict");

  auto trace_once = [&] {
    PullAdversaryConfig config{Rational(1), PullMode::ChaseEscape, 1};
    auto demon = adversary_pull(config, space);
    Trace t = simulate(midpoint, *demon, gp0, q.horizon);
    std::ostringstream os;
    write_trace_csv(t, os);
    return os.str();
  };
  if (trace_once() != trace_once()) c.fail("two identical simulations produced different traces");

  if (c.pass) c.detail = "falsify verdicts and traces byte-identical across reruns and jobs";
  return {10, "byte-identical traces and verdicts on reruns", c.pass, c.detail};
}

// --- 11. independent oracle ---------------------------------------------------

// Direct-substitution evaluator, deliberately built from scratch: plain
// boost rationals, no Similarity/Position/round machinery.  For robot at t
// with frame k != 0 the destination is t + r({k * (x - t) : x}) / k, with the
// robogram formulas inlined on the sorted local values.
namespace oracle {

using Q = boost::multiprecision::cpp_rational;

Q eval_robogram(const std::string& name, std::vector<Q> values) {
  std::sort(values.begin(), values.end());
  if (name == "midpoint") return (values.front() + values.back()) / 2;
  return values[(values.size() - 1) / 2];  // lower median
}

std::vector<Q> step(const std::string& name, const std::vector<Q>& good,
                    const std::vector<Q>& byz, const std::vector<Q>& frames) {
  std::vector<Q> next = good;
  for (std::size_t g = 0; g < good.size(); ++g) {
    const Q& k = frames[g];
    if (k == 0) continue;
    const Q& t = good[g];
    std::vector<Q> local;
    for (const Q& x : good) local.push_back(k * (x - t));
    for (const Q& x : byz) local.push_back(k * (x - t));
    next[g] = t + eval_robogram(name, local) / k;
  }
  return next;
}

Q to_q(const Rational& r) { return Q(r.numerator(), r.denominator()); }

}  // namespace oracle

CriterionResult criterion_oracle_equivalence() {
  Check c;
  std::mt19937_64 rng(1111);
  const Rational frame_choices[] = {Rational(0), Rational(1), Rational(2), Rational(1, 7),
                                    Rational(-3)};
  for (std::size_t i = 0; i < 100 && c.pass; ++i) {
    IdentSpace space{1 + i % 4, i % 3};
    Position p = random_positions(rng, space, 1)[0];
    std::string name = (i % 2 == 0) ? "midpoint" : "median";

    DemonicAction da;
    da.byz = p.byz;
    for (std::size_t g = 0; g < p.good.size(); ++g) {
      da.frames.push_back(frame_choices[rng() % 5]);
    }
    GoodPositions got = round(*find_robogram(name), da, p.good);

    std::vector<oracle::Q> qgood, qbyz, qframes;
    for (const Location& x : p.good) qgood.push_back(oracle::to_q(x));
    for (const Location& x : p.byz) qbyz.push_back(oracle::to_q(x));
    for (const Rational& k : da.frames) qframes.push_back(oracle::to_q(k));
    std::vector<oracle::Q> want = oracle::step(name, qgood, qbyz, qframes);

    for (std::size_t g = 0; g < got.size(); ++g) {
      if (oracle::to_q(got[g]) != want[g]) {
        c.fail("round disagrees with the direct-substitution oracle (case " +
               std::to_string(i) + ", robot " + std::to_string(g) + ")");
      }
    }
  }
  if (c.pass) c.detail = "100 seeded instances, both robograms, mixed frames: exact match";
  return {11, "round matches an independently coded evaluator", c.pass, c.detail};
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite() {
  return {
      criterion_similarity_laws(),
      criterion_algomorph(),
      criterion_frame_independence(),
      criterion_inactivity(),
      criterion_scheduler_audits(),
      criterion_positive_control(),
      criterion_pull_witness(),
      criterion_split_witness(),
      criterion_regime_guard(),
      criterion_determinism(),
      criterion_oracle_equivalence(),
  };
}

}  // namespace roboline
