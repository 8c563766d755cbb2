#include "roboline/convergence.hpp"

#include "roboline/adversary.hpp"

#include <doctest.h>

#include <random>

using namespace roboline;

namespace {

// Activates only good robot 0 with frame 1 and pins byzantine robots: unfair
// on purpose, to exercise the witness-voiding path.
class StarveDemon final : public Demon {
 public:
  explicit StarveDemon(std::vector<Location> byz) : byz_(std::move(byz)) {}
  DemonicAction step(const GoodPositions& gp) override {
    DemonicAction da;
    da.byz = byz_;
    da.frames.assign(gp.size(), 0);
    if (!gp.empty()) da.frames[0] = 1;
    return da;
  }
  std::string state_key() const override { return ""; }
  void reset() override {}
  std::string describe() const override { return "starve"; }

 private:
  std::vector<Location> byz_;
};

Trace positive_control_trace(std::uint64_t rounds) {
  Robogram median = *find_robogram("median");
  auto demon = fsync_demon({Rational(100)}, 1);
  return simulate(median, *demon, {Rational(0), Rational(10), Rational(20)}, rounds);
}

ConvergenceQuery query(const char* eps, std::uint64_t horizon, std::uint64_t hold) {
  ConvergenceQuery q;
  q.epsilon = Rational(eps);
  q.horizon = horizon;
  q.hold_window = hold;
  return q;
}

}  // namespace

TEST_CASE("check_imprisoned: window semantics and exact boundaries") {
  Trace trace = positive_control_trace(60);
  std::span<const GoodPositions> all(trace.positions);

  // From round 1 on everyone sits exactly on 10: even radius 0 works.
  CHECK(check_imprisoned(Rational(10), Rational(0), all.subspan(1), 50));
  // Round 0 has robots 10 away from the center.
  CHECK_FALSE(check_imprisoned(Rational(10), Rational(0), all, 50));
  CHECK(check_imprisoned(Rational(10), Rational(10), all, 50));
  // The boundary is inclusive: radius just below 10 fails at round 0.
  CHECK_FALSE(check_imprisoned(Rational(10), Rational("99/10"), all, 50));
  // Too short a prefix can never confirm a window.
  CHECK_FALSE(check_imprisoned(Rational(10), Rational(100), all.subspan(0, 3), 5));
}

TEST_CASE("check_attracted finds the earliest working entry round") {
  Trace trace = positive_control_trace(200);
  Verdict v = check_attracted(query("1/100", 200, 100), trace, false);
  const auto* a = std::get_if<Attracted>(&v);
  REQUIRE(a != nullptr);
  CHECK(a->center == Rational(10));
  CHECK(a->entry_round == 1);
  CHECK(a->epsilon == Rational(1, 100));
  CHECK(a->horizon == 200);
}

TEST_CASE("attraction is monotone in epsilon") {
  Trace trace = positive_control_trace(200);
  std::mt19937_64 rng(47);
  for (int i = 0; i < 20; ++i) {
    // Any epsilon at least as large keeps the verdict (same center works).
    Rational eps = Rational(1, 100) + Rational(static_cast<long long>(rng() % 50), 7);
    Verdict v = check_attracted(query("1/100", 200, 100), trace, false);
    const auto* tight = std::get_if<Attracted>(&v);
    REQUIRE(tight != nullptr);
    ConvergenceQuery wider = query("1/100", 200, 100);
    wider.epsilon = eps;
    Verdict w = check_attracted(wider, trace, false);
    const auto* loose = std::get_if<Attracted>(&w);
    REQUIRE(loose != nullptr);
    CHECK(loose->entry_round <= tight->entry_round);
    // The tight center still imprisons at the wider radius.
    CHECK(check_imprisoned(tight->center, eps,
                           std::span<const GoodPositions>(trace.positions)
                               .subspan(tight->entry_round),
                           200 - tight->entry_round));
  }
}

TEST_CASE("a frozen spread-out cycle yields a spread witness") {
  Robogram median = *find_robogram("median");
  auto demon = adversary_split({2, Rational(100), 1}, IdentSpace{2, 1});
  GoodPositions gp0 = {Rational(0), Rational(4)};
  Trace trace = simulate(median, *demon, gp0, 300);
  Verdict v = check_attracted(query("1/10", 300, 50), trace, true);
  const auto* w = std::get_if<NonConvergenceWitness>(&v);
  REQUIRE(w != nullptr);
  CHECK(w->why == NonConvergenceWitness::Why::SpreadExceeds2Eps);
  CHECK(w->recurrence.kind == RecurrenceWitness::Kind::ExactCycle);
  CHECK(w->recurrence.start_round == 0);
  CHECK(w->recurrence.period == 4);  // two phases of k = 2 rounds
  CHECK(w->spread == Rational(4));
  CHECK(w->spread_round == 0);
}

TEST_CASE("a drifting cycle yields a drift witness") {
  Robogram midpoint = *find_robogram("midpoint");
  auto demon = adversary_pull({Rational(1), PullMode::ChaseEscape, 1}, IdentSpace{2, 2});
  GoodPositions gp0 = {Rational(0), Rational(4)};
  Trace trace = simulate(midpoint, *demon, gp0, 400);
  Verdict v = check_attracted(query("1/10", 400, 100), trace, true);
  const auto* w = std::get_if<NonConvergenceWitness>(&v);
  REQUIRE(w != nullptr);
  CHECK(w->why == NonConvergenceWitness::Why::NonzeroDrift);
  CHECK(w->recurrence.shift == Rational(1, 2));
}

TEST_CASE("a tight cycle is inconclusive: recurrence alone is not enough") {
  // Alternating pull with a small delta bounces the merged swarm between two
  // points 1/2 apart: an exact cycle, but every configuration is a single
  // point (spread 0), so it neither converges at eps = 1/10 nor refutes.
  Robogram midpoint = *find_robogram("midpoint");
  auto demon =
      adversary_pull({Rational(1), PullMode::AlternatingSides, 1}, IdentSpace{2, 2});
  GoodPositions gp0 = {Rational(0), Rational(4)};
  Trace trace = simulate(midpoint, *demon, gp0, 400);
  Verdict v = check_attracted(query("1/10", 400, 100), trace, true);
  const auto* inconclusive = std::get_if<Inconclusive>(&v);
  REQUIRE(inconclusive != nullptr);
  CHECK(inconclusive->horizon == 400);

  // ... but with a generous epsilon the same run counts as attracted.
  Verdict wide = check_attracted(query("2", 400, 100), trace, true);
  CHECK(std::holds_alternative<Attracted>(wide));
}

TEST_CASE("scenario check: positive control exits 0") {
  Robogram median = *find_robogram("median");
  auto demon = fsync_demon({Rational(100)}, 1);
  ScenarioCheck check = check_solution_scenario(
      median, *demon, {Rational(0), Rational(10), Rational(20)}, query("1/100", 200, 100));
  CHECK(std::holds_alternative<Attracted>(check.verdict));
  CHECK(check.fairness.kind == FairnessReport::Kind::StructurallyFair);
  REQUIRE(check.fsync_holds.has_value());
  CHECK(*check.fsync_holds);
  CHECK_FALSE(check.witness_void);
  CHECK_FALSE(check.theorem_relevant);
  CHECK(exit_code(check) == 0);
}

TEST_CASE("scenario check: relevant witness exits 10") {
  Robogram median = *find_robogram("median");
  auto demon = adversary_split({2, Rational(100), 1}, IdentSpace{2, 1});
  ScenarioCheck check = check_solution_scenario(median, *demon, {Rational(0), Rational(4)},
                                                query("1/10", 300, 50));
  CHECK(check.theorem_relevant);
  CHECK_FALSE(check.witness_void);
  CHECK(check.fairness.kind == FairnessReport::Kind::FairUpToHorizon);
  REQUIRE(check.k_bound.has_value());
  CHECK(check.k_bound->pass);
  CHECK(exit_code(check) == 10);
}

TEST_CASE("scenario check: inconclusive exits 20") {
  Robogram midpoint = *find_robogram("midpoint");
  auto demon =
      adversary_pull({Rational(1), PullMode::AlternatingSides, 1}, IdentSpace{2, 2});
  ScenarioCheck check = check_solution_scenario(midpoint, *demon, {Rational(0), Rational(4)},
                                                query("1/10", 400, 100));
  CHECK(std::holds_alternative<Inconclusive>(check.verdict));
  CHECK(exit_code(check) == 20);
}

TEST_CASE("scenario check: an unfair run voids its witness and exits 30") {
  // The starving demon freezes a spread-out configuration (median keeps
  // robot 0 on its own spot), which looks like a perfect witness -- but
  // robot 1 is never activated, so the run proves nothing.
  Robogram median = *find_robogram("median");
  StarveDemon demon({Rational(-100)});
  ScenarioCheck check = check_solution_scenario(median, demon, {Rational(0), Rational(4)},
                                                query("1/10", 50, 10));
  CHECK(std::holds_alternative<NonConvergenceWitness>(check.verdict));
  CHECK_FALSE(check.fairness.fair());
  CHECK(check.witness_void);
  CHECK_FALSE(check.theorem_relevant);
  CHECK(exit_code(check) == 30);
}

TEST_CASE("epsilon must be positive") {
  Trace trace = positive_control_trace(10);
  ConvergenceQuery q = query("1/10", 10, 5);
  q.epsilon = Rational(0);
  CHECK_THROWS_AS(check_attracted(q, trace, false), std::invalid_argument);
}

TEST_CASE("a hold window longer than the horizon cannot attract") {
  Trace trace = positive_control_trace(20);
  Verdict v = check_attracted(query("1/100", 20, 50), trace, false);
  // The run converges, but 50 held rounds cannot be shown in 20: the checker
  // falls back to the exact cycle, which has spread 0 -- inconclusive.
  CHECK(std::holds_alternative<Inconclusive>(v));
}

TEST_CASE("witnesses survive only while the spread stays refuting") {
  // The split construction's spread equals the initial spread; with a huge
  // epsilon the same cycle no longer refutes convergence.
  Robogram median = *find_robogram("median");
  auto demon = adversary_split({2, Rational(100), 1}, IdentSpace{2, 1});
  Trace trace = simulate(median, *demon, {Rational(0), Rational(4)}, 300);
  Verdict v = check_attracted(query("10", 300, 50), trace, true);
  // Spread 4 <= 2 * 10, and the two frozen robots fit in a ball of radius 10
  // around robot 0's spot from round 0 on (own locations are tried before
  // pairwise midpoints, so the center is 0 rather than 2).
  const auto* a = std::get_if<Attracted>(&v);
  REQUIRE(a != nullptr);
  CHECK(a->center == Rational(0));
  CHECK(a->entry_round == 0);
}

TEST_CASE("starved-but-converged run reports the fairness violation, exit 30") {
  Robogram median = *find_robogram("median");
  StarveDemon demon({Rational(100)});
  // Robot 0 jumps onto robot 1 (median of {0, 4, 100} is 4) and both sit
  // still forever; convergence happened, but the demon still starved robot 1.
  ScenarioCheck check = check_solution_scenario(median, demon, {Rational(0), Rational(4)},
                                                query("1/10", 60, 20));
  CHECK(std::holds_alternative<Attracted>(check.verdict));
  CHECK_FALSE(check.fairness.fair());
  CHECK(exit_code(check) == 30);
}
