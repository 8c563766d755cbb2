#include "roboline/demon.hpp"

#include "roboline/execution.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace roboline;

namespace {

// Activates only good robot 0, forever: the canonical unfair scheduler.
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

const GoodPositions kStart = {Rational(0), Rational(6), Rational(11)};

}  // namespace

TEST_CASE("fsync activates everyone with the scheduled scale") {
  auto demon = fsync_demon({Rational(100)}, std::vector<Rational>{1, 2});
  DemonicAction first = demon->step(kStart);
  CHECK(first.byz == std::vector<Location>{Rational(100)});
  CHECK(first.frames == std::vector<Rational>{1, 1, 1});
  DemonicAction second = demon->step(kStart);
  CHECK(second.frames == std::vector<Rational>{2, 2, 2});
  DemonicAction third = demon->step(kStart);
  CHECK(third.frames == std::vector<Rational>{1, 1, 1});

  CHECK(demon->fully_synchronous());
  CHECK(demon->structurally_fair());
  CHECK_FALSE(demon->translation_equivariant());  // byz pinned at 100
  CHECK(demon->k_bound() == 1);
}

TEST_CASE("fsync with a constant schedule has a constant state key") {
  auto demon = fsync_demon({}, 1);
  std::string before = demon->state_key();
  demon->step({Rational(0)});
  demon->step({Rational(1)});
  CHECK(demon->state_key() == before);

  auto cycling = fsync_demon({}, std::vector<Rational>{1, 2});
  std::string s0 = cycling->state_key();
  cycling->step({Rational(0)});
  CHECK(cycling->state_key() != s0);
  cycling->step({Rational(0)});
  CHECK(cycling->state_key() == s0);
}

TEST_CASE("demon construction rejects zero scales and empty schedules") {
  CHECK_THROWS_AS(fsync_demon({}, 0), std::invalid_argument);
  CHECK_THROWS_AS(fsync_demon({}, std::vector<Rational>{}), std::invalid_argument);
  CHECK_THROWS_AS(fsync_demon({}, std::vector<Rational>{1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(round_robin_demon(0, 1, {}, 1), std::invalid_argument);
  CHECK_THROWS_AS(round_robin_demon(2, 0, {}, 1), std::invalid_argument);
}

TEST_CASE("roundrobin activates one robot for k consecutive rounds") {
  auto demon = round_robin_demon(2, 2, {}, 1);
  std::vector<std::size_t> active;
  for (int i = 0; i < 6; ++i) {
    DemonicAction da = demon->step({Rational(0), Rational(4)});
    for (std::size_t g = 0; g < da.frames.size(); ++g) {
      if (!da.frames[g].is_zero()) active.push_back(g);
    }
  }
  CHECK(active == std::vector<std::size_t>{0, 0, 1, 1, 0, 0});
  CHECK_FALSE(demon->fully_synchronous());
  CHECK(demon->k_bound() == 2);
  CHECK(demon->activation_gap_bound() == 2);  // (n-1)*k
}

TEST_CASE("reset restores the initial behaviour exactly") {
  auto demon = round_robin_demon(3, 2, {Rational(5)}, std::vector<Rational>{1, 2});
  std::vector<DemonicAction> first;
  for (int i = 0; i < 10; ++i) first.push_back(demon->step(kStart));
  demon->reset();
  for (int i = 0; i < 10; ++i) CHECK(demon->step(kStart) == first[i]);
}

TEST_CASE("fairness audit: structural certificate short-circuits") {
  Robogram median = *find_robogram("median");
  auto demon = fsync_demon({Rational(100)}, 1);
  FairnessReport report = check_fair(median, *demon, kStart, 25);
  CHECK(report.kind == FairnessReport::Kind::StructurallyFair);
  CHECK(report.fair());
  CHECK(report.max_gap == std::vector<std::uint64_t>{0, 0, 0});
}

TEST_CASE("fairness audit: roundrobin is fair up to the horizon") {
  Robogram median = *find_robogram("median");
  auto demon = round_robin_demon(3, 2, {Rational(100)}, 1);
  FairnessReport report = check_fair(median, *demon, kStart, 30);
  CHECK(report.kind == FairnessReport::Kind::FairUpToHorizon);
  CHECK(report.horizon == 30);
  // Robot 2 waits out robots 0 and 1 before its first turn: gap 4 = (n-1)*k.
  CHECK(report.max_gap == std::vector<std::uint64_t>{4, 4, 4});
}

TEST_CASE("fairness audit: a starved robot is reported with the round count") {
  Robogram median = *find_robogram("median");
  StarveDemon demon({Rational(100)});
  GoodPositions gp0 = {Rational(0), Rational(4)};
  FairnessReport report = check_fair(median, demon, gp0, 10);
  CHECK(report.kind == FairnessReport::Kind::ViolationAt);
  CHECK_FALSE(report.fair());
  // With no declared bound, starving for the whole 10-round horizon is the
  // violation, established when the 10th round completed.
  CHECK(report.violation_round == 10);
  CHECK(report.robot == 1);
}

TEST_CASE("fsync audit distinguishes full synchrony from mere fairness") {
  Robogram median = *find_robogram("median");
  auto fsync = fsync_demon({}, 1);
  CHECK(check_fsync(median, *fsync, kStart, 20));
  auto rr = round_robin_demon(3, 1, {}, 1);
  CHECK_FALSE(check_fsync(median, *rr, kStart, 20));
}

TEST_CASE("k-bound audit: roundrobin k passes its own k and fails k-1") {
  Robogram median = *find_robogram("median");
  GoodPositions gp0 = {Rational(0), Rational(4)};
  auto demon = round_robin_demon(2, 2, {}, 1);
  KBoundReport pass = check_k_bounded(median, *demon, gp0, 2, 20);
  CHECK(pass.pass);

  KBoundReport fail = check_k_bounded(median, *demon, gp0, 1, 20);
  REQUIRE_FALSE(fail.pass);
  REQUIRE(fail.violation.has_value());
  // Robot 1 fires twice (rounds 2, 3) between robot 0's rounds 1 and 4.
  CHECK(fail.violation->robot == 0);
  CHECK(fail.violation->other == 1);
  CHECK(fail.violation->count == 2);
  CHECK(fail.violation->round == 4);
}

TEST_CASE("audits are computed from the recorded run itself") {
  Robogram median = *find_robogram("median");
  auto demon = round_robin_demon(2, 1, {Rational(9)}, 1);
  Trace trace = simulate(median, *demon, {Rational(0), Rational(4)}, 12);
  FairnessReport report = audit_fairness(trace, *demon);
  CHECK(report.kind == FairnessReport::Kind::FairUpToHorizon);
  CHECK(audit_fsync(trace) == false);
  CHECK(audit_k_bounded(trace, 1).pass);
}
