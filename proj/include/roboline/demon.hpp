#pragma once

#include "roboline/geometry.hpp"
#include "roboline/population.hpp"
#include "roboline/robogram.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace roboline {

struct Trace;  // defined in execution.hpp

/// One round's worth of adversarial choices: where every byzantine robot
/// appears, and the frame ratio handed to each good robot.  A zero ratio
/// means "not activated this round"; a nonzero ratio k activates the robot
/// and makes it perceive the world through x |-> k * (x - own location).
struct DemonicAction {
  std::vector<Location> byz;
  std::vector<Rational> frames;

  friend bool operator==(const DemonicAction& a, const DemonicAction& b) {
    return a.byz == b.byz && a.frames == b.frames;
  }
};

/// Deterministic adaptive adversary.  step() reads the current good
/// positions and advances internal state; the same demon reset() and driven
/// with the same inputs reproduces the same actions bit for bit.
class Demon {
 public:
  virtual ~Demon() = default;

  virtual DemonicAction step(const GoodPositions& gp) = 0;

  /// Canonical encoding of the internal state (not the round number unless
  /// the round number genuinely drives behaviour).  Two moments with equal
  /// state_key() and equal good positions behave identically forever, which
  /// is what the recurrence detector relies on.
  virtual std::string state_key() const = 0;

  virtual void reset() = 0;

  virtual std::string describe() const = 0;

  // -- structural certificates -------------------------------------------
  /// Fair by construction (every good robot is activated infinitely often,
  /// independent of the run); audits may short-circuit.
  virtual bool structurally_fair() const { return false; }
  /// Claims to activate every good robot every round.
  virtual bool fully_synchronous() const { return false; }
  /// Commutes with translating the good positions: step(gp + c) equals
  /// step(gp) with byz placements shifted by c and identical frames.  Demons
  /// that pin byzantine robots at absolute coordinates are NOT equivariant.
  /// Gates drift-style recurrence witnesses.
  virtual bool translation_equivariant() const { return false; }
  /// Declared bound on consecutive rounds a good robot may stay inactive.
  virtual std::optional<std::uint64_t> activation_gap_bound() const { return std::nullopt; }
  /// Declared k for k-bounded demons: between two consecutive activations of
  /// any robot, no other robot is activated more than k times.
  virtual std::optional<std::uint64_t> k_bound() const { return std::nullopt; }
};

/// Activates every good robot every round.  Byzantine placements are pinned;
/// frame ratios cycle through `scales` (all nonzero).  Structurally fair,
/// fully synchronous, 1-bounded.
std::unique_ptr<Demon> fsync_demon(std::vector<Location> byz, std::vector<Rational> scales);
std::unique_ptr<Demon> fsync_demon(std::vector<Location> byz, Rational scale = 1);

/// Activates good robots one at a time, each for `k` consecutive rounds,
/// cycling 0, 0, .., 1, 1, .., n-1, n-1, .. (k copies each).  Byzantine
/// placements pinned, frame ratios cycle through `scales`.  Fair with
/// activation gaps at most (good_count - 1) * k, and k-bounded.
std::unique_ptr<Demon> round_robin_demon(std::size_t good_count, std::uint64_t k,
                                         std::vector<Location> byz,
                                         std::vector<Rational> scales);
std::unique_ptr<Demon> round_robin_demon(std::size_t good_count, std::uint64_t k,
                                         std::vector<Location> byz, Rational scale = 1);

/// Outcome of a fairness audit over a finite prefix of a run.
struct FairnessReport {
  enum class Kind {
    StructurallyFair,  // certificate accepted, no audit needed
    FairUpToHorizon,   // audited: no gap exceeded the bound within the horizon
    ViolationAt,       // some robot's inactive run exceeded the bound
  };
  Kind kind = Kind::FairUpToHorizon;
  std::uint64_t horizon = 0;
  /// Largest run of consecutive inactive rounds observed, per good robot.
  std::vector<std::uint64_t> max_gap;
  // ViolationAt payload: the 1-based count of rounds simulated when the gap
  // was established, and the starved robot.
  std::uint64_t violation_round = 0;
  std::size_t robot = 0;

  bool fair() const { return kind != Kind::ViolationAt; }
};

/// Audits fairness on an already-recorded run (the same-run rule: verdicts
/// about a run must be computed from that run, not from a fresh one).
FairnessReport audit_fairness(const Trace& trace, const Demon& demon);
/// True iff every good robot was activated every recorded round.
bool audit_fsync(const Trace& trace);

/// Convenience wrappers: reset the demon, simulate `horizon` rounds from gp0
/// under the robogram, audit the result.
FairnessReport check_fair(const Robogram& r, Demon& demon, const GoodPositions& gp0,
                          std::uint64_t horizon);
bool check_fsync(const Robogram& r, Demon& demon, const GoodPositions& gp0,
                 std::uint64_t horizon);

struct KBoundViolation {
  std::size_t robot;        // robot whose activation interval was violated
  std::size_t other;        // robot activated too often inside it
  std::uint64_t count;      // times `other` fired strictly between the two activations
  std::uint64_t round;      // round index closing the interval
};

struct KBoundReport {
  bool pass = false;
  std::uint64_t k = 0;
  std::uint64_t horizon = 0;
  std::optional<KBoundViolation> violation;
};

/// Audits the k-bounded property on a recorded run: for every pair of
/// consecutive activations of a robot, counts activations of every other
/// robot strictly between them.
KBoundReport audit_k_bounded(const Trace& trace, std::uint64_t k);
KBoundReport check_k_bounded(const Robogram& r, Demon& demon, const GoodPositions& gp0,
                             std::uint64_t k, std::uint64_t horizon);

}  // namespace roboline
