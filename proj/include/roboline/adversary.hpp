#pragma once

#include "roboline/convergence.hpp"
#include "roboline/demon.hpp"
#include "roboline/geometry.hpp"
#include "roboline/population.hpp"
#include "roboline/robogram.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace roboline {

enum class PullMode { AlternatingSides, ChaseEscape };

/// Adversary for populations with at least as many byzantine as good robots.
/// Every round is fully synchronous; all byzantine robots are stacked on one
/// point chosen relative to the current good positions (with m = min(good),
/// M = max(good)):
///   - AlternatingSides: M + delta on even phases, m - delta on odd ones,
///     dragging the whole swarm back and forth;
///   - ChaseEscape: 2*M - m + delta, always ahead of the swarm, dragging it
///     rightward forever.
struct PullAdversaryConfig {
  Rational delta = 100;  // must be > 0
  PullMode mode = PullMode::AlternatingSides;
  Rational scale = 1;  // frame ratio handed to every good robot; must be != 0
};

/// Throws std::invalid_argument unless space.byz_count >= space.good_count
/// ("requires byz >= good"), delta > 0 and scale != 0.
std::unique_ptr<Demon> adversary_pull(const PullAdversaryConfig& config,
                                      const IdentSpace& space);

/// Adversary for populations with 2f < n <= 3f (n = total robots, f = byz).
/// Splits the good robots by location into a low and a high half and
/// activates one half for k_bound consecutive rounds, then the other, with
/// all byzantine robots stacked beyond the activated half's own extreme
/// (min(good) - delta for the low half, max(good) + delta for the high one),
/// so each activated robot already sits at the median of what it sees and
/// never moves.  Fair, k_bound-bounded, and the good robots keep their
/// initial spread forever.
struct SplitAdversaryConfig {
  std::uint64_t k_bound = 2;  // must be >= 1
  Rational delta = 100;       // must be > 0
  Rational scale = 1;         // must be != 0
};

/// Throws std::invalid_argument unless 2f < n <= 3f ("requires 2f < n <= 3f"),
/// k_bound >= 1, delta > 0 and scale != 0.
std::unique_ptr<Demon> adversary_split(const SplitAdversaryConfig& config,
                                       const IdentSpace& space);

/// One point of a falsification grid: a label and a way to build the demon.
/// The factory may throw (e.g. a regime precondition fails for this
/// population); falsify records that as a rejected attempt, not a result.
struct DemonGridPoint {
  std::string label;
  std::function<std::unique_ptr<Demon>()> make;
};

std::vector<DemonGridPoint> pull_grid(const IdentSpace& space,
                                      const std::vector<Rational>& deltas,
                                      const std::vector<PullMode>& modes,
                                      const Rational& scale = 1);
std::vector<DemonGridPoint> split_grid(const IdentSpace& space,
                                       const std::vector<Rational>& deltas,
                                       std::uint64_t k_bound, const Rational& scale = 1);

struct FalsifyAttempt {
  std::string label;
  enum class Outcome { Witness, WitnessVoid, Attracted, Inconclusive, Rejected } outcome;
  std::string detail;  // rejection message or verdict summary
};

struct FalsifyResult {
  /// First grid point (in grid order) whose run produced a theorem-relevant
  /// witness, revalidated by replay.
  std::optional<ScenarioCheck> witness;
  std::string witness_label;
  std::vector<FalsifyAttempt> attempts;  // one per grid point, in grid order

  bool found() const { return witness.has_value(); }
};

/// Runs the scenario check for every grid point (in parallel when jobs > 1;
/// results are independent of jobs) and returns the first theorem-relevant
/// witness in grid order.  Each winning witness is revalidated on a freshly
/// built demon before being accepted; a witness that fails replay is demoted
/// to an inconclusive attempt.  Throws std::invalid_argument on an empty
/// grid.
FalsifyResult falsify(const Robogram& r, const GoodPositions& gp0,
                      const std::vector<DemonGridPoint>& grid, const ConvergenceQuery& q,
                      unsigned jobs = 1);

}  // namespace roboline
