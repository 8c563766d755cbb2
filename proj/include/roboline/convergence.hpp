#pragma once

#include "roboline/demon.hpp"
#include "roboline/execution.hpp"
#include "roboline/geometry.hpp"
#include "roboline/population.hpp"
#include "roboline/robogram.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>

namespace roboline {

/// Parameters of a convergence question: how close counts as converged, how
/// far to look, and how long the robots must stay close before we believe it.
struct ConvergenceQuery {
  Rational epsilon = Rational(1, 100);  // must be > 0
  std::uint64_t horizon = 10000;
  std::uint64_t hold_window = 100;
};

/// True iff the prefix has at least `window` elements and every good robot
/// stays within `radius` of `center` (inclusive) throughout the first
/// `window` of them.  Callers slice the span to choose the starting round.
bool check_imprisoned(const Location& center, const Rational& radius,
                      std::span<const GoodPositions> prefix, std::uint64_t window);

/// Positive verdict: from entry_round through the horizon every good robot
/// stayed within epsilon of center (so in particular for hold_window rounds).
struct Attracted {
  Location center;
  Rational epsilon;
  std::uint64_t entry_round = 0;
  std::uint64_t horizon = 0;
};

/// Negative verdict: a recurrence plus a reason it forbids convergence.
/// SpreadExceeds2Eps: some round of the cycle keeps two good robots more than
/// 2*epsilon apart, and the cycle repeats forever, so no epsilon-ball can
/// contain all robots from any point on.  NonzeroDrift: the configuration
/// repeats shifted by a fixed nonzero amount each period, so the robots leave
/// every bounded set.
struct NonConvergenceWitness {
  enum class Why { SpreadExceeds2Eps, NonzeroDrift };
  RecurrenceWitness recurrence;
  Why why = Why::SpreadExceeds2Eps;
  Rational epsilon;
  /// SpreadExceeds2Eps: absolute round index inside [start, start + period)
  /// at which the offending spread occurs, and that spread.
  std::uint64_t spread_round = 0;
  Rational spread;
};

/// The horizon ran out without either verdict.
struct Inconclusive {
  std::uint64_t horizon = 0;
};

using Verdict = std::variant<Attracted, NonConvergenceWitness, Inconclusive>;

/// Decides a recorded run.  Searches entry rounds 0..horizon - hold_window
/// (ascending) with candidate centers drawn from that round's good locations
/// and their pairwise midpoints; accepts the first that holds all the way to
/// the horizon.  Otherwise scans for a recurrence (translation matches only
/// when allow_translation) and tries to justify it as a witness.  Otherwise
/// Inconclusive.
Verdict check_attracted(const ConvergenceQuery& q, const Trace& trace,
                        bool allow_translation);

/// Everything the scenario-level checker learned from one simulated run.
/// The convergence verdict and the demon audits all describe the same trace.
struct ScenarioCheck {
  Verdict verdict = Inconclusive{};
  FairnessReport fairness;
  /// Present iff the demon claims full synchrony: whether the run honored it.
  std::optional<bool> fsync_holds;
  /// Present iff the demon declares a k bound: the audit of that claim.
  std::optional<KBoundReport> k_bound;
  /// A non-convergence witness only refutes the convergence property if the
  /// demon behaved fairly; an unfair run proves nothing.
  bool witness_void = false;
  bool theorem_relevant = false;
  std::uint64_t rounds = 0;
  std::string demon_description;
};

/// Audits an already-recorded run (verdict, fairness, synchrony, k bound).
ScenarioCheck check_recorded(const Robogram& r, const Demon& demon, const Trace& trace,
                             const ConvergenceQuery& q);

/// Simulates one run of `horizon` rounds (resetting the demon) and audits
/// everything on that single record.
ScenarioCheck check_solution_scenario(const Robogram& r, Demon& demon,
                                      const GoodPositions& gp0, const ConvergenceQuery& q);

/// 30 when the fairness audit failed (any witness is void); otherwise
/// 0 attracted / 10 theorem-relevant witness / 20 inconclusive.
int exit_code(const ScenarioCheck& check);

/// One-line human summary ("attracted center=10 entry=1", ...).
std::string verdict_summary(const Verdict& v);

}  // namespace roboline
