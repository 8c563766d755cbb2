#pragma once

#include "roboline/demon.hpp"
#include "roboline/geometry.hpp"
#include "roboline/population.hpp"
#include "roboline/robogram.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace roboline {

/// One synchronous Look-Compute-Move step.  For each good robot g with frame
/// ratio k = da.frames[g]:
///   - k == 0: not activated, stays put;
///   - k != 0: observes the full position (goods plus the demon's byzantine
///     placements) through the similarity x |-> k * (x - own), computes the
///     robogram on that local view, and moves to own + result / k (the
///     destination mapped back to the global frame).
/// Byzantine robots have no persistent location; they are wherever the demon
/// put them this round.  Throws std::invalid_argument when frames and gp
/// disagree in length.
GoodPositions round(const Robogram& r, const DemonicAction& da, const GoodPositions& gp);

/// A recorded prefix of a run.  positions[i] holds the good positions before
/// round i (so positions.size() == rounds() + 1), demon_states[i] the demon's
/// state key at that same moment, and actions[i] the choices the demon made
/// in round i.
struct Trace {
  std::vector<GoodPositions> positions;
  std::vector<std::string> demon_states;
  std::vector<DemonicAction> actions;

  std::uint64_t rounds() const { return actions.size(); }
};

/// Resets the demon and records `rounds` rounds starting from gp0.
Trace simulate(const Robogram& r, Demon& demon, const GoodPositions& gp0,
               std::uint64_t rounds);

/// Demand-driven view of a run for callers that want to stop on a condition
/// instead of fixing a horizon up front.  Construction resets the demon.
class Execution {
 public:
  Execution(Robogram r, Demon& demon, GoodPositions gp0);

  const GoodPositions& current() const { return gp_; }
  std::uint64_t round_index() const { return round_; }
  /// Applies one round and returns the demonic action it used.
  const DemonicAction& advance();
  /// Action used by the most recent advance(); empty before the first one.
  const std::optional<DemonicAction>& last_action() const { return last_; }

 private:
  Robogram r_;
  Demon& demon_;
  GoodPositions gp_;
  std::uint64_t round_ = 0;
  std::optional<DemonicAction> last_;
};

/// Proof that a finite prefix pins down the infinite tail: the joint state
/// (demon state, good positions) at start_round + period matches the one at
/// start_round, either exactly (the run is eventually periodic) or up to a
/// uniform translation by `shift` per period (the run repeats while drifting).
struct RecurrenceWitness {
  enum class Kind { ExactCycle, CycleModuloTranslation };
  Kind kind = Kind::ExactCycle;
  std::uint64_t start_round = 0;
  std::uint64_t period = 1;
  /// Displacement per period; zero exactly when kind == ExactCycle.
  Rational shift;
};

/// Scans a recorded run for the earliest recurrence.  Exact matches are
/// always sound.  Translation matches are only sound when one round of the
/// system commutes with translation, which needs both the robogram and the
/// demon to be translation-equivariant -- callers pass that conjunction as
/// allow_translation; when false only exact cycles are reported.
std::optional<RecurrenceWitness> find_recurrence(const Trace& trace, bool allow_translation);

/// Simulates up to `horizon` rounds and scans for a recurrence.
std::optional<RecurrenceWitness> detect_recurrence(const Robogram& r, Demon& demon,
                                                   const GoodPositions& gp0,
                                                   std::uint64_t horizon);

/// Independent replay of a claimed witness: re-simulates start_round + period
/// rounds on a reset demon and checks the defining snapshot relation directly
/// (state keys equal; positions equal, or uniformly shifted by exactly
/// witness.shift).  Used to revalidate search results before reporting them.
bool revalidate_recurrence(const Robogram& r, Demon& demon, const GoodPositions& gp0,
                           const RecurrenceWitness& witness);

/// max(gp) - min(gp); zero for the empty vector.
Rational spread(const GoodPositions& gp);

/// CSV with header round,kind,index,location,frame -- one row per robot per
/// round; good rows carry the position before the round and the frame ratio
/// handed out that round, byz rows the demon's placement and frame 0.
void write_trace_csv(const Trace& trace, std::ostream& os);
/// Same records as JSON objects, one per line.
void write_trace_jsonl(const Trace& trace, std::ostream& os);

}  // namespace roboline
