#include "roboline/convergence.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace roboline {

bool check_imprisoned(const Location& center, const Rational& radius,
                      std::span<const GoodPositions> prefix, std::uint64_t window) {
  if (prefix.size() < window) return false;
  for (std::uint64_t i = 0; i < window; ++i) {
    for (const Location& x : prefix[i]) {
      if (abs(x - center) > radius) return false;
    }
  }
  return true;
}

namespace {

bool within(const GoodPositions& gp, const Location& center, const Rational& radius) {
  for (const Location& x : gp) {
    if (abs(x - center) > radius) return false;
  }
  return true;
}

// Good locations at the entry round plus their pairwise midpoints,
// deduplicated.  A truly attracting run is eventually within epsilon/2 of its
// limit, and from such a round any robot's own location works as a center, so
// scanning entries in order finds every attracting run; the midpoints only
// sharpen the reported entry round for symmetric configurations.
std::vector<Location> candidate_centers(const GoodPositions& gp) {
  std::vector<Location> out;
  for (const Location& x : gp) out.push_back(x);
  for (std::size_t i = 0; i < gp.size(); ++i) {
    for (std::size_t j = i + 1; j < gp.size(); ++j) {
      out.push_back((gp[i] + gp[j]) / 2);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Attracted> search_attracted(const ConvergenceQuery& q, const Trace& trace) {
  if (trace.rounds() < q.hold_window) return std::nullopt;
  std::uint64_t last_entry = trace.rounds() - q.hold_window;
  for (std::uint64_t entry = 0; entry <= last_entry; ++entry) {
    for (const Location& center : candidate_centers(trace.positions[entry])) {
      bool holds = true;
      for (std::uint64_t i = entry; i < trace.positions.size(); ++i) {
        if (!within(trace.positions[i], center, q.epsilon)) {
          holds = false;
          break;
        }
      }
      if (holds) {
        return Attracted{center, q.epsilon, entry, trace.rounds()};
      }
    }
  }
  return std::nullopt;
}

std::optional<NonConvergenceWitness> justify(const ConvergenceQuery& q, const Trace& trace,
                                             const RecurrenceWitness& rec) {
  NonConvergenceWitness w;
  w.recurrence = rec;
  w.epsilon = q.epsilon;
  if (rec.kind == RecurrenceWitness::Kind::CycleModuloTranslation) {
    w.why = NonConvergenceWitness::Why::NonzeroDrift;
    return w;
  }
  Rational limit = q.epsilon * 2;
  for (std::uint64_t i = rec.start_round; i < rec.start_round + rec.period; ++i) {
    Rational s = spread(trace.positions[i]);
    if (s > limit) {
      w.why = NonConvergenceWitness::Why::SpreadExceeds2Eps;
      w.spread_round = i;
      w.spread = s;
      return w;
    }
  }
  // The run repeats exactly but every configuration in the cycle already fits
  // in some 2*epsilon interval: recurrence alone does not refute convergence
  // at this epsilon.
  return std::nullopt;
}

}  // namespace

Verdict check_attracted(const ConvergenceQuery& q, const Trace& trace,
                        bool allow_translation) {
  if (q.epsilon.sign() <= 0) throw std::invalid_argument("convergence: epsilon must be positive");
  if (auto attracted = search_attracted(q, trace)) return *attracted;
  if (auto rec = find_recurrence(trace, allow_translation)) {
    if (auto witness = justify(q, trace, *rec)) return *witness;
  }
  return Inconclusive{trace.rounds()};
}

ScenarioCheck check_recorded(const Robogram& r, const Demon& demon, const Trace& trace,
                             const ConvergenceQuery& q) {
  ScenarioCheck check;
  check.rounds = trace.rounds();
  check.demon_description = demon.describe();
  bool allow_translation = r.translation_equivariant && demon.translation_equivariant();
  check.verdict = check_attracted(q, trace, allow_translation);
  check.fairness = audit_fairness(trace, demon);
  if (demon.fully_synchronous()) check.fsync_holds = audit_fsync(trace);
  if (auto k = demon.k_bound()) check.k_bound = audit_k_bounded(trace, *k);

  bool witness = std::holds_alternative<NonConvergenceWitness>(check.verdict);
  bool audits_pass = check.fairness.fair() && check.fsync_holds.value_or(true) &&
                     (!check.k_bound || check.k_bound->pass);
  check.witness_void = witness && !audits_pass;
  check.theorem_relevant = witness && audits_pass;
  return check;
}

ScenarioCheck check_solution_scenario(const Robogram& r, Demon& demon,
                                      const GoodPositions& gp0, const ConvergenceQuery& q) {
  Trace trace = simulate(r, demon, gp0, q.horizon);
  return check_recorded(r, demon, trace, q);
}

int exit_code(const ScenarioCheck& check) {
  if (!check.fairness.fair()) return 30;
  if (std::holds_alternative<Attracted>(check.verdict)) return 0;
  if (check.theorem_relevant) return 10;
  return 20;
}

std::string verdict_summary(const Verdict& v) {
  std::ostringstream os;
  if (const auto* a = std::get_if<Attracted>(&v)) {
    os << "attracted center=" << a->center.str() << " entry_round=" << a->entry_round
       << " epsilon=" << a->epsilon.str() << " horizon=" << a->horizon;
  } else if (const auto* w = std::get_if<NonConvergenceWitness>(&v)) {
    os << "non-convergence witness ";
    if (w->recurrence.kind == RecurrenceWitness::Kind::ExactCycle) {
      os << "exact-cycle";
    } else {
      os << "cycle-modulo-translation shift=" << w->recurrence.shift.str();
    }
    os << " start_round=" << w->recurrence.start_round << " period=" << w->recurrence.period;
    if (w->why == NonConvergenceWitness::Why::SpreadExceeds2Eps) {
      os << " spread=" << w->spread.str() << ">2*eps at round " << w->spread_round;
    } else {
      os << " nonzero drift";
    }
  } else {
    os << "inconclusive horizon=" << std::get<Inconclusive>(v).horizon;
  }
  return os.str();
}

}  // namespace roboline
