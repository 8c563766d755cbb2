#include "roboline/execution.hpp"

#include <json.hpp>

#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace roboline {

GoodPositions round(const Robogram& r, const DemonicAction& da, const GoodPositions& gp) {
  if (da.frames.size() != gp.size()) {
    throw std::invalid_argument("round: frame count does not match good robot count");
  }
  Position full{gp, da.byz};
  GoodPositions next = gp;
  for (std::size_t g = 0; g < gp.size(); ++g) {
    const Rational& k = da.frames[g];
    if (k.is_zero()) continue;  // not activated: the robot keeps its location
    Similarity frame(k, gp[g]);
    Location local_target = r(transform(frame, full));
    next[g] = gp[g] + local_target / k;
  }
  return next;
}

Trace simulate(const Robogram& r, Demon& demon, const GoodPositions& gp0,
               std::uint64_t rounds) {
  demon.reset();
  Trace t;
  t.positions.reserve(rounds + 1);
  t.demon_states.reserve(rounds + 1);
  t.actions.reserve(rounds);
  GoodPositions gp = gp0;
  t.positions.push_back(gp);
  t.demon_states.push_back(demon.state_key());
  for (std::uint64_t i = 0; i < rounds; ++i) {
    DemonicAction da = demon.step(gp);
    gp = round(r, da, gp);
    t.actions.push_back(std::move(da));
    t.positions.push_back(gp);
    t.demon_states.push_back(demon.state_key());
  }
  return t;
}

Execution::Execution(Robogram r, Demon& demon, GoodPositions gp0)
    : r_(std::move(r)), demon_(demon), gp_(std::move(gp0)) {
  demon_.reset();
}

const DemonicAction& Execution::advance() {
  last_ = demon_.step(gp_);
  gp_ = round(r_, *last_, gp_);
  ++round_;
  return *last_;
}

namespace {

std::string exact_key(const std::string& demon_state, const GoodPositions& gp) {
  std::string key = demon_state;
  key += '#';
  for (const Location& x : gp) {
    key += x.str();
    key += ',';
  }
  return key;
}

// Positions normalized by the first robot's location; equal keys mean the
// configurations agree up to one uniform translation (the demon state is
// folded in as well).
std::string relative_key(const std::string& demon_state, const GoodPositions& gp) {
  std::string key = demon_state;
  key += '#';
  for (const Location& x : gp) {
    key += (x - gp.front()).str();
    key += ',';
  }
  return key;
}

}  // namespace

std::optional<RecurrenceWitness> find_recurrence(const Trace& trace, bool allow_translation) {
  std::map<std::string, std::uint64_t> exact_seen;
  std::map<std::string, std::uint64_t> relative_seen;
  const bool track_relative = allow_translation && !trace.positions.empty() &&
                              !trace.positions.front().empty();

  for (std::uint64_t i = 0; i < trace.positions.size(); ++i) {
    const GoodPositions& gp = trace.positions[i];
    const std::string& state = trace.demon_states[i];

    std::string ek = exact_key(state, gp);
    if (auto it = exact_seen.find(ek); it != exact_seen.end()) {
      RecurrenceWitness w;
      w.kind = RecurrenceWitness::Kind::ExactCycle;
      w.start_round = it->second;
      w.period = i - it->second;
      w.shift = 0;
      return w;
    }

    if (track_relative) {
      std::string rk = relative_key(state, gp);
      if (auto it = relative_seen.find(rk); it != relative_seen.end()) {
        Rational shift = gp.front() - trace.positions[it->second].front();
        // A zero shift would have been caught by the exact map above.
        RecurrenceWitness w;
        w.kind = RecurrenceWitness::Kind::CycleModuloTranslation;
        w.start_round = it->second;
        w.period = i - it->second;
        w.shift = shift;
        return w;
      }
      relative_seen.emplace(std::move(rk), i);
    }
    exact_seen.emplace(std::move(ek), i);
  }
  return std::nullopt;
}

std::optional<RecurrenceWitness> detect_recurrence(const Robogram& r, Demon& demon,
                                                   const GoodPositions& gp0,
                                                   std::uint64_t horizon) {
  bool allow_translation = r.translation_equivariant && demon.translation_equivariant();
  Trace t = simulate(r, demon, gp0, horizon);
  return find_recurrence(t, allow_translation);
}

bool revalidate_recurrence(const Robogram& r, Demon& demon, const GoodPositions& gp0,
                           const RecurrenceWitness& witness) {
  if (witness.period == 0) return false;
  if (witness.kind == RecurrenceWitness::Kind::ExactCycle && !witness.shift.is_zero()) {
    return false;
  }
  if (witness.kind == RecurrenceWitness::Kind::CycleModuloTranslation &&
      witness.shift.is_zero()) {
    return false;
  }
  Trace t = simulate(r, demon, gp0, witness.start_round + witness.period);
  const GoodPositions& a = t.positions[witness.start_round];
  const GoodPositions& b = t.positions[witness.start_round + witness.period];
  if (t.demon_states[witness.start_round] !=
      t.demon_states[witness.start_round + witness.period]) {
    return false;
  }
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] - a[i] != witness.shift) return false;
  }
  return true;
}

Rational spread(const GoodPositions& gp) {
  if (gp.empty()) return 0;
  Location lo = gp.front();
  Location hi = gp.front();
  for (const Location& x : gp) {
    if (x < lo) lo = x;
    if (x > hi) hi = x;
  }
  return hi - lo;
}

void write_trace_csv(const Trace& trace, std::ostream& os) {
  os << "round,kind,index,location,frame\n";
  for (std::uint64_t i = 0; i < trace.rounds(); ++i) {
    const GoodPositions& gp = trace.positions[i];
    const DemonicAction& da = trace.actions[i];
    for (std::size_t g = 0; g < gp.size(); ++g) {
      os << i << ",good," << g << ',' << gp[g].str() << ',' << da.frames[g].str() << '\n';
    }
    for (std::size_t b = 0; b < da.byz.size(); ++b) {
      os << i << ",byz," << b << ',' << da.byz[b].str() << ",0\n";
    }
  }
}

void write_trace_jsonl(const Trace& trace, std::ostream& os) {
  for (std::uint64_t i = 0; i < trace.rounds(); ++i) {
    const GoodPositions& gp = trace.positions[i];
    const DemonicAction& da = trace.actions[i];
    for (std::size_t g = 0; g < gp.size(); ++g) {
      nlohmann::json row = {{"round", i},
                            {"kind", "good"},
                            {"index", g},
                            {"location", gp[g].str()},
                            {"frame", da.frames[g].str()}};
      os << row.dump() << '\n';
    }
    for (std::size_t b = 0; b < da.byz.size(); ++b) {
      nlohmann::json row = {{"round", i},
                            {"kind", "byz"},
                            {"index", b},
                            {"location", da.byz[b].str()},
                            {"frame", "0"}};
      os << row.dump() << '\n';
    }
  }
}

}  // namespace roboline
