#pragma once

#include "roboline/convergence.hpp"
#include "roboline/demon.hpp"
#include "roboline/geometry.hpp"
#include "roboline/population.hpp"
#include "roboline/robogram.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace roboline {

/// A demon reference as written in a scenario: "fsync", "roundrobin:k=2",
/// "pull:delta=100,mode=chase", "split:delta=100,k=2", each optionally with
/// "scale=<rational>".  Parameters are kept as validated canonical strings.
struct DemonSpec {
  std::string name;
  std::map<std::string, std::string> params;

  /// "name" or "name:key=value,..." with keys in alphabetical order.
  std::string canonical() const;

  friend bool operator==(const DemonSpec& a, const DemonSpec& b) {
    return a.name == b.name && a.params == b.params;
  }
};

/// A fully validated problem instance: population, initial placement,
/// algorithm, adversary, and the convergence question to ask.
struct Scenario {
  IdentSpace space;
  GoodPositions good;
  /// Pinned byzantine placements; used by fsync/roundrobin demons, empty for
  /// the adversary families (they place byzantine robots themselves).
  std::vector<Location> byz;
  std::string robogram;
  DemonSpec demon;
  ConvergenceQuery query;
  std::uint64_t seed = 0;

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.space == b.space && a.good == b.good && a.byz == b.byz &&
           a.robogram == b.robogram && a.demon == b.demon &&
           a.query.epsilon == b.query.epsilon && a.query.horizon == b.query.horizon &&
           a.query.hold_window == b.query.hold_window && a.seed == b.seed;
  }
};

struct ScenarioError {
  std::size_t line = 0;  // 1-based; 0 for whole-file problems (missing keys)
  std::string field;
  std::string message;
};

/// Outcome of parsing: either a scenario, or every problem found (the parser
/// does not stop at the first error).
struct ScenarioParseResult {
  std::optional<Scenario> scenario;
  std::vector<ScenarioError> errors;

  bool ok() const { return scenario.has_value(); }
};

/// Line-oriented `key = value` text.  '#' starts a comment; blank lines are
/// skipped.  Values are bare integers (counts, horizon, seed), quoted strings
/// (names, rationals like "1/10"), or arrays of quoted strings (placements).
/// Keys: good_count, byz_count, good, byz, robogram, demon, epsilon, horizon,
/// hold_window, seed.
ScenarioParseResult parse_scenario(std::string_view text);

/// Canonical text form; parse_scenario(serialize_scenario(s)) yields a
/// scenario equal to s.
std::string serialize_scenario(const Scenario& s);

/// Builds the demon the scenario names.  May throw std::invalid_argument:
/// the adversary families check population-regime preconditions that are not
/// part of parsing.
std::unique_ptr<Demon> build_demon(const Scenario& s);

/// The named robogram (validated at parse time, so this cannot fail for a
/// parsed scenario).
Robogram resolve_robogram(const Scenario& s);

}  // namespace roboline
