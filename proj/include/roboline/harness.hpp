#pragma once

#include "roboline/adversary.hpp"
#include "roboline/convergence.hpp"
#include "roboline/scenario.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace roboline {

// ---------------------------------------------------------------------------
// Seeded data generators (shared by the CLI, the self-test suite and the
// property tests).  All draws go through explicit modular arithmetic on the
// engine's output so results are identical across standard libraries.
// ---------------------------------------------------------------------------

/// Uniform-ish rational with numerator in [-num_range, num_range] and
/// denominator in [1, den_range].
Rational random_rational(std::mt19937_64& rng, long long num_range, long long den_range);
Rational random_nonzero_rational(std::mt19937_64& rng, long long num_range,
                                 long long den_range);
std::vector<Position> random_positions(std::mt19937_64& rng, const IdentSpace& space,
                                       std::size_t count, long long num_range = 20,
                                       long long den_range = 8);

// ---------------------------------------------------------------------------
// Verdict serialization
// ---------------------------------------------------------------------------

/// Deterministic JSON description of a scenario check: stable key order, all
/// rationals as canonical strings, no timestamps or machine-specific data.
nlohmann::json verdict_json(const ScenarioCheck& check, const std::string& robogram,
                            const ConvergenceQuery& q);

nlohmann::json falsify_json(const FalsifyResult& result, const std::string& robogram,
                            const ConvergenceQuery& q);

// ---------------------------------------------------------------------------
// Commands (the CLI is a thin argv adapter over these).  Each returns the
// process exit code: verdict codes 0 / 10 / 20 / 30 where meaningful, 1 for
// a failed check of another kind, 2 for usage/file/parse errors.
// ---------------------------------------------------------------------------

struct RunOptions {
  std::string scenario_path;
  std::string trace_path;          // empty: no trace written
  std::string trace_format = "csv";  // "csv" or "jsonl"
  std::string verdict_path;        // empty: verdict JSON to stdout only
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> hold_window;
  std::optional<Rational> epsilon;
};
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

struct VerifyMorphOptions {
  std::string robogram;
  std::size_t good_count = 3;
  std::size_t byz_count = 1;
  std::size_t samples = 50;
  std::uint64_t permutation_samples = 200;
  std::uint64_t seed = 0;
};
int cmd_verify_morph(const VerifyMorphOptions& options, std::ostream& out, std::ostream& err);

struct FalsifyOptions {
  std::string scenario_path;
  std::string family = "pull";  // "pull" or "split"
  std::vector<Rational> deltas;  // empty: {1, 100} for pull, {100} for split
  std::vector<std::string> modes;  // pull only; empty: {"alt", "chase"}
  std::uint64_t k_bound = 2;       // split only
  std::string verdict_path;
  unsigned jobs = 1;
};
int cmd_falsify(const FalsifyOptions& options, std::ostream& out, std::ostream& err);

struct CheckFairnessOptions {
  std::string scenario_path;
  std::optional<std::uint64_t> horizon;
};
int cmd_check_fairness(const CheckFairnessOptions& options, std::ostream& out,
                       std::ostream& err);

int cmd_selftest(std::ostream& out, std::ostream& err);

}  // namespace roboline
