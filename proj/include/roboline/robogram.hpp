#pragma once

#include "roboline/geometry.hpp"
#include "roboline/population.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace roboline {

/// A robot's Compute phase: a pure map from the position it perceives (in its
/// own frame) to a destination (also in its own frame).  Robots are anonymous
/// and oblivious, so a well-formed robogram must factor through the sorted
/// observation multiset -- it may not read identifiers or any history.
struct Robogram {
  std::string name;
  /// Declared equivariance under frame changes: algo(k*(p - t)) ==
  /// k*(algo(p) - t) for every similarity (median: only k > 0, orientation
  /// flips swap lower and upper medians).  Consumed by the recurrence
  /// detector when deciding whether drift witnesses are sound.
  bool translation_equivariant = false;
  std::function<Location(const Position&)> algo;

  Location operator()(const Position& p) const { return algo(p); }
};

/// Midpoint of the extremes of the observation: (min + max) / 2.
/// Fully equivariant (any k != 0).  Throws std::invalid_argument on an empty
/// position.
Robogram midpoint_robogram();

/// Lower median of the observation: sorted index floor((n - 1) / 2).
/// Equivariant for k > 0 only.  Throws std::invalid_argument on an empty
/// position.
Robogram median_robogram();

/// Deliberately ill-formed: returns the location of good robot 0, which reads
/// an identifier and so depends on labelling.  Exists as a counterexample for
/// the anonymity checker.  Throws std::invalid_argument when there is no good
/// robot.
Robogram first_good_robogram();

/// Names accepted by find_robogram, in a fixed order.
const std::vector<std::string>& robogram_names();
std::optional<Robogram> find_robogram(std::string_view name);

struct MorphCounterexample {
  Position position;
  Permutation sigma;
  Location expected;  // value on the unpermuted position
  Location got;       // value after relabelling
};

struct MorphReport {
  bool pass = false;
  /// True when every permutation of the identifier space was tried;
  /// false when permutations were sampled.
  bool exhaustive = false;
  std::uint64_t permutations_tested = 0;
  std::size_t positions_tested = 0;
  std::optional<MorphCounterexample> counterexample;
};

/// Checks that the robogram is invariant under relabelling: for each supplied
/// position p and permutation sigma, algo(permute(p, sigma)) == algo(p).
/// Exhausts all permutations when total robots <= 6, otherwise draws
/// sample_count permutations per position from a seeded engine.  Stops at the
/// first counterexample.
MorphReport check_algomorph(const Robogram& r, const IdentSpace& space,
                            const std::vector<Position>& positions,
                            std::uint64_t sample_count = 200, std::uint64_t seed = 0);

}  // namespace roboline
