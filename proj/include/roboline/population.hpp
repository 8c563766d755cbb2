#pragma once

#include "roboline/geometry.hpp"

#include <cstddef>
#include <random>
#include <vector>

namespace roboline {

/// Sizes of the two robot families.  Robots are anonymous: identifiers exist
/// only so the model can talk about "the same robot" across rounds; no
/// algorithm may depend on them.
struct IdentSpace {
  std::size_t good_count = 0;
  std::size_t byz_count = 0;

  std::size_t total() const { return good_count + byz_count; }

  friend bool operator==(const IdentSpace& a, const IdentSpace& b) {
    return a.good_count == b.good_count && a.byz_count == b.byz_count;
  }
  friend bool operator!=(const IdentSpace& a, const IdentSpace& b) { return !(a == b); }
};

enum class RobotKind { Good, Byz };

/// A robot identifier: family plus index within the family.  The flat
/// encoding used by permutations lists good robots first, then byzantine.
struct Ident {
  RobotKind kind = RobotKind::Good;
  std::size_t index = 0;

  static Ident good(std::size_t i) { return {RobotKind::Good, i}; }
  static Ident byz(std::size_t i) { return {RobotKind::Byz, i}; }

  friend bool operator==(const Ident& a, const Ident& b) {
    return a.kind == b.kind && a.index == b.index;
  }
};

std::size_t flat_index(const IdentSpace& space, Ident id);
Ident from_flat(const IdentSpace& space, std::size_t flat);

/// Total assignment of a location to every robot.
struct Position {
  std::vector<Location> good;
  std::vector<Location> byz;

  IdentSpace space() const { return {good.size(), byz.size()}; }

  friend bool operator==(const Position& a, const Position& b) {
    return a.good == b.good && a.byz == b.byz;
  }
  friend bool operator!=(const Position& a, const Position& b) { return !(a == b); }
};

/// Locations of the good robots only, indexed by good identifier.  This is
/// the quantity executions track: byzantine locations are chosen fresh by the
/// demon every round, so they are transient.
using GoodPositions = std::vector<Location>;

/// Bounds-checked lookup; throws std::out_of_range for an identifier outside
/// the position's space.
const Location& locate(const Position& p, Ident id);

/// Apply a frame change to every robot's location.
Position transform(const Similarity& s, const Position& p);

/// Bijection on flat robot identifiers 0..n-1.  Construction validates
/// bijectivity; the inverse is precomputed so both directions are O(1).
class Permutation {
 public:
  /// forward[i] = image of i.  Throws std::invalid_argument if not a bijection.
  explicit Permutation(std::vector<std::size_t> forward);

  static Permutation identity(std::size_t n);
  /// Swaps a and b, fixes everything else.
  static Permutation transposition(std::size_t n, std::size_t a, std::size_t b);

  std::size_t size() const { return fwd_.size(); }
  std::size_t apply(std::size_t i) const;
  std::size_t invert(std::size_t i) const;
  const std::vector<std::size_t>& forward() const { return fwd_; }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.fwd_ == b.fwd_;
  }

 private:
  std::vector<std::size_t> fwd_;
  std::vector<std::size_t> inv_;
};

/// Relabel robots: the robot called id in the result is the robot called
/// sigma^-1(id) in the input, so locate(permute(p, sigma), id) ==
/// locate(p, sigma^-1(id)).  Identifiers may cross the good/byz boundary;
/// only the flat vector of locations is shuffled.
Position permute(const Position& p, const Permutation& sigma);

/// What an anonymous observer sees: the multiset of occupied locations,
/// as a sorted vector (strong multiplicity detection keeps duplicates).
std::vector<Location> observation(const Position& p);

/// All n! permutations in lexicographic order of their forward vectors.
/// Guarded to n <= 8 to keep the output small.
std::vector<Permutation> all_permutations(std::size_t n);

Permutation random_permutation(std::size_t n, std::mt19937_64& rng);

}  // namespace roboline
