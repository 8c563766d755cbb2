#include "roboline/robogram.hpp"

#include <algorithm>
#include <stdexcept>

namespace roboline {

namespace {

std::vector<Location> require_observation(const Position& p) {
  auto obs = observation(p);
  if (obs.empty()) throw std::invalid_argument("robogram: empty position");
  return obs;
}

}  // namespace

Robogram midpoint_robogram() {
  Robogram r;
  r.name = "midpoint";
  r.translation_equivariant = true;
  r.algo = [](const Position& p) {
    auto obs = require_observation(p);
    return (obs.front() + obs.back()) / 2;
  };
  return r;
}

Robogram median_robogram() {
  Robogram r;
  r.name = "median";
  r.translation_equivariant = true;
  r.algo = [](const Position& p) {
    auto obs = require_observation(p);
    return obs[(obs.size() - 1) / 2];
  };
  return r;
}

Robogram first_good_robogram() {
  Robogram r;
  r.name = "first-good";
  r.translation_equivariant = false;
  r.algo = [](const Position& p) {
    if (p.good.empty()) throw std::invalid_argument("robogram: no good robots");
    return p.good[0];
  };
  return r;
}

const std::vector<std::string>& robogram_names() {
  static const std::vector<std::string> names = {"midpoint", "median", "first-good"};
  return names;
}

std::optional<Robogram> find_robogram(std::string_view name) {
  if (name == "midpoint") return midpoint_robogram();
  if (name == "median") return median_robogram();
  if (name == "first-good") return first_good_robogram();
  return std::nullopt;
}

MorphReport check_algomorph(const Robogram& r, const IdentSpace& space,
                            const std::vector<Position>& positions,
                            std::uint64_t sample_count, std::uint64_t seed) {
  MorphReport report;
  report.exhaustive = space.total() <= 6;

  std::vector<Permutation> pool;
  if (report.exhaustive) {
    pool = all_permutations(space.total());
    // Try small disturbances first so a failure is reported with a minimal
    // counterexample: identity, then single swaps, then larger rearrangements
    // (lexicographic within each class).
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Permutation& a, const Permutation& b) {
                       auto displaced = [](const Permutation& p) {
                         std::size_t d = 0;
                         for (std::size_t i = 0; i < p.size(); ++i) {
                           if (p.apply(i) != i) ++d;
                         }
                         return d;
                       };
                       return displaced(a) < displaced(b);
                     });
  }
  std::mt19937_64 rng(seed);

  for (const Position& p : positions) {
    if (p.space() != space) {
      throw std::invalid_argument("check_algomorph: position does not match identifier space");
    }
    ++report.positions_tested;
    Location expected = r(p);
    std::uint64_t draws = report.exhaustive ? pool.size() : sample_count;
    for (std::uint64_t i = 0; i < draws; ++i) {
      Permutation sigma =
          report.exhaustive ? pool[i] : random_permutation(space.total(), rng);
      ++report.permutations_tested;
      Location got = r(permute(p, sigma));
      if (got != expected) {
        report.pass = false;
        report.counterexample = MorphCounterexample{p, sigma, expected, got};
        return report;
      }
    }
  }
  report.pass = true;
  return report;
}

}  // namespace roboline
