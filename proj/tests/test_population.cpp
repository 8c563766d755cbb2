#include "roboline/population.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace roboline;

namespace {

Position sample_position() {
  return Position{{Rational(3), Rational(1)}, {Rational(1)}};
}

Position random_position(std::mt19937_64& rng, std::size_t good, std::size_t byz) {
  Position p;
  for (std::size_t i = 0; i < good; ++i) {
    p.good.push_back(Rational(static_cast<long long>(rng() % 41) - 20));
  }
  for (std::size_t i = 0; i < byz; ++i) {
    p.byz.push_back(Rational(static_cast<long long>(rng() % 41) - 20));
  }
  return p;
}

}  // namespace

TEST_CASE("identifiers map to and from flat indices") {
  IdentSpace space{2, 3};
  CHECK(space.total() == 5);
  CHECK(flat_index(space, Ident::good(1)) == 1);
  CHECK(flat_index(space, Ident::byz(0)) == 2);
  CHECK(from_flat(space, 4) == Ident::byz(2));
  CHECK(from_flat(space, 0) == Ident::good(0));
  CHECK_THROWS_AS(flat_index(space, Ident::good(2)), std::out_of_range);
  CHECK_THROWS_AS(from_flat(space, 5), std::out_of_range);
}

TEST_CASE("locate is bounds-checked") {
  Position p = sample_position();
  CHECK(locate(p, Ident::good(0)) == Rational(3));
  CHECK(locate(p, Ident::byz(0)) == Rational(1));
  CHECK_THROWS_AS(locate(p, Ident::byz(1)), std::out_of_range);
}

TEST_CASE("observation is the sorted multiset of all locations") {
  Position p = sample_position();
  std::vector<Location> obs = observation(p);
  REQUIRE(obs.size() == 3);
  CHECK(obs[0] == Rational(1));
  CHECK(obs[1] == Rational(1));  // multiplicity preserved
  CHECK(obs[2] == Rational(3));
}

TEST_CASE("transform applies the similarity to every robot") {
  Position p = sample_position();
  Position q = transform(Similarity(2, 1), p);
  CHECK(q.good[0] == Rational(4));
  CHECK(q.good[1] == Rational(0));
  CHECK(q.byz[0] == Rational(0));
}

TEST_CASE("permutations validate bijectivity") {
  CHECK_THROWS_AS(Permutation({0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 2}), std::invalid_argument);
  Permutation sigma({2, 0, 1});
  CHECK(sigma.apply(0) == 2);
  CHECK(sigma.invert(2) == 0);
  CHECK(Permutation::transposition(3, 0, 2).apply(0) == 2);
  CHECK(Permutation::identity(3).apply(1) == 1);
}

TEST_CASE("permute relabels so locate(q, id) == locate(p, inverse(id))") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t good = 1 + rng() % 3;
    std::size_t byz = rng() % 3;
    Position p = random_position(rng, good, byz);
    IdentSpace space = p.space();
    Permutation sigma = random_permutation(space.total(), rng);
    Position q = permute(p, sigma);
    for (std::size_t flat = 0; flat < space.total(); ++flat) {
      CHECK(locate(q, from_flat(space, flat)) ==
            locate(p, from_flat(space, sigma.invert(flat))));
    }
    // Relabelling never changes what an anonymous observer sees.
    CHECK(observation(q) == observation(p));
  }
}

TEST_CASE("permute round-trips through the inverse permutation") {
  std::mt19937_64 rng(29);
  Position p = random_position(rng, 3, 2);
  Permutation sigma = random_permutation(5, rng);
  std::vector<std::size_t> inverse_forward(5);
  for (std::size_t i = 0; i < 5; ++i) inverse_forward[sigma.apply(i)] = i;
  CHECK(permute(permute(p, sigma), Permutation(inverse_forward)) == p);
}

TEST_CASE("all_permutations enumerates n! distinct permutations") {
  auto perms = all_permutations(3);
  CHECK(perms.size() == 6);
  for (std::size_t i = 0; i < perms.size(); ++i) {
    for (std::size_t j = i + 1; j < perms.size(); ++j) {
      CHECK(!(perms[i] == perms[j]));
    }
  }
  CHECK(all_permutations(0).size() == 1);  // the empty permutation
  CHECK_THROWS_AS(all_permutations(9), std::invalid_argument);
}

TEST_CASE("permutation size mismatch is rejected") {
  Position p = sample_position();  // 3 robots
  CHECK_THROWS_AS(permute(p, Permutation::identity(2)), std::invalid_argument);
}
