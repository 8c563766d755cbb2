#include "roboline/population.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace roboline {

std::size_t flat_index(const IdentSpace& space, Ident id) {
  if (id.kind == RobotKind::Good) {
    if (id.index >= space.good_count) throw std::out_of_range("ident: good index out of range");
    return id.index;
  }
  if (id.index >= space.byz_count) throw std::out_of_range("ident: byz index out of range");
  return space.good_count + id.index;
}

Ident from_flat(const IdentSpace& space, std::size_t flat) {
  if (flat < space.good_count) return Ident::good(flat);
  if (flat < space.total()) return Ident::byz(flat - space.good_count);
  throw std::out_of_range("ident: flat index out of range");
}

const Location& locate(const Position& p, Ident id) {
  if (id.kind == RobotKind::Good) {
    if (id.index >= p.good.size()) throw std::out_of_range("locate: good index out of range");
    return p.good[id.index];
  }
  if (id.index >= p.byz.size()) throw std::out_of_range("locate: byz index out of range");
  return p.byz[id.index];
}

Position transform(const Similarity& s, const Position& p) {
  Position out;
  out.good.reserve(p.good.size());
  out.byz.reserve(p.byz.size());
  for (const Location& x : p.good) out.good.push_back(s.apply(x));
  for (const Location& x : p.byz) out.byz.push_back(s.apply(x));
  return out;
}

Permutation::Permutation(std::vector<std::size_t> forward) : fwd_(std::move(forward)) {
  inv_.assign(fwd_.size(), fwd_.size());
  for (std::size_t i = 0; i < fwd_.size(); ++i) {
    std::size_t img = fwd_[i];
    if (img >= fwd_.size() || inv_[img] != fwd_.size()) {
      throw std::invalid_argument("permutation: forward map is not a bijection");
    }
    inv_[img] = i;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> f(n);
  std::iota(f.begin(), f.end(), std::size_t{0});
  return Permutation(std::move(f));
}

Permutation Permutation::transposition(std::size_t n, std::size_t a, std::size_t b) {
  if (a >= n || b >= n) throw std::invalid_argument("transposition: index out of range");
  auto p = identity(n);
  std::swap(p.fwd_[a], p.fwd_[b]);
  std::swap(p.inv_[p.fwd_[a]], p.inv_[p.fwd_[b]]);
  return p;
}

std::size_t Permutation::apply(std::size_t i) const {
  if (i >= fwd_.size()) throw std::out_of_range("permutation: index out of range");
  return fwd_[i];
}

std::size_t Permutation::invert(std::size_t i) const {
  if (i >= inv_.size()) throw std::out_of_range("permutation: index out of range");
  return inv_[i];
}

Position permute(const Position& p, const Permutation& sigma) {
  IdentSpace space = p.space();
  if (sigma.size() != space.total()) {
    throw std::invalid_argument("permute: permutation size does not match population");
  }
  Position out = p;
  for (std::size_t flat = 0; flat < space.total(); ++flat) {
    const Location& src = locate(p, from_flat(space, sigma.invert(flat)));
    Ident dst = from_flat(space, flat);
    (dst.kind == RobotKind::Good ? out.good[dst.index] : out.byz[dst.index]) = src;
  }
  return out;
}

std::vector<Location> observation(const Position& p) {
  std::vector<Location> all;
  all.reserve(p.good.size() + p.byz.size());
  all.insert(all.end(), p.good.begin(), p.good.end());
  all.insert(all.end(), p.byz.begin(), p.byz.end());
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<Permutation> all_permutations(std::size_t n) {
  if (n > 8) throw std::invalid_argument("all_permutations: n too large to enumerate");
  std::vector<std::size_t> f(n);
  std::iota(f.begin(), f.end(), std::size_t{0});
  std::vector<Permutation> out;
  do {
    out.emplace_back(f);
  } while (std::next_permutation(f.begin(), f.end()));
  return out;
}

Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> f(n);
  std::iota(f.begin(), f.end(), std::size_t{0});
  // Fisher-Yates with an explicit engine so results are reproducible across
  // platforms (std::shuffle's distribution is implementation-defined).
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(f[i - 1], f[j]);
  }
  return Permutation(std::move(f));
}

}  // namespace roboline
