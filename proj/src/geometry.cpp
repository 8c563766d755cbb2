#include "roboline/geometry.hpp"

#include <cctype>
#include <stdexcept>

namespace roboline {

namespace {

// Optionally-signed decimal integer, no whitespace, no empty digit run.
bool is_integer_literal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den.is_zero()) throw std::invalid_argument("rational: zero denominator");
  // cpp_rational's two-argument constructor rejects negative denominators, so
  // normalize the sign here; it canonicalizes the gcd itself.
  if (den < 0) {
    v_ = Backing(-num, -den);
  } else {
    v_ = Backing(num, den);
  }
}

Rational::Rational(std::string_view text) {
  auto parsed = parse(text);
  if (!parsed) {
    throw std::invalid_argument("rational: malformed literal \"" + std::string(text) + "\"");
  }
  v_ = parsed->v_;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!is_integer_literal(num) || !is_integer_literal(den)) return std::nullopt;
  BigInt n{std::string(num)};
  BigInt d{std::string(den)};
  if (d.is_zero()) return std::nullopt;
  return Rational(n, d);
}

std::string Rational::str() const {
  BigInt d = denominator();
  if (d == 1) return numerator().str();
  return numerator().str() + "/" + d.str();
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Similarity::Similarity(Rational k, Rational t) : k_(std::move(k)), t_(std::move(t)) {
  if (k_.is_zero()) throw std::invalid_argument("similarity: zero ratio");
}

Similarity compose(const Similarity& outer, const Similarity& inner) {
  return Similarity(inner.k() * outer.k(), inner.t() + outer.t() / inner.k());
}

}  // namespace roboline
