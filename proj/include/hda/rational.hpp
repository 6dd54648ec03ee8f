#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hda {

using Rational = mpq_class;
using Integer = mpz_class;
using Coords = std::vector<Rational>;

// Accepts "p", "p/q" and a leading '-'; the result is canonical.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& value);

// p / q in lowest terms.
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline Rational half() { return Rational(1, 2); }

inline bool is_zero_or_one(const Rational& x) { return x == 0 || x == 1; }

Rational l1_distance(std::span<const Rational> x, std::span<const Rational> y);

// Componentwise x <= y.
bool leq(std::span<const Rational> x, std::span<const Rational> y);

// (1 - s) * x + s * y, componentwise.
Coords lerp(std::span<const Rational> x, std::span<const Rational> y, const Rational& s);

}  // namespace hda
