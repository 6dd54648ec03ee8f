#include "hda/rational.hpp"

#include <cctype>

#include "hda/error.hpp"

namespace hda {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw FormatError("malformed rational '" + std::string(text) + "'");
  }
  Integer d(std::string(den), 10);
  if (d == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
  Rational r(Integer(std::string(num), 10), d);
  r.canonicalize();
  if (text.front() == '-') r = -r;
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

Rational l1_distance(std::span<const Rational> x, std::span<const Rational> y) {
  Rational sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += abs(x[i] - y[i]);
  return sum;
}

bool leq(std::span<const Rational> x, std::span<const Rational> y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > y[i]) return false;
  }
  return true;
}

Coords lerp(std::span<const Rational> x, std::span<const Rational> y, const Rational& s) {
  Coords out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + s * (y[i] - x[i]);
  return out;
}

}  // namespace hda
