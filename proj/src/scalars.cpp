#include "semik/scalars.hpp"

#include <cctype>

namespace semik {

namespace {

bool all_digits(const std::string& s, size_t from, size_t to) {
  if (from >= to) return false;
  for (size_t i = from; i < to; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

std::optional<Int> parse_int(const std::string& s) {
  size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (!all_digits(s, start, s.size())) return std::nullopt;
  // no leading zeros except "0" itself, so formatting round-trips exactly
  if (s.size() - start > 1 && s[start] == '0') return std::nullopt;
  Int v(s);
  return v;
}

std::optional<Rational> parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    auto n = parse_int(s);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto num = parse_int(s.substr(0, slash));
  auto den = parse_int(s.substr(slash + 1));
  if (!num || !den || *den <= 0) return std::nullopt;
  return Rational(*num) / Rational(*den);
}

std::optional<Trop> parse_trop(const std::string& s) {
  if (s == "-inf") return Trop::neg_inf();
  auto r = parse_rational(s);
  if (!r) return std::nullopt;
  return Trop(*r);
}

std::string format_rational(const Rational& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) {
    out += '/';
    out += denominator(r).str();
  }
  return out;
}

std::string format_trop(const Trop& t) {
  if (!t.finite()) return "-inf";
  return format_rational(t.value());
}

}  // namespace semik
