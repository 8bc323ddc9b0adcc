#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace semik {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Scalar of the max-plus semifield: an exact rational, or NEG_INF (the
// additive zero).  No floating point anywhere.
class Trop {
public:
  Trop() : finite_(false) {}
  explicit Trop(Rational v) : finite_(true), v_(std::move(v)) {}
  explicit Trop(long v) : finite_(true), v_(v) {}

  static Trop neg_inf() { return Trop(); }
  static Trop zero() { return Trop(); }            // additive identity
  static Trop one() { return Trop(Rational(0)); }  // multiplicative identity

  bool finite() const { return finite_; }
  const Rational& value() const { return v_; }  // valid only when finite

  friend bool operator==(const Trop& a, const Trop& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.v_ == b.v_;
  }
  friend bool operator!=(const Trop& a, const Trop& b) { return !(a == b); }
  // total order with NEG_INF at the bottom; doubles as the semiring addition
  friend bool operator<(const Trop& a, const Trop& b) {
    if (!a.finite_) return b.finite_;
    if (!b.finite_) return false;
    return a.v_ < b.v_;
  }

private:
  bool finite_;
  Rational v_;
};

inline Trop trop_add(const Trop& a, const Trop& b) { return a < b ? b : a; }

inline Trop trop_mul(const Trop& a, const Trop& b) {
  if (!a.finite() || !b.finite()) return Trop::neg_inf();
  return Trop(a.value() + b.value());
}

// "p", "p/q" (q > 0 after normalization) or "-inf"; rejects anything else
std::optional<Trop> parse_trop(const std::string& s);
std::optional<Rational> parse_rational(const std::string& s);
std::optional<Int> parse_int(const std::string& s);

std::string format_trop(const Trop& t);
std::string format_rational(const Rational& r);

}  // namespace semik
