#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "levi/laurent.hpp"
#include "levi/valuation.hpp"

namespace levi {

enum class Ordering { Less, Equal, Greater };

/// Truncated Laurent expansion: coefficients of eps^first ... eps^(precision-1).
struct Expansion {
  std::int64_t first = 0;  ///< lowest exponent; the valuation when the source is non-zero
  std::vector<Rat> coeffs;
  std::int64_t precision = 0;

  Rat coeff(std::int64_t exponent) const;
  /// "1 + e + e^2 + O(e^3)".
  std::string to_string() const;
};

/// Exact element of K = Q((eps)) given as a rational function num/den in eps.
///
/// Canonical form: den has a non-zero constant term equal to 1, every power
/// of eps lives in num, and gcd(core(num), den) = 1. Two elements are equal
/// iff their representations are equal. Immutable.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const Rat& q);  // NOLINT(implicit)
  FieldElement(std::int64_t n) : FieldElement(Rat(static_cast<long>(n))) {}  // NOLINT(implicit)
  explicit FieldElement(LaurentPoly num);
  /// num/den for an arbitrary non-zero Laurent polynomial den.
  FieldElement(const LaurentPoly& num, const LaurentPoly& den);

  static FieldElement epsilon();
  static FieldElement omega();
  /// c * eps^exponent.
  static FieldElement monomial(const Rat& c, std::int64_t exponent);

  bool is_zero() const { return num_.is_zero(); }
  /// True when the element is a Laurent polynomial (den = 1).
  bool is_polynomial() const { return poly::is_one(den_); }
  const LaurentPoly& numerator() const { return num_; }
  /// Denominator as an ordinary polynomial with constant term 1.
  const Poly& denominator() const { return den_; }

  Valuation valuation() const { return num_.valuation(); }
  /// Sign of the leading expansion coefficient: -1, 0 or +1.
  int sign() const;
  /// Coefficient of eps^valuation(); zero for zero.
  Rat leading_coefficient() const;

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
  FieldElement& operator/=(const FieldElement& b) { return *this = *this / b; }

  FieldElement inverse() const;
  /// Integer power; negative exponents need a non-zero base.
  FieldElement pow(std::int64_t exponent) const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Coefficients exact for exponents < precision, by Laurent long division.
  Expansion expand(std::int64_t precision) const;

  /// Laurent polynomial agreeing with this element below eps^precision.
  FieldElement truncated(std::int64_t precision) const;

  /// Canonical text, e.g. "(2*e)/(1 - e)"; parses back to the same element.
  std::string to_string() const;

 private:
  void canonicalize();

  LaurentPoly num_;
  Poly den_{Rat(1)};
};

FieldElement from_rational(const Rat& q);
inline FieldElement epsilon() { return FieldElement::epsilon(); }
inline FieldElement omega() { return FieldElement::omega(); }

inline Valuation valuation(const FieldElement& a) { return a.valuation(); }
Ordering compare(const FieldElement& a, const FieldElement& b);
FieldElement abs(const FieldElement& a);
/// a^n -> 0, i.e. valuation(a) >= 1.
bool is_topologically_nilpotent(const FieldElement& a);
inline Expansion expand(const FieldElement& a, std::int64_t precision) {
  return a.expand(precision);
}

inline bool operator<(const FieldElement& a, const FieldElement& b) {
  return compare(a, b) == Ordering::Less;
}
inline bool operator<=(const FieldElement& a, const FieldElement& b) {
  return compare(a, b) != Ordering::Greater;
}
inline bool operator>(const FieldElement& a, const FieldElement& b) { return b < a; }
inline bool operator>=(const FieldElement& a, const FieldElement& b) { return b <= a; }

/// n! as a rational.
Rat factorial(std::int64_t n);

/// Formats a Laurent polynomial in the text syntax ("1 - 2*e + e^-1").
std::string to_string(const LaurentPoly& p);

std::ostream& operator<<(std::ostream& os, const FieldElement& a);
std::ostream& operator<<(std::ostream& os, Ordering o);

}  // namespace levi
