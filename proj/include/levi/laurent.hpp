#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "levi/valuation.hpp"

namespace levi {

/// Exact rational coefficient. mpq_class keeps numerator/denominator
/// gcd-reduced with a positive denominator once canonicalized.
using Rat = mpq_class;

/// Dense ordinary polynomial in eps, index = exponent. Trailing zeros are
/// stripped, so the zero polynomial is the empty vector.
using Poly = std::vector<Rat>;

namespace poly {

void trim(Poly& p);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Rat& s);

/// Euclidean division a = q*b + r with deg r < deg b. b must be non-zero.
void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);

/// Exact quotient; the remainder must be zero.
Poly exact_div(const Poly& a, const Poly& b);

/// Monic greatest common divisor; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

bool is_one(const Poly& p);

}  // namespace poly

/// Laurent polynomial c_0 eps^low + c_1 eps^(low+1) + ... with finite support.
///
/// Invariant: either zero (no coefficients) or both the first and the last
/// stored coefficient are non-zero, so low() is the valuation.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Rat& constant);
  LaurentPoly(std::int64_t low, Poly coeffs);

  static LaurentPoly monomial(const Rat& c, std::int64_t exponent);

  bool is_zero() const { return coeffs_.empty(); }
  Valuation valuation() const;
  std::int64_t low() const { return low_; }
  /// Highest exponent; low() - 1 for zero.
  std::int64_t high() const { return low_ + static_cast<std::int64_t>(coeffs_.size()) - 1; }
  /// Coefficients from exponent low() upwards; this is the "core" polynomial.
  const Poly& core() const { return coeffs_; }
  Rat coeff(std::int64_t exponent) const;
  const Rat& leading() const { return coeffs_.front(); }

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly scaled(const Rat& s) const;
  LaurentPoly shifted(std::int64_t by) const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize();

  std::int64_t low_ = 0;
  Poly coeffs_;
};

}  // namespace levi
