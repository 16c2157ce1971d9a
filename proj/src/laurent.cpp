#include "levi/laurent.hpp"

#include <algorithm>

#include "levi/error.hpp"

namespace levi {
namespace poly {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k];
  for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k];
  for (std::size_t k = 0; k < b.size(); ++k) r[k] -= b[k];
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

Poly scale(const Poly& a, const Rat& s) {
  if (s == 0) return {};
  Poly r(a);
  for (auto& c : r) c *= s;
  return r;
}

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.empty()) throw DivisionByZero();
  r = a;
  trim(r);
  q.clear();
  if (r.size() < b.size()) return;
  q.assign(r.size() - b.size() + 1, Rat(0));
  const Rat inv_lead = 1 / Rat(b.back());
  for (std::size_t k = r.size(); k-- >= b.size();) {
    if (r[k] == 0) continue;
    const Rat t = r[k] * inv_lead;
    const std::size_t shift = k + 1 - b.size();
    q[shift] = t;
    for (std::size_t m = 0; m < b.size(); ++m) r[shift + m] -= t * b[m];
  }
  trim(q);
  trim(r);
}

Poly exact_div(const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(a, b, q, r);
  if (!r.empty()) throw Error("inexact polynomial division");
  return q;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    Poly q, r;
    divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
    if (!y.empty()) y = scale(y, 1 / Rat(y.back()));
  }
  if (!x.empty()) x = scale(x, 1 / Rat(x.back()));
  return x;
}

bool is_one(const Poly& p) { return p.size() == 1 && p[0] == 1; }

}  // namespace poly

LaurentPoly::LaurentPoly(const Rat& constant) : low_(0), coeffs_{constant} { normalize(); }

LaurentPoly::LaurentPoly(std::int64_t low, Poly coeffs) : low_(low), coeffs_(std::move(coeffs)) {
  normalize();
}

LaurentPoly LaurentPoly::monomial(const Rat& c, std::int64_t exponent) {
  return LaurentPoly(exponent, Poly{c});
}

void LaurentPoly::normalize() {
  for (auto& c : coeffs_) c.canonicalize();
  poly::trim(coeffs_);
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<std::int64_t>(lead);
  }
  if (coeffs_.empty()) low_ = 0;
}

Valuation LaurentPoly::valuation() const {
  return is_zero() ? Valuation::infinity() : Valuation(low_);
}

Rat LaurentPoly::coeff(std::int64_t exponent) const {
  if (exponent < low_ || exponent > high()) return Rat(0);
  return coeffs_[static_cast<std::size_t>(exponent - low_)];
}

LaurentPoly LaurentPoly::operator-() const { return scaled(Rat(-1)); }

namespace {

// Aligns both operands to a common lowest exponent.
Poly aligned(const LaurentPoly& p, std::int64_t base) {
  Poly out(static_cast<std::size_t>(p.low() - base), Rat(0));
  out.insert(out.end(), p.core().begin(), p.core().end());
  return out;
}

}  // namespace

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t base = std::min(a.low_, b.low_);
  return LaurentPoly(base, poly::add(aligned(a, base), aligned(b, base)));
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  const std::int64_t base = std::min(a.low_, b.low_);
  return LaurentPoly(base, poly::sub(aligned(a, base), aligned(b, base)));
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return LaurentPoly(a.low_ + b.low_, poly::mul(a.coeffs_, b.coeffs_));
}

LaurentPoly LaurentPoly::scaled(const Rat& s) const {
  if (s == 0 || is_zero()) return {};
  LaurentPoly r;
  r.low_ = low_;
  r.coeffs_ = poly::scale(coeffs_, s);
  return r;
}

LaurentPoly LaurentPoly::shifted(std::int64_t by) const {
  if (is_zero()) return {};
  LaurentPoly r = *this;
  r.low_ += by;
  return r;
}

}  // namespace levi
