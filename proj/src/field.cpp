#include "levi/field.hpp"

#include <sstream>

#include "levi/error.hpp"

namespace levi {

namespace {

LaurentPoly div_core(const LaurentPoly& n, const Poly& g) {
  if (poly::is_one(g)) return n;
  return LaurentPoly(n.low(), poly::exact_div(n.core(), g));
}

std::string rat_text(const Rat& q) { return q.get_str(); }

}  // namespace

Rat Expansion::coeff(std::int64_t exponent) const {
  if (exponent < first || exponent >= first + static_cast<std::int64_t>(coeffs.size())) {
    return Rat(0);
  }
  return coeffs[static_cast<std::size_t>(exponent - first)];
}

std::string Expansion::to_string() const {
  LaurentPoly p(first, coeffs);
  std::string body = levi::to_string(p);
  std::string tail = "O(" + levi::to_string(LaurentPoly::monomial(Rat(1), precision)) + ")";
  if (p.is_zero()) return tail;
  return body + " + " + tail;
}

FieldElement::FieldElement(const Rat& q) : num_(q) {}

FieldElement::FieldElement(LaurentPoly num) : num_(std::move(num)) {}

FieldElement::FieldElement(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw DivisionByZero();
  num_ = num.shifted(-den.low());
  den_ = den.core();
  canonicalize();
}

void FieldElement::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly{Rat(1)};
    return;
  }
  if (!poly::is_one(den_)) {
    const Poly g = poly::gcd(num_.core(), den_);
    if (g.size() > 1) {
      num_ = div_core(num_, g);
      den_ = poly::exact_div(den_, g);
    }
  }
  const Rat c = den_.front();
  if (c != 1) {
    const Rat inv = 1 / c;
    num_ = num_.scaled(inv);
    den_ = poly::scale(den_, inv);
  }
}

FieldElement FieldElement::epsilon() { return monomial(Rat(1), 1); }
FieldElement FieldElement::omega() { return monomial(Rat(1), -1); }

FieldElement FieldElement::monomial(const Rat& c, std::int64_t exponent) {
  return FieldElement(LaurentPoly::monomial(c, exponent));
}

int FieldElement::sign() const { return is_zero() ? 0 : sgn(num_.leading()); }

Rat FieldElement::leading_coefficient() const { return is_zero() ? Rat(0) : num_.leading(); }

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  r.num_ = -num_;
  return r;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  FieldElement r;
  if (a.den_ == b.den_) {
    r.num_ = a.num_ + b.num_;
    r.den_ = a.den_;
    r.canonicalize();
    return r;
  }
  const Poly g = poly::gcd(a.den_, b.den_);
  const Poly da = poly::exact_div(a.den_, g);
  const Poly db = poly::exact_div(b.den_, g);
  r.num_ = a.num_ * LaurentPoly(0, db) + b.num_ * LaurentPoly(0, da);
  r.den_ = poly::mul(da, b.den_);
  if (r.num_.is_zero()) {
    r.den_ = Poly{Rat(1)};
    return r;
  }
  // Only factors of g can be shared with the new numerator.
  const Poly g2 = poly::gcd(r.num_.core(), g);
  if (g2.size() > 1) {
    r.num_ = div_core(r.num_, g2);
    r.den_ = poly::exact_div(r.den_, g2);
  }
  const Rat c = r.den_.front();
  if (c != 1) {
    r.num_ = r.num_.scaled(1 / c);
    r.den_ = poly::scale(r.den_, 1 / c);
  }
  return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (a.is_zero() || b.is_zero()) return FieldElement();
  FieldElement r;
  if (a.is_polynomial() && b.is_polynomial()) {
    r.num_ = a.num_ * b.num_;
    return r;
  }
  const Poly g1 = poly::is_one(b.den_) ? Poly{Rat(1)} : poly::gcd(a.num_.core(), b.den_);
  const Poly g2 = poly::is_one(a.den_) ? Poly{Rat(1)} : poly::gcd(b.num_.core(), a.den_);
  r.num_ = div_core(a.num_, g1) * div_core(b.num_, g2);
  const Poly da = poly::is_one(g2) ? a.den_ : poly::exact_div(a.den_, g2);
  const Poly db = poly::is_one(g1) ? b.den_ : poly::exact_div(b.den_, g1);
  r.den_ = poly::mul(da, db);
  const Rat c = r.den_.front();
  if (c != 1) {
    r.num_ = r.num_.scaled(1 / c);
    r.den_ = poly::scale(r.den_, 1 / c);
  }
  return r;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DivisionByZero();
  FieldElement r;
  const Rat c = num_.leading();
  r.num_ = LaurentPoly(-num_.low(), poly::scale(den_, 1 / c));
  r.den_ = poly::scale(num_.core(), 1 / c);
  return r;
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  if (b.is_zero()) throw DivisionByZero();
  return a * b.inverse();
}

FieldElement FieldElement::pow(std::int64_t exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  FieldElement result(1);
  FieldElement base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

Expansion FieldElement::expand(std::int64_t precision) const {
  Expansion out;
  out.precision = precision;
  if (is_zero()) {
    out.first = precision;
    return out;
  }
  out.first = num_.low();
  if (precision <= out.first) return out;
  const auto count = static_cast<std::size_t>(precision - out.first);
  const Poly& n = num_.core();
  out.coeffs.assign(count, Rat(0));
  for (std::size_t k = 0; k < count; ++k) {
    Rat acc = k < n.size() ? n[k] : Rat(0);
    const std::size_t top = std::min(k, den_.size() - 1);
    for (std::size_t i = 1; i <= top; ++i) acc -= den_[i] * out.coeffs[k - i];
    out.coeffs[k] = acc;
  }
  return out;
}

FieldElement FieldElement::truncated(std::int64_t precision) const {
  if (is_polynomial()) {
    if (num_.is_zero() || num_.high() < precision) return *this;
  }
  Expansion e = expand(precision);
  return FieldElement(LaurentPoly(e.first, std::move(e.coeffs)));
}

std::string FieldElement::to_string() const {
  if (is_polynomial()) return levi::to_string(num_);
  return "(" + levi::to_string(num_) + ")/(" + levi::to_string(LaurentPoly(0, den_)) + ")";
}

FieldElement from_rational(const Rat& q) { return FieldElement(q); }

Ordering compare(const FieldElement& a, const FieldElement& b) {
  if (a == b) return Ordering::Equal;
  return (a - b).sign() > 0 ? Ordering::Greater : Ordering::Less;
}

FieldElement abs(const FieldElement& a) { return a.sign() < 0 ? -a : a; }

bool is_topologically_nilpotent(const FieldElement& a) { return a.valuation() >= Valuation(1); }

Rat factorial(std::int64_t n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(f);
}

std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::int64_t k = p.low(); k <= p.high(); ++k) {
    const Rat c = p.coeff(k);
    if (c == 0) continue;
    const Rat mag = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << rat_text(mag);
      continue;
    }
    if (mag != 1) os << rat_text(mag) << "*";
    os << "e";
    if (k != 1) os << "^" << k;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.to_string(); }

std::ostream& operator<<(std::ostream& os, Ordering o) {
  switch (o) {
    case Ordering::Less: return os << "LT";
    case Ordering::Equal: return os << "EQ";
    case Ordering::Greater: return os << "GT";
  }
  return os;
}

}  // namespace levi
