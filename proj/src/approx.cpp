#include "levi/approx.hpp"

namespace levi {

std::string ApproxElement::to_string() const {
  if (is_exact()) return head.to_string();
  return head.to_string() + " + O(e^" + tail.to_string() + ")";
}

bool congruent(const FieldElement& a, const FieldElement& b, std::int64_t precision) {
  if (a == b) return true;
  const Expansion ea = a.expand(precision);
  const Expansion eb = b.expand(precision);
  const std::int64_t lo = std::min(ea.first, eb.first);
  for (std::int64_t k = lo; k < precision; ++k) {
    if (ea.coeff(k) != eb.coeff(k)) return false;
  }
  return true;
}

bool equal_at(const ApproxElement& a, const ApproxElement& b, std::int64_t precision) {
  if (min(a.tail, b.tail) < Valuation(precision)) return false;
  return congruent(a.head, b.head, precision);
}

bool equal_at(const ApproxElement& a, const FieldElement& b, std::int64_t precision) {
  return equal_at(a, ApproxElement::exact(b), precision);
}

ApproxElement operator+(const ApproxElement& a, const ApproxElement& b) {
  return {a.head + b.head, min(a.tail, b.tail)};
}

ApproxElement operator-(const ApproxElement& a, const ApproxElement& b) {
  return {a.head - b.head, min(a.tail, b.tail)};
}

ApproxElement operator*(const ApproxElement& a, const ApproxElement& b) {
  // (h1 + d1)(h2 + d2) - h1 h2 = h1 d2 + h2 d1 + d1 d2
  const Valuation t = min(min(a.head.valuation() + b.tail, b.head.valuation() + a.tail),
                          a.tail + b.tail);
  return {a.head * b.head, t};
}

}  // namespace levi
