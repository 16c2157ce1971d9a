#pragma once

#include <cstdint>
#include <string>

#include "levi/field.hpp"

namespace levi {

/// A value of K known up to a certified error: value - head has valuation
/// at least tail. tail = infinity means head is the exact value.
struct ApproxElement {
  FieldElement head;
  Valuation tail = Valuation::infinity();

  static ApproxElement exact(FieldElement v) { return {std::move(v), Valuation::infinity()}; }

  bool is_exact() const { return tail.is_infinite(); }

  /// Valuation of the true value when it is determined, i.e. when the head's
  /// valuation lies strictly below the tail; otherwise the tail itself,
  /// which is then only a lower bound.
  Valuation valuation_lower_bound() const { return min(head.valuation(), tail); }
  bool valuation_known() const { return head.valuation() < tail; }

  std::string to_string() const;
};

/// True iff both values are certified to precision P and agree modulo eps^P.
bool equal_at(const ApproxElement& a, const ApproxElement& b, std::int64_t precision);
bool equal_at(const ApproxElement& a, const FieldElement& b, std::int64_t precision);
/// Agreement of two exact elements modulo eps^P.
bool congruent(const FieldElement& a, const FieldElement& b, std::int64_t precision);

ApproxElement operator+(const ApproxElement& a, const ApproxElement& b);
ApproxElement operator-(const ApproxElement& a, const ApproxElement& b);
ApproxElement operator*(const ApproxElement& a, const ApproxElement& b);

}  // namespace levi
