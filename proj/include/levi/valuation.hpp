#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace levi {

/// Valuation of an element of K: an integer, or +infinity for zero.
///
/// Arithmetic saturates at +infinity. Finite values are kept well away from
/// the int64 range so that sums of a handful of valuations cannot overflow.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr Valuation(std::int64_t v) : value_(v) {}  // NOLINT(implicit)

  static constexpr Valuation infinity() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; callers must check is_finite() first.
  std::int64_t value() const;

  friend constexpr bool operator==(Valuation a, Valuation b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

  friend constexpr Valuation operator+(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }
  friend constexpr Valuation operator-(Valuation a, std::int64_t b) {
    if (a.infinite_) return a;
    return Valuation(a.value_ - b);
  }

  std::string to_string() const;

 private:
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

constexpr Valuation min(Valuation a, Valuation b) { return b < a ? b : a; }
constexpr Valuation max(Valuation a, Valuation b) { return a < b ? b : a; }

/// Product of a valuation by a non-negative count, saturating at infinity.
Valuation scale(Valuation v, std::int64_t times);

std::ostream& operator<<(std::ostream& os, Valuation v);

}  // namespace levi
