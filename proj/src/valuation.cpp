#include "levi/valuation.hpp"

#include "levi/error.hpp"

namespace levi {

std::int64_t Valuation::value() const {
  if (infinite_) throw Error("value() of infinite valuation");
  return value_;
}

std::string Valuation::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

Valuation scale(Valuation v, std::int64_t times) {
  if (times == 0) return Valuation(0);
  if (v.is_infinite()) return v;
  return Valuation(v.value() * times);
}

std::ostream& operator<<(std::ostream& os, Valuation v) { return os << v.to_string(); }

}  // namespace levi
