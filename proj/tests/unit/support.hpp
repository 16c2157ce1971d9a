#pragma once

#include <string>
#include <vector>

#include "levi/field.hpp"

namespace levi::test {

inline FieldElement e() { return FieldElement::epsilon(); }
inline FieldElement w() { return FieldElement::omega(); }
inline FieldElement q(long p, long d = 1) {
  Rat r(p, d);
  r.canonicalize();
  return FieldElement(r);
}
inline FieldElement geo() { return FieldElement(1) / (FieldElement(1) - e()); }

inline std::vector<Rat> rats(std::initializer_list<long> xs) {
  std::vector<Rat> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace levi::test
