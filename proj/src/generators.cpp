#include "levi/generators.hpp"

namespace levi::gen {

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over a simple combination
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xc2b2ae3d27d4eb4fULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rat small_rational(Rng& rng, int max_num, int max_den, bool nonzero) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  int p = num(rng);
  while (nonzero && p == 0) p = num(rng);
  Rat q(p, den(rng));
  q.canonicalize();
  return q;
}

Rat hashed_rational(std::uint64_t h, int max_num, int max_den, bool nonzero) {
  const int span = nonzero ? 2 * max_num : 2 * max_num + 1;
  int p = static_cast<int>(h % static_cast<std::uint64_t>(span)) - max_num;
  if (nonzero && p >= 0) ++p;
  const int q = 1 + static_cast<int>((h >> 32) % static_cast<std::uint64_t>(max_den));
  Rat r(p, q);
  r.canonicalize();
  return r;
}

LaurentPoly laurent(Rng& rng, std::int64_t low, int terms) {
  Poly c;
  for (int k = 0; k < terms; ++k) c.push_back(small_rational(rng));
  return LaurentPoly(low, std::move(c));
}

FieldElement element(Rng& rng, bool allow_zero) {
  std::uniform_int_distribution<int> low(-2, 2);
  std::uniform_int_distribution<int> terms(1, 3);
  std::uniform_int_distribution<int> den_terms(0, 2);
  for (;;) {
    LaurentPoly num = laurent(rng, low(rng), terms(rng));
    if (num.is_zero() && !allow_zero) continue;
    Poly den{small_rational(rng, 4, 3, true)};
    const int extra = den_terms(rng);
    for (int k = 0; k < extra; ++k) den.push_back(small_rational(rng, 3, 2));
    return FieldElement(num, LaurentPoly(0, std::move(den)));
  }
}

TermStream certified_stream(std::uint64_t seed) {
  TermStream s;
  s.term = [seed](std::uint64_t n) {
    const std::uint64_t h = mix(seed, n);
    const auto shift = static_cast<std::int64_t>(n + (h >> 60) % 3);
    return FieldElement::monomial(hashed_rational(h), shift);
  };
  s.tail_bound = [](std::uint64_t n) { return Valuation(static_cast<std::int64_t>(n)); };
  return s;
}

DoubleArray certified_array(std::uint64_t seed) {
  DoubleArray d;
  d.entry = [seed](std::uint64_t i, std::uint64_t j) {
    const std::uint64_t h = mix(seed, i, j);
    const auto shift = static_cast<std::int64_t>(i + j + (h >> 60) % 3);
    return FieldElement::monomial(hashed_rational(h), shift);
  };
  d.joint_bound = [](std::uint64_t n) { return Valuation(static_cast<std::int64_t>(n)); };
  return d;
}

PowerSeries certified_series(std::uint64_t seed, std::int64_t slope, std::int64_t offset,
                             std::optional<std::int64_t> constant) {
  PowerSeries s;
  s.coeff = [=](std::uint64_t j) {
    const std::uint64_t h = mix(seed, j, 7);
    if (j == 0 && !constant) return FieldElement();
    const std::int64_t shift = j == 0 ? *constant : static_cast<std::int64_t>(h % 3);
    const std::int64_t base = j == 0 ? 0 : slope * static_cast<std::int64_t>(j) + offset;
    return FieldElement::monomial(hashed_rational(h >> 8), base + shift);
  };
  const std::int64_t low = constant ? std::min(offset, *constant) : offset;
  s.bound = AffineBound{slope, low};
  return s;
}

SubstitutionInstance substitution_instance(std::uint64_t seed) {
  Rng rng(mix(seed, 0xc0ffee));
  SubstitutionInstance out;
  const Rat c = small_rational(rng, 5, 4, true);
  switch (seed % 3) {
    case 0:
      out.outer = certified_series(mix(seed, 1), 0, 0, 0);
      out.inner = certified_series(mix(seed, 2), 0, 0, std::nullopt);
      out.x = FieldElement::monomial(c, 1 + static_cast<std::int64_t>(rng() % 2));
      out.zero_constant = true;
      break;
    case 1:
      out.outer = certified_series(mix(seed, 1), 0, 0, 0);
      out.inner = certified_series(mix(seed, 2), 0, 0, 1);
      out.x = FieldElement::monomial(c, 1) / (FieldElement(1) - FieldElement::epsilon());
      break;
    default:
      out.outer = certified_series(mix(seed, 1), -1, 0, 0);
      out.inner = certified_series(mix(seed, 2), 0, 1, 2);
      out.x = FieldElement::monomial(c, 1 + static_cast<std::int64_t>(rng() % 2));
      break;
  }
  return out;
}

}  // namespace levi::gen
