#pragma once

#include <cstdint>
#include <random>

#include "levi/field.hpp"
#include "levi/double_series.hpp"
#include "levi/power_series.hpp"
#include "levi/series.hpp"

namespace levi::gen {

using Rng = std::mt19937_64;

/// Deterministic 64-bit mix of (seed, a, b); used to give random streams and
/// arrays pure entry functions.
std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// p/q with |p| <= max_num, 1 <= q <= max_den; never zero when nonzero is set.
Rat small_rational(Rng& rng, int max_num = 5, int max_den = 4, bool nonzero = false);
/// Same distribution, drawn from a hash value instead of an engine.
Rat hashed_rational(std::uint64_t h, int max_num = 5, int max_den = 4, bool nonzero = true);

/// Random Laurent polynomial with exponents in [low, low + terms).
LaurentPoly laurent(Rng& rng, std::int64_t low, int terms);

/// Random element of K: Laurent numerator over a denominator with non-zero
/// constant term (possibly zero when allow_zero).
FieldElement element(Rng& rng, bool allow_zero = true);

/// Stream q_n * eps^(n + d_n) with small rational q_n and d_n in {0,1,2};
/// certified by tail_bound(n) = n.
TermStream certified_stream(std::uint64_t seed);

/// Array q_ij * eps^(i + j + d_ij), d_ij in {0,1,2}; joint_bound(n) = n.
DoubleArray certified_array(std::uint64_t seed);

/// Series with a_j = q_j * eps^(slope*j + offset + d_j), d_j in {0,1,2},
/// carrying the affine bound (slope, offset). The constant term is replaced
/// by q * eps^c when constant is given, by zero when constant is empty.
PowerSeries certified_series(std::uint64_t seed, std::int64_t slope, std::int64_t offset,
                             std::optional<std::int64_t> constant);

struct SubstitutionInstance {
  PowerSeries outer;
  PowerSeries inner;
  FieldElement x;
  bool zero_constant = false;
};

/// Random (T, S, x) meeting the substitution hypotheses through their
/// affine bounds; the shape cycles with the seed.
SubstitutionInstance substitution_instance(std::uint64_t seed);

}  // namespace levi::gen
