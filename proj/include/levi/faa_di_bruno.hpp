#pragma once

#include <cstdint>
#include <vector>

#include "levi/approx.hpp"
#include "levi/power_series.hpp"

namespace levi {

/// Partition of {1, ..., n}: blocks in increasing order of their least
/// element, each block sorted.
struct SetPartition {
  std::vector<std::vector<int>> blocks;

  std::size_t size() const { return blocks.size(); }
  bool operator==(const SetPartition&) const = default;
};

/// All partitions of {1, ..., n}, 1 <= n <= 12, via restricted growth strings.
std::vector<SetPartition> set_partitions(int n);

/// n-th derivative of f(g(x)): sum over partitions pi of
/// f^(|pi|)(g(x)) * prod_(B in pi) g^(|B|)(x).
/// f[m] = f^(m)(g(x)), g[h] = g^(h)(x); both need indices up to n.
FieldElement faa_di_bruno(const std::vector<FieldElement>& f, const std::vector<FieldElement>& g,
                          int n);
ApproxElement faa_di_bruno(const std::vector<ApproxElement>& f,
                           const std::vector<ApproxElement>& g, int n);

/// The individual partition terms, in set_partitions(n) order.
std::vector<ApproxElement> faa_di_bruno_terms(const std::vector<ApproxElement>& f,
                                              const std::vector<ApproxElement>& g, int n);

/// T^(m)(S(0)) for m <= n, each a certified sum of the derived series at S(0).
std::vector<ApproxElement> outer_derivatives(const PowerSeries& outer, const PowerSeries& inner,
                                             int n, std::int64_t precision);
/// S^(h)(0) = h! a_h for h <= n.
std::vector<ApproxElement> inner_derivatives(const PowerSeries& inner, int n);

/// D^n (T o S)(0) through the formula.
ApproxElement composite_derivative(const PowerSeries& outer, const PowerSeries& inner, int n,
                                   std::int64_t precision);

struct BlowupRow {
  int n = 0;
  ApproxElement derivative;          ///< D^n (T o S)(0)
  Valuation valuation;               ///< of the derivative, when determined
  bool valuation_certified = false;
  Rat leading;                       ///< coefficient of eps^valuation
  Valuation singletons;              ///< term of the all-singletons partition
  Valuation others;                  ///< least valuation over the other terms
  std::size_t others_at_minimum = 0; ///< other terms reaching the singletons' valuation

  /// Singletons term strictly below every other term.
  bool strictly_dominates() const { return singletons < others; }
};

/// S = eps - w X + w^2 X^2 + sum_(n>=3) eps^n X^n and T = sum X^n.
PowerSeries blowup_inner();
PowerSeries blowup_outer();

/// Rows n = 1..nmax, nmax <= 8.
std::vector<BlowupRow> blowup_example(int nmax, std::int64_t precision = 32);

}  // namespace levi
