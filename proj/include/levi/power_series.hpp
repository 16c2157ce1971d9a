#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "levi/approx.hpp"
#include "levi/double_series.hpp"
#include "levi/series.hpp"

namespace levi {

/// v(a_j) >= slope * j + offset for every j.
struct AffineBound {
  std::int64_t slope = 0;
  std::int64_t offset = 0;

  Valuation at(std::uint64_t j) const {
    return Valuation(slope * static_cast<std::int64_t>(j) + offset);
  }
};

/// Formal power series sum a_j X^j over K.
///
/// Certificates, each optional: an affine valuation bound, a degree (a_j = 0
/// beyond it), and a geometric tail a_(j+1) = ratio * a_j from some index.
struct PowerSeries {
  std::function<FieldElement(std::uint64_t)> coeff;
  std::optional<AffineBound> bound;
  std::optional<std::uint64_t> degree;
  std::optional<GeometricTail> geometric;

  FieldElement operator()(std::uint64_t j) const {
    if (degree && j > *degree) return FieldElement();
    return coeff(j);
  }

  /// Finite series; bound and degree are filled in from the coefficients.
  static PowerSeries polynomial(std::vector<FieldElement> coeffs);
  /// a_j = first * ratio^j, with affine bound when ratio is a monomial-like
  /// element (its valuation is exact for every power).
  static PowerSeries geometric_series(const FieldElement& first, const FieldElement& ratio);
};

/// Terms a_j x^j with certificates transported from the series.
TermStream terms_at(const PowerSeries& s, const FieldElement& x);

/// S(x) as a certified sum, a divergence witness, or Unknown.
ConvergenceVerdict eval(const PowerSeries& s, const FieldElement& x, std::int64_t precision,
                        const SumOptions& opts = {});

/// S(k) for a point known only up to its tail; the perturbation
/// S(k) - S(head) is bounded through the affine bound (or the degree).
ConvergenceVerdict eval(const PowerSeries& s, const ApproxElement& x, std::int64_t precision,
                        const SumOptions& opts = {});

PowerSeries cauchy_product(const PowerSeries& a, const PowerSeries& b);
PowerSeries abs_series(const PowerSeries& s);
/// Coefficients (-1)^j a_j, so that S(-x) = alternate_signs(S)(x).
PowerSeries alternate_signs(const PowerSeries& s);
/// n-th formal derivative: coefficient j is (j+n)!/j! * a_(j+n).
PowerSeries formal_derivative(const PowerSeries& s, std::uint64_t n);

/// c_ij = coefficient of X^j in S(X)^i, grown row by row with
/// c_(i+1, j) = c_i0 a_j + c_i1 a_(j-1) + ... + c_ij a_0.
///
/// Rows are computed lazily under a lock; copies share the cache.
class PowerTable {
 public:
  PowerTable(const PowerSeries& s, std::uint64_t max_column);

  FieldElement at(std::uint64_t i, std::uint64_t j) const;
  std::vector<FieldElement> row(std::uint64_t i) const;
  std::uint64_t max_column() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

PowerTable power_table(const PowerSeries& s, std::uint64_t max_row, std::uint64_t max_column);

/// d_j = sum_i b_i c_ij for j <= max_j, each as its own verdict.
struct ExpectedCoefficients {
  std::vector<ConvergenceVerdict> d;

  const ConvergenceVerdict& operator[](std::size_t j) const { return d[j]; }
  bool all_converge() const;
};

ExpectedCoefficients expected_coefficients(const PowerSeries& outer, const PowerSeries& inner,
                                           std::uint64_t max_j, std::int64_t precision,
                                           const SumOptions& opts = {});

/// Single expected coefficient d_j over an existing table of inner powers.
ConvergenceVerdict expected_coefficient(const PowerSeries& outer, const PowerSeries& inner,
                                        const PowerTable& table, std::uint64_t j,
                                        std::int64_t precision, const SumOptions& opts = {});

/// Two-stage evaluation k = S(x), then T(k); no reordering.
ConvergenceVerdict composite_eval(const PowerSeries& outer, const PowerSeries& inner,
                                  const FieldElement& x, std::int64_t precision,
                                  const SumOptions& opts = {});

enum class SubstitutionOutcome {
  Certified,        ///< both hypotheses hold and T(k) = sum d_j x^j was checked
  InnerDiverges,    ///< hypothesis (i): S(x) not certified
  OuterDiverges,    ///< hypothesis (ii): T not certified at k-bar
  Inconclusive,     ///< hypotheses hold but the certificates cannot sum d_j x^j
};

struct SubstitutionReport {
  SubstitutionOutcome outcome = SubstitutionOutcome::Inconclusive;
  std::string detail;
  std::optional<ApproxElement> k;        ///< S(x)
  std::optional<ApproxElement> k_bar;    ///< S-bar(|x|)
  std::optional<ConvergenceVerdict> outer_at_k_bar;
  std::optional<ApproxElement> by_coefficients;  ///< sum_j d_j x^j
  std::optional<ApproxElement> composite;        ///< T(S(x))
  std::uint64_t coefficients_used = 0;
  bool agree = false;

  bool certified() const { return outcome == SubstitutionOutcome::Certified; }
  /// 1 or 2 for a failed hypothesis, 0 otherwise.
  int failed_hypothesis() const;
};

SubstitutionReport substitution_criterion(const PowerSeries& outer, const PowerSeries& inner,
                                          const FieldElement& x, std::int64_t precision,
                                          const SumOptions& opts = {});

/// Valuation threshold V: for every x with valuation(x) >= V the
/// substitution criterion certifies.
struct RadiusReport {
  bool ok = false;
  std::int64_t threshold = 0;
  std::string detail;
};

RadiusReport neighborhood_radius(const PowerSeries& outer, const PowerSeries& inner,
                                 std::int64_t precision, const SumOptions& opts = {});

std::string to_string(SubstitutionOutcome o);

}  // namespace levi
