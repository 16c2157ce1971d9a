#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levi/approx.hpp"
#include "levi/series.hpp"

namespace levi {

struct Cell {
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Tail bound of one line (row or column): valuation lower bound of the
/// entries from position n onwards in line `line`.
using LineBound = std::function<Valuation(std::uint64_t line, std::uint64_t n)>;
/// Geometric-tail certificate for a single row or column, when it has one.
using LineGeometric = std::function<std::optional<GeometricTail>(std::uint64_t line)>;

/// Entries a_ij indexed by N^2.
///
/// joint_bound(n) certifies valuation(a_ij) >= joint_bound(n) whenever
/// i + j >= n. row_bound / column_bound certify single lines and are used
/// when no joint bound exists (a divergent double series can still have
/// convergent rows).
struct DoubleArray {
  std::function<FieldElement(std::uint64_t, std::uint64_t)> entry;
  std::optional<TailBound> joint_bound;
  std::optional<LineBound> row_bound;
  std::optional<LineBound> column_bound;
  std::optional<LineGeometric> row_geometric;
  std::optional<LineGeometric> column_geometric;

  FieldElement operator()(std::uint64_t i, std::uint64_t j) const { return entry(i, j); }
};

/// Bijection N -> N^2 with its inverse. exhaustion(k) is the largest n such
/// that every cell with i + j < n is among the first k indices.
struct Pairing {
  std::function<Cell(std::uint64_t)> to_pair;
  std::function<std::uint64_t(Cell)> from_pair;
  std::function<std::uint64_t(std::uint64_t)> exhaustion;

  /// Diagonal by diagonal, each walked with increasing j.
  static Pairing cantor();
  /// Diagonal by diagonal, alternating direction.
  static Pairing boustrophedon();
};

/// Increasing exhaustion I_0 ⊂ I_1 ⊂ ... of N^2 by finite subsets.
struct GoursatChain {
  std::function<std::vector<Cell>(std::uint64_t)> subset;

  /// [0, n]^2
  static GoursatChain squares();
  /// {i + j <= n}
  static GoursatChain triangles();
  /// First n + 1 cells of a pairing; S_n are then its partial sums.
  static GoursatChain from_pairing(const Pairing& p);
};

/// Partition of N^2 into parts J_0, J_1, ...
struct PartitionOfGrid {
  std::function<std::uint64_t(Cell)> part_of;
  /// t-th cell of part r, or nullopt past the end of a finite part.
  std::function<std::optional<Cell>(std::uint64_t r, std::uint64_t t)> enumerate_part;

  static PartitionOfGrid rows();
  static PartitionOfGrid columns();
  static PartitionOfGrid antidiagonals();
  /// Two parts by parity of i + j.
  static PartitionOfGrid parity();
  /// Each cell assigned to one of `parts` parts by a hash of (seed, i, j).
  static PartitionOfGrid hashed(std::uint64_t seed, std::uint64_t parts);
};

TermStream linearize(const DoubleArray& d, const Pairing& p, const SumOptions& opts = {});

TermStream row_stream(const DoubleArray& d, std::uint64_t i);
TermStream column_stream(const DoubleArray& d, std::uint64_t j);
ConvergenceVerdict row_sum(const DoubleArray& d, std::uint64_t i, std::int64_t precision,
                           const SumOptions& opts = {});
ConvergenceVerdict column_sum(const DoubleArray& d, std::uint64_t j, std::int64_t precision,
                              const SumOptions& opts = {});

/// The double sum through the Cantor pairing.
ConvergenceVerdict double_sum(const DoubleArray& d, std::int64_t precision,
                              const SumOptions& opts = {});

struct FubiniTriple {
  ApproxElement linearized;
  ApproxElement by_rows;
  ApproxElement by_columns;
};

/// Linearized, row-iterated and column-iterated sums. Throws NotCertified
/// unless the array carries a joint bound.
FubiniTriple fubini_sum(const DoubleArray& d, std::int64_t precision, const SumOptions& opts = {});

/// Result of checking a theorem's hypotheses. failed_hypothesis is 0 when
/// every hypothesis was certified; `verdict` is then the certified
/// conclusion, otherwise the verdict of the series that failed.
struct CriterionReport {
  int failed_hypothesis = 0;
  std::string detail;
  ConvergenceVerdict verdict;

  bool holds() const { return failed_hypothesis == 0; }
};

/// Converse Fubini: (1) every sampled row converges, (2) the iterated
/// series of row absolute sums converges. Rows checked: opts.window.
CriterionReport converse_criterion(const DoubleArray& d, std::int64_t precision,
                                   const SumOptions& opts = {});

/// Limit of S_n = sum over I_n, certified once I_n holds every cell whose
/// joint bound is still below P.
ApproxElement goursat_sum(const DoubleArray& d, const GoursatChain& chain, std::int64_t precision,
                          const SumOptions& opts = {});

/// Outer series over r of the restricted sums over J_r.
ApproxElement partition_sum(const DoubleArray& d, const PartitionOfGrid& parts,
                            std::int64_t precision, const SumOptions& opts = {});

/// Sum of b_ij = a_ij on J, 0 elsewhere.
ApproxElement restricted_sum(const DoubleArray& d, const std::function<bool(Cell)>& member,
                             std::int64_t precision, const SumOptions& opts = {});

/// Double series b_i c_j; equals (sum b)(sum c).
ApproxElement product_series(const TermStream& b, const TermStream& c, std::int64_t precision,
                             const SumOptions& opts = {});
DoubleArray product_array(const TermStream& b, const TermStream& c);

/// k_0 = (1 - 2eps)/(1 - eps), k_i = eps^i, summing to 1.
TermStream counterexample_weights();
/// a_i0 = 1 - k_0, a_ij = -k_j: rows sum to 0, column 0 diverges.
DoubleArray build_counterexample();

}  // namespace levi
