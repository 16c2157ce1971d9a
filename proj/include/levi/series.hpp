#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "levi/approx.hpp"
#include "levi/field.hpp"

namespace levi {

/// Lower bound on valuations of a tail of terms, as a function of the index
/// where the tail starts. Must be non-decreasing.
using TailBound = std::function<Valuation(std::uint64_t)>;

/// Closed-form certificate: term(m + 1) = ratio * term(m) for every m >= from.
struct GeometricTail {
  std::uint64_t from = 0;
  FieldElement ratio;
};

/// Countable sequence of field elements, c_0, c_1, ...
///
/// tail_bound, when present, certifies valuation(term(m)) >= tail_bound(n)
/// for all m >= n. geometric, when present, certifies an exact geometric
/// tail. Both are claims by whoever built the stream; sampled terms that
/// contradict them raise CertificateViolation.
struct TermStream {
  std::function<FieldElement(std::uint64_t)> term;
  std::optional<TailBound> tail_bound;
  std::optional<GeometricTail> geometric;

  FieldElement operator()(std::uint64_t n) const { return term(n); }
};

struct SumOptions {
  /// Sampling window used by the divergence heuristic and certificate checks.
  std::uint64_t window = 64;
  /// Largest head length a certificate may demand before we give up.
  std::uint64_t max_terms = 1u << 14;
};

enum class CertificateKind { TailBound, Geometric, Finite };

struct Converges {
  ApproxElement sum;
  CertificateKind certificate = CertificateKind::TailBound;
  /// Number of terms summed exactly in the head.
  std::uint64_t terms = 0;
};

/// Every term from index `from` on has valuation <= floor (on the sampled
/// window, or provably when `certified`).
struct Diverges {
  std::uint64_t from = 0;
  Valuation floor;
  bool certified = false;
};

struct Unknown {
  std::vector<Valuation> profile;
  std::string reason;
};

/// Outcome of summing a series: a certified sum, a divergence witness, or an
/// honest "cannot tell".
class ConvergenceVerdict {
 public:
  ConvergenceVerdict(Converges c) : v_(std::move(c)) {}  // NOLINT(implicit)
  ConvergenceVerdict(Diverges d) : v_(std::move(d)) {}   // NOLINT(implicit)
  ConvergenceVerdict(Unknown u) : v_(std::move(u)) {}    // NOLINT(implicit)

  bool converges() const { return std::holds_alternative<Converges>(v_); }
  bool diverges() const { return std::holds_alternative<Diverges>(v_); }
  bool unknown() const { return std::holds_alternative<Unknown>(v_); }

  const Converges& as_converges() const { return std::get<Converges>(v_); }
  const Diverges& as_diverges() const { return std::get<Diverges>(v_); }
  const Unknown& as_unknown() const { return std::get<Unknown>(v_); }

  /// The certified sum; throws NotCertified otherwise.
  const ApproxElement& value() const;

  /// "converges", "diverges" or "unknown".
  std::string kind() const;
  std::string describe() const;

 private:
  std::variant<Converges, Diverges, Unknown> v_;
};

/// Exact sum of term(0) .. term(N).
FieldElement partial_sum(const TermStream& s, std::uint64_t last);

/// Sum to precision P. Converges only on a certificate; otherwise Diverges
/// when the sampled valuations stop growing, else Unknown.
ConvergenceVerdict sum(const TermStream& s, std::int64_t precision, const SumOptions& opts = {});

/// Lemma of splitting: c_n = plus(n) - minus(n) with both parts non-negative.
std::pair<TermStream, TermStream> split_pm(const TermStream& s);

/// A bijection of N given with its inverse. max_displacement, when known,
/// bounds |forward(n) - n| and lets certificates travel through reordering.
struct Bijection {
  std::function<std::uint64_t(std::uint64_t)> forward;
  std::function<std::uint64_t(std::uint64_t)> inverse;
  std::optional<std::uint64_t> max_displacement;

  static Bijection identity();
  /// Swaps 2k and 2k+1.
  static Bijection pair_swap();
  /// Reverses every block [b*k, b*k + b - 1].
  static Bijection block_reversal(std::uint64_t block = 4);
};

/// term'(n) = term(f(n)). Checks f and its inverse on the sampled window.
TermStream reorder(const TermStream& s, const Bijection& f, const SumOptions& opts = {});

/// term'(n) = term(2n) + term(2n+1).
TermStream group_pairs(const TermStream& s);

/// Comparison test: |b(n)| <= |a(n)| on the window, then b inherits a's
/// certificate. Throws DominationViolated otherwise.
ConvergenceVerdict dominated_convergence_check(const TermStream& a, const TermStream& b,
                                               std::int64_t precision,
                                               const SumOptions& opts = {});

/// The stream's certificate as a tail bound: tail_bound itself, or one
/// derived from a geometric tail with non-negative ratio valuation.
std::optional<TailBound> certified_tail_bound(const TermStream& s);

/// Term-by-term combinations with propagated certificates.
TermStream add(const TermStream& a, const TermStream& b);
TermStream negate(const TermStream& s);

/// Streams used throughout: finite support, and c * r^n with certificate.
TermStream finite_stream(std::vector<FieldElement> terms);
TermStream geometric_stream(const FieldElement& first, const FieldElement& ratio);
TermStream zero_stream();

}  // namespace levi
