#pragma once

// Exact shattering-based VC machinery on finite classes of truth tables, and
// checkers for the combinatorial bounds the Occam construction relies on.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "occam/domain.hpp"
#include "occam/report.hpp"

namespace occam::vc {

inline constexpr std::uint64_t kDefaultWorkCap = 200'000'000;

/// Logarithm base used by the bound checkers. Base 2 unless overridden.
struct LogBase {
  double base = 2.0;

  double operator()(double v) const {
    return base == 2.0 ? std::log2(v) : std::log(v) / std::log(base);
  }
  static LogBase two() { return {2.0}; }
  static LogBase natural() { return {std::exp(1.0)}; }
};

/// Nonempty set of distinct concepts on X_n, each a truth table of length 2^n.
class FiniteClass {
 public:
  /// Sorts and deduplicates. Throws std::invalid_argument on an empty input and
  /// DimensionMismatch on a table of the wrong length.
  FiniteClass(unsigned n, std::vector<TruthTable> concepts);

  static FiniteClass from_concepts(unsigned n, std::span<const DecisionList> concepts);
  /// All 2^(2^n) concepts; n <= 4.
  static FiniteClass power_set(unsigned n);

  unsigned n() const { return n_; }
  std::uint32_t domain_size() const { return std::uint32_t{1} << n_; }
  std::size_t size() const { return concepts_.size(); }
  std::span<const TruthTable> concepts() const { return concepts_; }

 private:
  unsigned n_;
  std::vector<TruthTable> concepts_;
};

/// `size` distinct uniformly drawn concepts on X_n (requires size <= 2^(2^n)
/// when n <= 5); a pure function of the seed.
FiniteClass random_class(unsigned n, std::size_t size, std::uint64_t seed);

/// Pi_C(S): the distinct labelings of S (as a sorted set, bit j = label of the
/// j-th smallest point) realised by concepts of the class.
std::vector<TruthTable> restriction(const FiniteClass& cls, std::span<const Point> points);

bool is_shattered(const FiniteClass& cls, std::span<const Point> points);

struct VcReport {
  unsigned d = 0;
  std::vector<Point> witness;
  /// Every candidate of size d + 1 was ruled out (always true unless the search
  /// hit its work cap).
  bool certificate_no_larger = true;
  std::uint64_t shatter_checks = 0;
};

/// Largest shattered set. Searches shattered sets in lexicographic order,
/// extending only shattered sets and never beyond floor(log2 |C|) points.
VcReport vc_dimension(const FiniteClass& cls, std::uint64_t work_cap = kDefaultWorkCap);

/// One concept, or two complementary concepts.
bool is_trivial(const FiniteClass& cls);

/// tau(m): largest |Pi_C(S)| over m-point sets. Samples of m > 2^n points
/// contain at most 2^n distinct points, so tau(m) = tau(2^n) there. Throws
/// CapExceeded when C(2^n, m) * |C| exceeds work_cap.
std::uint64_t growth_function(const FiniteClass& cls, std::uint64_t m,
                              std::uint64_t work_cap = kDefaultWorkCap);

/// Maximum over `subsets` random m-point sets: a certified lower bound on tau(m).
std::uint64_t growth_function_lower_bound(const FiniteClass& cls, std::uint64_t m,
                                          std::uint64_t subsets, std::uint64_t seed);

/// H^{xor,l} = { h xor E : h in H, |E| <= l }.
FiniteClass exception_expand(const FiniteClass& cls, unsigned l,
                             std::uint64_t cap = kDefaultEnumerationCap);

double binomial(std::uint64_t m, std::uint64_t i);
/// sum_{i=0}^{d} C(m, i)
double sauer_binomial_bound(std::uint64_t m, unsigned d);
/// (e m / d)^d, meaningful for d >= 1 and m >= d + 1
double sauer_exponential_bound(std::uint64_t m, unsigned d);
/// m^d + 1
double sauer_polynomial_bound(std::uint64_t m, unsigned d);

/// Three reports per m (binomial, exponential, polynomial forms); the
/// exponential form is vacuous when d = 0 or m < d + 1.
std::vector<BoundReport> check_sauer(const FiniteClass& cls, std::span<const std::uint64_t> m_values,
                                     std::uint64_t work_cap = kDefaultWorkCap);

/// d_l / log d_l <= d + l + 2 for the exception expansion; vacuous if d_l < 2.
BoundReport check_exception_dim_bound(const FiniteClass& cls, unsigned l, LogBase base = {},
                                      std::uint64_t cap = kDefaultEnumerationCap);

/// VCdim(C) <= log |C|.
BoundReport check_vc_log_bound(const FiniteClass& cls, LogBase base = {});

}  // namespace occam::vc
