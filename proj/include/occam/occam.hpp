#pragma once

// Occam algorithm built from a PAC learner: run the lifted learner on the
// sample, then repair every sample error with an exception list. Also the
// constants of the resulting VC-dimension bound d_O <= p_O(n, x) m^alpha.

#include <compare>
#include <cstdint>
#include <optional>

#include "occam/domain.hpp"
#include "occam/exception_list.hpp"
#include "occam/learners.hpp"
#include "occam/report.hpp"

namespace occam {

/// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

inline constexpr unsigned kMaxOccamK = 8;
inline constexpr std::uint64_t kDefaultAkScanLimit = std::uint64_t{1} << 20;

/// alpha = (k^2 + 2k) / (k^2 + 2k + 1).
Rational occam_alpha(unsigned k);

/// Smallest y0 such that log2 y < y^(1/(k+2)) for every integer y in
/// [y0, scan_limit]; beyond the scan the inequality persists because the gap
/// is increasing once y^(1/(k+2)) > (k+2)/ln 2, which is checked at the limit.
/// Throws std::domain_error when either condition fails at scan_limit.
std::uint64_t compute_a_k(unsigned k, std::uint64_t scan_limit = kDefaultAkScanLimit);

/// p_O(n, x) = a_k k^((k+2)/(k+1)) (n x^2)^((k^2+2k)/(k+1)).
double occam_polynomial(unsigned n, std::uint64_t x, unsigned k, std::uint64_t a_k);

/// epsilon(m) = m^(-1/(k+1)).
double epsilon_schedule(std::uint64_t m, unsigned k);

/// (k/2) (n x^2 / epsilon)^k: the assumed cap on d + 2 for the learner's
/// hypothesis space.
double learner_dimension_bound(unsigned n, std::uint64_t x, double epsilon, unsigned k);

/// (k/2) (n x^2)^k m^(k/(k+1)): VC bound for the unrepaired lifted learner.
double approx_occam_bound(unsigned n, std::uint64_t x, std::uint64_t m, unsigned k);

struct OccamParams {
  unsigned k = 2;
  std::uint64_t a_k = 0;
  Rational alpha;

  double epsilon(std::uint64_t m) const { return epsilon_schedule(m, k); }
  double p_o(unsigned n, std::uint64_t x) const { return occam_polynomial(n, x, k, a_k); }
  /// p_O(n, x) m^alpha
  double dimension_bound(unsigned n, std::uint64_t x, std::uint64_t m) const;
};

/// Throws std::invalid_argument for k outside [1, kMaxOccamK].
OccamParams make_occam_params(unsigned k, std::uint64_t scan_limit = kDefaultAkScanLimit);

struct OccamRun {
  DecisionList hypothesis;
  DecisionList raw;
  ExceptionSet exceptions;
  LiftPlan plan;
  std::uint64_t oracle_calls = 0;
  bool used_default = false;
};

/// Consistent with the sample by construction.
OccamRun occamize(const LearnerSpec& learner, const LabeledSample& sample, unsigned k,
                  std::uint64_t seed);

/// Whether the unrepaired lifted output agrees with at least (1 - eps) m
/// sample points. Observed and bound are point counts; vacuous at eps = 1.
BoundReport approx_occam_check(const LearnerSpec& learner, const LabeledSample& sample, unsigned k,
                               std::uint64_t seed);

}  // namespace occam
