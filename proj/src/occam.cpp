#include "occam/occam.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace occam {

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
}

Rational occam_alpha(unsigned k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  const auto top = static_cast<std::int64_t>(k) * k + 2 * static_cast<std::int64_t>(k);
  return Rational::make(top, top + 1);
}

std::uint64_t compute_a_k(unsigned k, std::uint64_t scan_limit) {
  if (k == 0 || k > kMaxOccamK) throw std::invalid_argument("k must lie in [1, 8]");
  if (scan_limit < 2) throw std::invalid_argument("a_k scan limit must be at least 2");
  const double root = 1.0 / (k + 2.0);
  auto holds = [root](std::uint64_t y) {
    const auto v = static_cast<double>(y);
    return std::log2(v) < std::pow(v, root);
  };
  if (!holds(scan_limit)) {
    throw std::domain_error("log2 y < y^(1/" + std::to_string(k + 2) + ") fails at the scan limit " +
                            std::to_string(scan_limit) + "; no a_" + std::to_string(k) +
                            " within the scan");
  }
  if (!(std::pow(static_cast<double>(scan_limit), root) > (k + 2.0) / std::numbers::ln2)) {
    throw std::domain_error("the gap y^(1/(k+2)) - log2 y is not yet increasing at the scan limit");
  }
  std::uint64_t y0 = scan_limit;
  while (y0 > 1 && holds(y0 - 1)) --y0;
  return y0;
}

double occam_polynomial(unsigned n, std::uint64_t x, unsigned k, std::uint64_t a_k) {
  if (n == 0 || x == 0 || k == 0 || a_k == 0) {
    throw std::invalid_argument("occam_polynomial arguments must be positive");
  }
  const double kd = k;
  const double base = static_cast<double>(n) * static_cast<double>(x) * static_cast<double>(x);
  return static_cast<double>(a_k) * std::pow(kd, (kd + 2.0) / (kd + 1.0)) *
         std::pow(base, (kd * kd + 2.0 * kd) / (kd + 1.0));
}

double epsilon_schedule(std::uint64_t m, unsigned k) {
  if (m == 0 || k == 0) throw std::invalid_argument("epsilon schedule needs m, k >= 1");
  return std::pow(static_cast<double>(m), -1.0 / (k + 1.0));
}

double learner_dimension_bound(unsigned n, std::uint64_t x, double epsilon, unsigned k) {
  const double base = static_cast<double>(n) * static_cast<double>(x) * static_cast<double>(x);
  return (k / 2.0) * std::pow(base / epsilon, static_cast<double>(k));
}

double approx_occam_bound(unsigned n, std::uint64_t x, std::uint64_t m, unsigned k) {
  const double base = static_cast<double>(n) * static_cast<double>(x) * static_cast<double>(x);
  return (k / 2.0) * std::pow(base, static_cast<double>(k)) *
         std::pow(static_cast<double>(m), k / (k + 1.0));
}

double OccamParams::dimension_bound(unsigned n, std::uint64_t x, std::uint64_t m) const {
  return p_o(n, x) * std::pow(static_cast<double>(m), alpha.to_double());
}

OccamParams make_occam_params(unsigned k, std::uint64_t scan_limit) {
  if (k == 0 || k > kMaxOccamK) throw std::invalid_argument("k must lie in [1, 8]");
  return OccamParams{k, compute_a_k(k, scan_limit), occam_alpha(k)};
}

OccamRun occamize(const LearnerSpec& learner, const LabeledSample& sample, unsigned k,
                  std::uint64_t seed) {
  LiftResult lifted = lift_known_to_unknown(learner, sample, k, seed);
  ExceptionSet exceptions = compute_exceptions(lifted.hypothesis, sample);
  DecisionList repaired = ex_list(lifted.hypothesis, exceptions);
  return OccamRun{std::move(repaired), std::move(lifted.hypothesis), std::move(exceptions),
                  lifted.plan, lifted.oracle_calls, lifted.used_default};
}

BoundReport approx_occam_check(const LearnerSpec& learner, const LabeledSample& sample, unsigned k,
                               std::uint64_t seed) {
  const LiftResult lifted = lift_known_to_unknown(learner, sample, k, seed);
  const double m = static_cast<double>(sample.m());
  BoundReport r;
  r.lemma = "approx_occam";
  r.with("n", sample.n).with("m", m).with("k", k).with("epsilon", lifted.plan.epsilon);
  if (lifted.plan.x) r.with("x", static_cast<double>(*lifted.plan.x));
  std::uint64_t agree = 0;
  for (const auto& [x, label] : sample.pairs) agree += lifted.hypothesis(x) == label ? 1 : 0;
  r.observed = static_cast<double>(agree);
  r.bound = (1.0 - lifted.plan.epsilon) * m;
  if (lifted.plan.epsilon >= 1.0) {
    r.mode = "vacuous";
    r.pass = true;
  } else {
    r.pass = r.observed >= r.bound;
  }
  return r;
}

}  // namespace occam
