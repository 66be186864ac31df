#pragma once

// PAC learners in the oracle model, the sample-backed oracle, a greedy
// decision-list learner, and the lift from a learner that needs delta and s
// to one that sees only the sample.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "occam/domain.hpp"
#include "occam/polynomial.hpp"
#include "occam/report.hpp"

namespace occam {

/// Accuracy and confidence handed to an oracle-model learner. Both lie in
/// (0, 1]; the upper end is reached by the lift at x = 1 or m = 1.
class PacParams {
 public:
  /// Throws std::invalid_argument outside (0, 1] or for n, s of zero.
  PacParams(double epsilon, double delta, unsigned n, std::uint64_t s);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  unsigned n() const { return n_; }
  std::uint64_t s() const { return s_; }

 private:
  double epsilon_;
  double delta_;
  unsigned n_;
  std::uint64_t s_;
};

/// EX(): each call returns one labelled point. Call i is a pure function of
/// (seed, i).
class Oracle {
 public:
  Oracle(LabeledSample sample, std::uint64_t seed);
  Oracle(Distribution dist, DecisionList target, std::uint64_t seed);

  LabeledPoint operator()();
  std::uint64_t calls() const { return calls_; }
  unsigned n() const;

 private:
  struct FromSample {
    LabeledSample sample;
  };
  struct FromDistribution {
    Distribution dist;
    DecisionList target;
  };

  std::variant<FromSample, FromDistribution> source_;
  std::uint64_t seed_;
  std::uint64_t calls_ = 0;
};

/// Uniform draws (probability 1/m each) from the sample. Throws on an empty sample.
Oracle oracle_from_sample(const LabeledSample& sample, std::uint64_t seed);

/// Greedy cover: repeatedly append the (term, label) of width <= width_max
/// that covers the most remaining examples and no remaining example of the
/// other label (ties to the lexicographically smaller term), then drop the
/// covered examples; stops once the rest share a label, which becomes the
/// default (0 when nothing is left). Throws LearnerFailure when no pure term
/// exists, i.e. the examples are not realisable at this width.
DecisionList greedy_consistent_list(std::span<const LabeledPoint> examples, unsigned n,
                                    unsigned width_max);

/// Draws `budget` examples from the oracle and fits them with
/// greedy_consistent_list.
DecisionList greedy_dl_learner(Oracle& oracle, const PacParams& params, std::uint64_t budget,
                               unsigned width_max);

enum class LearnerModel { oracle_known, functional_unknown };

/// A named learning procedure with its declared runtime bound T_L over
/// (inv_epsilon, inv_delta, n, s), counted in oracle calls.
struct LearnerSpec {
  std::string name;
  PolynomialBound runtime_bound;
  LearnerModel model = LearnerModel::oracle_known;
  std::function<DecisionList(Oracle&, const PacParams&)> run;
};

/// Oracle calls the learner is allowed: floor(T_L), at least 1.
std::uint64_t oracle_budget(const LearnerSpec& learner, const PacParams& params);

/// Built-ins: "greedy-dl" (T_L = (n s + 1/delta) / epsilon) and "stub0"
/// (always the constant-0 list, T_L = s). Throws std::invalid_argument for
/// other names.
LearnerSpec make_learner(std::string_view name, unsigned width_max = 2);
std::vector<std::string> learner_names();

/// Runs the learner on a grid of (epsilon, delta, n, s) with a uniform-
/// distribution oracle and reports measured calls against T_L.
std::vector<BoundReport> validate_runtime_bound(const LearnerSpec& learner,
                                                std::span<const PacParams> grid,
                                                std::uint64_t seed);

/// p(eps, n, x) = T_L(eps, 1/x, n, x) as a polynomial over (inv_epsilon, n, x).
PolynomialBound lift_polynomial(const PolynomialBound& runtime_bound);

/// q(eps, delta, n, s) = p(eps, n, 2 (1/delta + s)).
double lift_lower_bound_q(const PolynomialBound& p, double epsilon, double delta, unsigned n,
                          double s);

/// x with p(eps, n, x) <= m < p(eps, n, 2x), by doubling from 1; empty when
/// p(eps, n, 1) > m. p must have positive degree in x.
std::optional<std::uint64_t> x_search(const PolynomialBound& p, double epsilon, unsigned n,
                                      std::uint64_t m);

/// The fallback output of the lift: the constant-0 list.
DecisionList default_hypothesis(unsigned n);

struct LiftPlan {
  double epsilon = 1.0;
  std::optional<std::uint64_t> x;
};

/// epsilon = m^(-1/(k+1)) and the x chosen for it.
LiftPlan plan_lift(const LearnerSpec& learner, unsigned n, std::uint64_t m, unsigned k);

struct LiftResult {
  DecisionList hypothesis;
  LiftPlan plan;
  std::uint64_t oracle_calls = 0;
  bool used_default = false;
};

/// Runs the learner with s_in = x, delta_in = 1/x, epsilon_in = epsilon and an
/// oracle over the sample, or returns the default hypothesis when x does not
/// exist.
LiftResult lift_known_to_unknown(const LearnerSpec& learner, const LabeledSample& sample, unsigned k,
                                 std::uint64_t seed);

}  // namespace occam
