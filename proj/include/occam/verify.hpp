#pragma once

// Empirical and exhaustive checks: effective hypothesis spaces of learners and
// of the Occam construction, the consistency/error bound by Monte Carlo, and
// the VC-dimension bounds of the construction measured on small domains.
//
// Trial t of a batch always uses derive_seed(seed, t), so results do not depend
// on the number of worker threads.

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "occam/domain.hpp"
#include "occam/learners.hpp"
#include "occam/occam.hpp"
#include "occam/report.hpp"
#include "occam/vc.hpp"

namespace occam::verify {

/// Calls body(i) for i in [0, count) on up to `jobs` threads. The first
/// exception thrown by any call is rethrown after all workers stop.
template <class Body>
void parallel_for(std::uint64_t count, unsigned jobs, Body&& body) {
  if (jobs <= 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  {
    std::vector<std::jthread> workers;
    const auto n = static_cast<unsigned>(std::min<std::uint64_t>(jobs, count));
    for (unsigned w = 0; w < n; ++w) workers.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

struct Interval {
  double lower = 0.0;
  double upper = 1.0;
  double half_width() const { return (upper - lower) / 2.0; }
};

/// Wilson score interval for a binomial proportion at z standard deviations.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 3.0);

/// One representative list per distinct truth table of the class, in
/// enumeration order.
std::vector<DecisionList> distinct_targets(const ConceptClassDescriptor& desc,
                                           std::uint64_t cap = kDefaultEnumerationCap);

/// A hypothesis-producing procedure over samples; `plan` (optional) reports
/// the epsilon and x the procedure uses at (n, m).
struct Procedure {
  std::string id;
  std::function<DecisionList(const LabeledSample&, std::uint64_t)> run;
  std::function<LiftPlan(unsigned, std::uint64_t)> plan;
};

Procedure constant_procedure(bool label);
/// The lifted learner's raw output (no exception repair).
Procedure lifted_procedure(const LearnerSpec& learner, unsigned k);
/// occamize.
Procedure occam_procedure(const LearnerSpec& learner, unsigned k);

enum class SpaceMode { exhaustive, sampled };
std::string_view to_string(SpaceMode mode);

struct Provenance {
  std::string procedure;
  ConceptClassDescriptor desc;
  std::uint64_t m = 0;
  double epsilon = 1.0;
  std::optional<std::uint64_t> x;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t runs = 0;
};

/// The set of hypotheses a procedure emits on m-samples of targets from the
/// class. Exhaustive mode covers every (distinct target, ordered m-tuple of
/// points) with the procedure seed fixed to `seed`; its VC dimension is exact.
/// Sampled mode draws `trials` (target, uniform m-sample, procedure seed)
/// triples; its VC dimension is a lower bound.
struct EffectiveSpace {
  vc::FiniteClass hypotheses;
  SpaceMode mode;
  Provenance provenance;
};

/// Throws CapExceeded in exhaustive mode when targets * (2^n)^m exceeds cap.
EffectiveSpace effective_space(const Procedure& procedure, const ConceptClassDescriptor& desc,
                               std::uint64_t m, SpaceMode mode, std::uint64_t trials,
                               std::uint64_t seed, unsigned jobs = 1,
                               std::uint64_t cap = kDefaultEnumerationCap);

/// Sampled image of the oracle-model learner run at (epsilon, delta = 1/x,
/// n, s = x) against uniform-distribution oracles for targets of the class.
/// Learner failures are skipped and counted in provenance.runs deficit.
EffectiveSpace learner_effective_space(const LearnerSpec& learner, const ConceptClassDescriptor& desc,
                                       std::uint64_t x, double epsilon, std::uint64_t trials,
                                       std::uint64_t seed, unsigned jobs = 1);

/// Monte Carlo estimate of P[some hypothesis of the class is consistent with
/// an m-sample yet has error > epsilon], against 2 tau(2m) 2^(-epsilon m / 2).
/// Every trial scans the whole class. Passes when the estimate is within the
/// bound plus the 3-sigma Wilson half-width, or when the bound is >= 1
/// (vacuous).
BoundReport check_lemma3(const ConceptClassDescriptor& desc, const DecisionList& target,
                         const Distribution& dist, std::uint64_t m, double epsilon,
                         std::uint64_t trials, std::uint64_t seed, unsigned jobs = 1);

struct LearnerGridPoint {
  unsigned n = 1;
  std::uint64_t x = 1;
  double epsilon = 0.5;
};

/// measured VCdim(learner space) + 2 <= (k/2) (n x^2 / epsilon)^k per grid
/// point. Targets come from `desc` with n replaced by the grid point's n.
std::vector<BoundReport> check_eq1_k(const LearnerSpec& learner, unsigned k,
                                     std::span<const LearnerGridPoint> grid,
                                     const ConceptClassDescriptor& desc, std::uint64_t trials,
                                     std::uint64_t seed, unsigned jobs = 1);

/// For an Occam effective space: the chain d_O / log2 d_O <= (k/2)(n x^2 /
/// eps)^k + eps m (vacuous when d_O <= 1) and the endpoint d_O <= p_O(n, x)
/// m^alpha. When the lift fell back to the default hypothesis (no x), x = 1
/// is used, where p_O is smallest.
std::vector<BoundReport> check_eq4_chain(const EffectiveSpace& occam_space, const OccamParams& params);

/// Per m: the endpoint bound on a sampled Occam space, with d_O / m recorded
/// as the parameter d_over_m.
std::vector<BoundReport> sublinearity_trend(const Procedure& procedure,
                                            const ConceptClassDescriptor& desc,
                                            std::span<const std::uint64_t> m_grid,
                                            const OccamParams& params, std::uint64_t trials,
                                            std::uint64_t seed, unsigned jobs = 1);

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t target_id = 0;
  std::uint64_t sample_digest = 0;
  std::uint64_t output_digest = 0;
  std::uint64_t exceptions = 0;
  double epsilon = 1.0;
  std::optional<std::uint64_t> x;
  bool consistent = false;
  std::uint64_t oracle_calls = 0;
  std::string error;
};

inline constexpr std::string_view kTrialCsvHeader =
    "trial,seed,target_id,sample_digest,output_digest,exceptions,epsilon,x,consistent,oracle_calls,error";

/// Seeded occamize runs: target drawn from the distinct targets of the class,
/// uniform m-sample. Learner errors are recorded in the row, not thrown.
std::vector<TrialRecord> run_occam_trials(const LearnerSpec& learner,
                                          const ConceptClassDescriptor& desc, std::uint64_t m,
                                          unsigned k, std::uint64_t trials, std::uint64_t seed,
                                          unsigned jobs = 1);

std::string trials_to_csv(std::span<const TrialRecord> records);

/// Frequency of |E| <= eps m over occamize trials, compared with 1 - 1/x
/// (the confidence the lifted learner is run at). Passes unless the 3-sigma
/// Wilson upper bound falls below it; vacuous when the lift has no x.
BoundReport check_exception_budget(const LearnerSpec& learner, const ConceptClassDescriptor& desc,
                                   std::uint64_t m, unsigned k, std::uint64_t trials,
                                   std::uint64_t seed, unsigned jobs = 1);

/// Approximate-Occam view of the unrepaired lifted learner: agreement rate
/// with >= (1 - eps) m points (same pass rule as check_exception_budget) and
/// the sampled space dimension against (k/2)(n x^2)^k m^(k/(k+1)).
std::vector<BoundReport> check_approx_occam(const LearnerSpec& learner,
                                            const ConceptClassDescriptor& desc, std::uint64_t m,
                                            unsigned k, std::uint64_t trials, std::uint64_t seed,
                                            unsigned jobs = 1);

/// Random (c, E) pairs with n in [1, n_max]: exhaustive truth-table check of
/// ExList(c, E) = c xor E, of the involution, and of the exact size formula.
/// Observed values are failure counts (bound 0).
std::vector<BoundReport> check_exlist(unsigned n_max, std::uint64_t trials, std::uint64_t seed);

}  // namespace occam::verify
