#include "occam/learners.hpp"

#include <cmath>
#include <limits>

#include "occam/occam.hpp"
#include "occam/rng.hpp"

namespace occam {

PacParams::PacParams(double epsilon, double delta, unsigned n, std::uint64_t s)
    : epsilon_(epsilon), delta_(delta), n_(n), s_(s) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
  if (n == 0 || s == 0) throw std::invalid_argument("n and s must be positive");
}

Oracle::Oracle(LabeledSample sample, std::uint64_t seed)
    : source_(FromSample{std::move(sample)}), seed_(seed) {
  if (std::get<FromSample>(source_).sample.pairs.empty()) {
    throw std::invalid_argument("an oracle needs a nonempty sample");
  }
}

Oracle::Oracle(Distribution dist, DecisionList target, std::uint64_t seed)
    : source_(FromDistribution{std::move(dist), std::move(target)}), seed_(seed) {
  const auto& src = std::get<FromDistribution>(source_);
  if (src.dist.n() != src.target.n()) {
    throw DimensionMismatch("oracle distribution and target dimensions differ");
  }
}

unsigned Oracle::n() const {
  return std::visit(
      [](const auto& src) -> unsigned {
        if constexpr (std::is_same_v<std::decay_t<decltype(src)>, FromSample>) {
          return src.sample.n;
        } else {
          return src.target.n();
        }
      },
      source_);
}

LabeledPoint Oracle::operator()() {
  SplitMix64 gen(derive_seed(seed_, calls_));
  ++calls_;
  if (const auto* src = std::get_if<FromSample>(&source_)) {
    return src->sample.pairs[uniform_below(gen, src->sample.pairs.size())];
  }
  const auto& src = std::get<FromDistribution>(source_);
  const Point x = src.dist.quantile(uniform_unit(gen));
  return {x, src.target(x)};
}

Oracle oracle_from_sample(const LabeledSample& sample, std::uint64_t seed) {
  return Oracle(sample, seed);
}

DecisionList greedy_consistent_list(std::span<const LabeledPoint> examples, unsigned n,
                                    unsigned width_max) {
  const DomainSpec spec(n);
  const std::vector<Term> terms = enumerate_terms(n, width_max);
  auto matches = [&](const Term& term, Point x) {
    for (const Literal lit : term.literals()) {
      if (spec.value(x, lit.var) != lit.positive) return false;
    }
    return true;
  };

  std::vector<LabeledPoint> remaining(examples.begin(), examples.end());
  std::vector<Rule> rules;
  while (true) {
    std::size_t ones = 0;
    for (const auto& e : remaining) ones += e.label ? 1 : 0;
    if (ones == 0) return DecisionList(n, std::move(rules), false);
    if (ones == remaining.size()) return DecisionList(n, std::move(rules), true);

    const Term* best = nullptr;
    bool best_label = false;
    std::size_t best_cover = 0;
    for (const Term& term : terms) {
      std::size_t cover[2] = {0, 0};
      for (const auto& e : remaining) {
        if (matches(term, e.x)) ++cover[e.label ? 1 : 0];
      }
      for (int label = 0; label < 2; ++label) {
        const std::size_t c = cover[label];
        if (c == 0 || cover[1 - label] != 0) continue;
        if (c > best_cover || (c == best_cover && term < *best)) {
          best = &term;
          best_label = label == 1;
          best_cover = c;
        }
      }
    }
    if (best == nullptr) {
      throw LearnerFailure("no term of width <= " + std::to_string(width_max) +
                           " separates the remaining " + std::to_string(remaining.size()) +
                           " examples");
    }
    std::erase_if(remaining, [&](const LabeledPoint& e) { return matches(*best, e.x); });
    rules.push_back(Rule{*best, best_label});
  }
}

DecisionList greedy_dl_learner(Oracle& oracle, const PacParams& params, std::uint64_t budget,
                               unsigned width_max) {
  if (oracle.n() != params.n()) throw DimensionMismatch("oracle and parameter dimensions differ");
  std::vector<LabeledPoint> drawn;
  drawn.reserve(budget);
  for (std::uint64_t i = 0; i < budget; ++i) drawn.push_back(oracle());
  return greedy_consistent_list(drawn, params.n(), width_max);
}

namespace {

const std::vector<std::string> kRuntimeVariables = {"inv_epsilon", "inv_delta", "n", "s"};

double evaluate_at(const PolynomialBound& runtime_bound, const PacParams& params) {
  return runtime_bound({1.0 / params.epsilon(), 1.0 / params.delta(), static_cast<double>(params.n()),
                        static_cast<double>(params.s())});
}

std::uint64_t budget_from(const PolynomialBound& runtime_bound, const PacParams& params) {
  const double t = evaluate_at(runtime_bound, params);
  if (!(t < 1e15)) throw std::overflow_error(runtime_bound.name() + " too large to run");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(t)));
}

}  // namespace

std::uint64_t oracle_budget(const LearnerSpec& learner, const PacParams& params) {
  return budget_from(learner.runtime_bound, params);
}

LearnerSpec make_learner(std::string_view name, unsigned width_max) {
  if (name == "greedy-dl") {
    if (width_max == 0) throw std::invalid_argument("greedy-dl needs a positive term width");
    PolynomialBound bound("T_greedy-dl", kRuntimeVariables,
                          {{1.0, {1, 0, 1, 1}}, {1.0, {1, 1, 0, 0}}});
    LearnerSpec spec{"greedy-dl", std::move(bound), LearnerModel::oracle_known, {}};
    spec.run = [width_max, t = spec.runtime_bound](Oracle& oracle, const PacParams& params) {
      return greedy_dl_learner(oracle, params, budget_from(t, params), width_max);
    };
    return spec;
  }
  if (name == "stub0") {
    PolynomialBound bound("T_stub0", kRuntimeVariables, {{1.0, {0, 0, 0, 1}}});
    return LearnerSpec{"stub0", std::move(bound), LearnerModel::oracle_known,
                       [](Oracle&, const PacParams& params) { return default_hypothesis(params.n()); }};
  }
  throw std::invalid_argument("unknown learner '" + std::string(name) + "'");
}

std::vector<std::string> learner_names() { return {"greedy-dl", "stub0"}; }

std::vector<BoundReport> validate_runtime_bound(const LearnerSpec& learner,
                                                std::span<const PacParams> grid,
                                                std::uint64_t seed) {
  std::vector<BoundReport> reports;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const PacParams& params = grid[i];
    Oracle oracle(Distribution::uniform(params.n()), DecisionList::constant(params.n(), true),
                  derive_seed(seed, i));
    learner.run(oracle, params);
    BoundReport r;
    r.lemma = "runtime_bound";
    r.with("n", params.n())
        .with("s", static_cast<double>(params.s()))
        .with("epsilon", params.epsilon())
        .with("delta", params.delta());
    r.bound = evaluate_at(learner.runtime_bound, params);
    r.observed = static_cast<double>(oracle.calls());
    r.pass = r.observed <= r.bound;
    reports.push_back(std::move(r));
  }
  return reports;
}

PolynomialBound lift_polynomial(const PolynomialBound& runtime_bound) {
  const std::size_t e = runtime_bound.index_of("inv_epsilon");
  const std::size_t d = runtime_bound.index_of("inv_delta");
  const std::size_t nn = runtime_bound.index_of("n");
  const std::size_t s = runtime_bound.index_of("s");
  std::vector<Monomial> terms;
  for (const auto& t : runtime_bound.terms()) {
    terms.push_back({t.coefficient, {t.exponents[e], t.exponents[nn], t.exponents[d] + t.exponents[s]}});
  }
  return PolynomialBound("p[" + runtime_bound.name() + "]", {"inv_epsilon", "n", "x"},
                         std::move(terms));
}

double lift_lower_bound_q(const PolynomialBound& p, double epsilon, double delta, unsigned n,
                          double s) {
  return p({1.0 / epsilon, static_cast<double>(n), 2.0 * (1.0 / delta + s)});
}

std::optional<std::uint64_t> x_search(const PolynomialBound& p, double epsilon, unsigned n,
                                      std::uint64_t m) {
  if (p.degree_in("x") == 0) {
    throw std::invalid_argument(p.name() + " does not grow with x; x_search cannot bracket m");
  }
  auto at = [&](std::uint64_t x) {
    return p({1.0 / epsilon, static_cast<double>(n), static_cast<double>(x)});
  };
  const auto budget = static_cast<double>(m);
  if (at(1) > budget) return std::nullopt;
  std::uint64_t x = 1;
  while (at(2 * x) <= budget) {
    if (x >= (std::uint64_t{1} << 61)) throw std::overflow_error("x_search: x exceeds 2^62");
    x *= 2;
  }
  return x;
}

DecisionList default_hypothesis(unsigned n) { return DecisionList::constant(n, false); }

LiftPlan plan_lift(const LearnerSpec& learner, unsigned n, std::uint64_t m, unsigned k) {
  LiftPlan plan;
  plan.epsilon = epsilon_schedule(m, k);
  plan.x = x_search(lift_polynomial(learner.runtime_bound), plan.epsilon, n, m);
  return plan;
}

LiftResult lift_known_to_unknown(const LearnerSpec& learner, const LabeledSample& sample, unsigned k,
                                 std::uint64_t seed) {
  if (learner.model != LearnerModel::oracle_known) {
    throw std::invalid_argument(learner.name + " is not an oracle-model learner");
  }
  if (sample.pairs.empty()) throw std::invalid_argument("the lift needs a nonempty sample");
  LiftResult result{default_hypothesis(sample.n), plan_lift(learner, sample.n, sample.m(), k), 0, true};
  if (!result.plan.x) return result;
  const std::uint64_t x = *result.plan.x;
  Oracle oracle = oracle_from_sample(sample, seed);
  const PacParams params(result.plan.epsilon, 1.0 / static_cast<double>(x), sample.n, x);
  result.hypothesis = learner.run(oracle, params);
  result.oracle_calls = oracle.calls();
  result.used_default = false;
  return result;
}

}  // namespace occam
