#include "occam/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "occam/rng.hpp"

namespace occam::verify {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (successes > trials) throw std::invalid_argument("more successes than trials");
  if (trials == 0) return {};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<DecisionList> distinct_targets(const ConceptClassDescriptor& desc, std::uint64_t cap) {
  std::vector<DecisionList> out;
  std::set<TruthTable> seen;
  for (auto& c : enumerate_concepts(desc, cap)) {
    if (seen.insert(truth_table(c)).second) out.push_back(std::move(c));
  }
  return out;
}

Procedure constant_procedure(bool label) {
  return {label ? "constant-1" : "constant-0",
          [label](const LabeledSample& sample, std::uint64_t) {
            return DecisionList::constant(sample.n, label);
          },
          {}};
}

Procedure lifted_procedure(const LearnerSpec& learner, unsigned k) {
  return {"lift:" + learner.name,
          [learner, k](const LabeledSample& sample, std::uint64_t seed) {
            return lift_known_to_unknown(learner, sample, k, seed).hypothesis;
          },
          [learner, k](unsigned n, std::uint64_t m) { return plan_lift(learner, n, m, k); }};
}

Procedure occam_procedure(const LearnerSpec& learner, unsigned k) {
  return {"occam:" + learner.name,
          [learner, k](const LabeledSample& sample, std::uint64_t seed) {
            return occamize(learner, sample, k, seed).hypothesis;
          },
          [learner, k](unsigned n, std::uint64_t m) { return plan_lift(learner, n, m, k); }};
}

std::string_view to_string(SpaceMode mode) {
  return mode == SpaceMode::exhaustive ? "exhaustive" : "sampled";
}

namespace {

/// base^exp, or limit + 1 once it exceeds limit.
std::uint64_t capped_power(std::uint64_t base, std::uint64_t exp, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (v > limit / base) return limit + 1;
    v *= base;
  }
  return v;
}

vc::FiniteClass class_of(unsigned n, std::vector<std::optional<TruthTable>>& tables,
                         std::uint64_t& runs) {
  std::vector<TruthTable> kept;
  for (auto& t : tables) {
    if (t) kept.push_back(std::move(*t));
  }
  runs = kept.size();
  if (kept.empty()) throw LearnerFailure("no run produced a hypothesis");
  return vc::FiniteClass(n, std::move(kept));
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + '"';
}

BoundReport rate_report(std::string lemma, std::uint64_t successes, std::uint64_t trials,
                        const LiftPlan& plan) {
  const Interval ci = wilson_interval(successes, trials);
  BoundReport r;
  r.lemma = std::move(lemma);
  r.observed = trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  r.margin = ci.half_width();
  r.with("trials", static_cast<double>(trials)).with("successes", static_cast<double>(successes));
  if (!plan.x) {
    r.bound = 0.0;
    r.mode = "vacuous";
    r.pass = true;
    return r;
  }
  r.with("x", static_cast<double>(*plan.x));
  r.bound = 1.0 - 1.0 / static_cast<double>(*plan.x);
  r.mode = "monte_carlo";
  r.pass = ci.upper >= r.bound;
  return r;
}

}  // namespace

EffectiveSpace effective_space(const Procedure& procedure, const ConceptClassDescriptor& desc,
                               std::uint64_t m, SpaceMode mode, std::uint64_t trials,
                               std::uint64_t seed, unsigned jobs, std::uint64_t cap) {
  if (m == 0) throw std::invalid_argument("effective space needs m >= 1");
  const std::vector<DecisionList> targets = distinct_targets(desc, cap);
  const unsigned n = desc.n;
  const std::uint32_t domain = DomainSpec(n).size();

  Provenance prov{procedure.id, desc, m, 1.0, std::nullopt, trials, seed, 0};
  if (procedure.plan) {
    const LiftPlan plan = procedure.plan(n, m);
    prov.epsilon = plan.epsilon;
    prov.x = plan.x;
  }

  std::vector<std::optional<TruthTable>> tables;
  if (mode == SpaceMode::exhaustive) {
    const std::uint64_t tuples = capped_power(domain, m, cap);
    if (tuples > cap || targets.size() * tuples > cap) {
      throw CapExceeded("exhaustive effective space needs " + std::to_string(targets.size()) +
                        " targets x " + std::to_string(domain) + "^" + std::to_string(m) +
                        " samples, over the cap of " + std::to_string(cap));
    }
    prov.trials = targets.size() * tuples;
    std::vector<std::vector<TruthTable>> per_target(targets.size());
    parallel_for(targets.size(), jobs, [&](std::uint64_t t) {
      std::set<TruthTable> seen;
      std::vector<Point> points(m, Point{0});
      for (std::uint64_t code = 0; code < tuples; ++code) {
        std::uint64_t rest = code;
        for (std::uint64_t i = 0; i < m; ++i) {
          points[m - 1 - i] = Point{static_cast<std::uint32_t>(rest % domain)};
          rest /= domain;
        }
        seen.insert(truth_table(procedure.run(label_points(targets[t], points), seed)));
      }
      per_target[t].assign(seen.begin(), seen.end());
    });
    for (auto& v : per_target) {
      for (auto& t : v) tables.emplace_back(std::move(t));
    }
  } else {
    tables.resize(trials);
    const Distribution uniform = Distribution::uniform(n);
    parallel_for(trials, jobs, [&](std::uint64_t i) {
      SplitMix64 gen(derive_seed(seed, i));
      const auto& target = targets[uniform_below(gen, targets.size())];
      const LabeledSample sample = draw_sample(uniform, target, m, gen());
      tables[i] = truth_table(procedure.run(sample, gen()));
    });
  }
  std::uint64_t runs = 0;
  vc::FiniteClass cls = class_of(n, tables, runs);
  prov.runs = mode == SpaceMode::exhaustive ? prov.trials : runs;
  return {std::move(cls), mode, std::move(prov)};
}

EffectiveSpace learner_effective_space(const LearnerSpec& learner, const ConceptClassDescriptor& desc,
                                       std::uint64_t x, double epsilon, std::uint64_t trials,
                                       std::uint64_t seed, unsigned jobs) {
  const std::vector<DecisionList> targets = distinct_targets(desc);
  const PacParams params(epsilon, 1.0 / static_cast<double>(x), desc.n, x);
  const Distribution uniform = Distribution::uniform(desc.n);
  std::vector<std::optional<TruthTable>> tables(trials);
  parallel_for(trials, jobs, [&](std::uint64_t i) {
    SplitMix64 gen(derive_seed(seed, i));
    const auto& target = targets[uniform_below(gen, targets.size())];
    Oracle oracle(uniform, target, gen());
    try {
      tables[i] = truth_table(learner.run(oracle, params));
    } catch (const LearnerFailure&) {
    }
  });
  Provenance prov{learner.name, desc, 0, epsilon, x, trials, seed, 0};
  vc::FiniteClass cls = class_of(desc.n, tables, prov.runs);
  return {std::move(cls), SpaceMode::sampled, std::move(prov)};
}

BoundReport check_lemma3(const ConceptClassDescriptor& desc, const DecisionList& target,
                         const Distribution& dist, std::uint64_t m, double epsilon,
                         std::uint64_t trials, std::uint64_t seed, unsigned jobs) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (m == 0 || trials == 0) throw std::invalid_argument("lemma3 needs m >= 1 and trials >= 1");
  if (target.n() != desc.n || dist.n() != desc.n) {
    throw DimensionMismatch("target, distribution and class dimensions differ");
  }
  const auto concepts = enumerate_concepts(desc);
  const vc::FiniteClass cls = vc::FiniteClass::from_concepts(desc.n, concepts);
  const TruthTable target_table = truth_table(target);

  std::vector<TruthTable> bad;
  for (const TruthTable& h : cls.concepts()) {
    const TruthTable diff = h ^ target_table;
    double err = 0.0;
    for (std::uint32_t i = 0; i < cls.domain_size(); ++i) {
      if (diff.test(i)) err += dist.weight(Point{i});
    }
    if (err > epsilon) bad.push_back(diff);
  }

  std::vector<std::uint8_t> failed(trials, 0);
  parallel_for(trials, jobs, [&](std::uint64_t t) {
    SplitMix64 gen(derive_seed(seed, t));
    TruthTable seen(cls.domain_size());
    for (std::uint64_t i = 0; i < m; ++i) seen.set(dist.quantile(uniform_unit(gen)).index);
    for (const TruthTable& d : bad) {
      if ((d & seen).none()) {
        failed[t] = 1;
        return;
      }
    }
  });
  const auto failures = static_cast<std::uint64_t>(std::count(failed.begin(), failed.end(), 1));

  const std::uint64_t tau = vc::growth_function(cls, 2 * m);
  BoundReport r;
  r.lemma = "lemma3";
  r.with("n", desc.n)
      .with("s", static_cast<double>(desc.s_max))
      .with("m", static_cast<double>(m))
      .with("epsilon", epsilon)
      .with("trials", static_cast<double>(trials))
      .with("class_size", static_cast<double>(cls.size()))
      .with("bad_hypotheses", static_cast<double>(bad.size()))
      .with("tau_2m", static_cast<double>(tau));
  r.bound = 2.0 * static_cast<double>(tau) * std::exp2(-epsilon * static_cast<double>(m) / 2.0);
  r.observed = static_cast<double>(failures) / static_cast<double>(trials);
  r.margin = wilson_interval(failures, trials).half_width();
  if (r.bound >= 1.0) {
    r.mode = "vacuous";
    r.pass = true;
  } else {
    r.mode = "monte_carlo";
    r.pass = r.observed <= r.bound + r.margin;
  }
  return r;
}

std::vector<BoundReport> check_eq1_k(const LearnerSpec& learner, unsigned k,
                                     std::span<const LearnerGridPoint> grid,
                                     const ConceptClassDescriptor& desc, std::uint64_t trials,
                                     std::uint64_t seed, unsigned jobs) {
  std::vector<BoundReport> reports;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const LearnerGridPoint& g = grid[i];
    const ConceptClassDescriptor cell{g.n, desc.s_max, desc.width_max};
    const EffectiveSpace space =
        learner_effective_space(learner, cell, g.x, g.epsilon, trials, derive_seed(seed, i), jobs);
    const vc::VcReport vc = vc::vc_dimension(space.hypotheses);
    BoundReport r;
    r.lemma = "eq1";
    r.with("n", g.n)
        .with("x", static_cast<double>(g.x))
        .with("k", k)
        .with("epsilon", g.epsilon)
        .with("trials", static_cast<double>(trials))
        .with("runs", static_cast<double>(space.provenance.runs))
        .with("hypotheses", static_cast<double>(space.hypotheses.size()))
        .with("d", vc.d);
    r.bound = learner_dimension_bound(g.n, g.x, g.epsilon, k);
    r.observed = vc.d + 2.0;
    r.mode = "sampled";
    r.pass = r.observed <= r.bound;
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<BoundReport> check_eq4_chain(const EffectiveSpace& occam_space, const OccamParams& params) {
  const Provenance& prov = occam_space.provenance;
  const unsigned n = prov.desc.n;
  const std::uint64_t m = prov.m;
  const std::uint64_t x = prov.x.value_or(1);
  const double epsilon = params.epsilon(m);
  const unsigned d = vc::vc_dimension(occam_space.hypotheses).d;
  const std::string mode(to_string(occam_space.mode));

  auto base = [&](std::string lemma) {
    BoundReport r;
    r.lemma = std::move(lemma);
    r.with("n", n)
        .with("x", static_cast<double>(x))
        .with("m", static_cast<double>(m))
        .with("k", params.k)
        .with("epsilon", epsilon)
        .with("x_default", prov.x ? 0.0 : 1.0)
        .with("hypotheses", static_cast<double>(occam_space.hypotheses.size()))
        .with("d_o", d);
    return r;
  };

  BoundReport chain = base("eq4_chain");
  chain.bound = learner_dimension_bound(n, x, epsilon, params.k) + epsilon * static_cast<double>(m);
  if (d <= 1) {
    chain.observed = d;
    chain.mode = "vacuous";
    chain.pass = true;
  } else {
    chain.observed = d / std::log2(static_cast<double>(d));
    chain.mode = mode;
    chain.pass = chain.observed <= chain.bound;
  }

  BoundReport endpoint = base("eq4_endpoint");
  endpoint.bound = params.dimension_bound(n, x, m);
  endpoint.observed = d;
  endpoint.mode = mode;
  endpoint.pass = endpoint.observed <= endpoint.bound;
  return {chain, endpoint};
}

std::vector<BoundReport> sublinearity_trend(const Procedure& procedure,
                                            const ConceptClassDescriptor& desc,
                                            std::span<const std::uint64_t> m_grid,
                                            const OccamParams& params, std::uint64_t trials,
                                            std::uint64_t seed, unsigned jobs) {
  if (!std::is_sorted(m_grid.begin(), m_grid.end())) {
    throw std::invalid_argument("m grid must be ascending");
  }
  std::vector<BoundReport> reports;
  for (std::size_t i = 0; i < m_grid.size(); ++i) {
    const std::uint64_t m = m_grid[i];
    const EffectiveSpace space = effective_space(procedure, desc, m, SpaceMode::sampled, trials,
                                                 derive_seed(seed, i), jobs);
    const std::uint64_t x = space.provenance.x.value_or(1);
    const unsigned d = vc::vc_dimension(space.hypotheses).d;
    BoundReport r;
    r.lemma = "sublinearity";
    r.with("n", desc.n)
        .with("x", static_cast<double>(x))
        .with("m", static_cast<double>(m))
        .with("k", params.k)
        .with("epsilon", params.epsilon(m))
        .with("x_default", space.provenance.x ? 0.0 : 1.0)
        .with("hypotheses", static_cast<double>(space.hypotheses.size()))
        .with("d_o", d)
        .with("d_over_m", d / static_cast<double>(m));
    r.bound = params.dimension_bound(desc.n, x, m);
    r.observed = d;
    r.mode = "sampled";
    r.pass = r.observed <= r.bound;
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<TrialRecord> run_occam_trials(const LearnerSpec& learner,
                                          const ConceptClassDescriptor& desc, std::uint64_t m,
                                          unsigned k, std::uint64_t trials, std::uint64_t seed,
                                          unsigned jobs) {
  if (m == 0) throw std::invalid_argument("occamize needs m >= 1");
  const std::vector<DecisionList> targets = distinct_targets(desc);
  const Distribution uniform = Distribution::uniform(desc.n);
  const LiftPlan plan = plan_lift(learner, desc.n, m, k);
  std::vector<TrialRecord> records(trials);
  parallel_for(trials, jobs, [&](std::uint64_t t) {
    TrialRecord& rec = records[t];
    rec.trial = t;
    rec.seed = derive_seed(seed, t);
    SplitMix64 gen(rec.seed);
    rec.target_id = uniform_below(gen, targets.size());
    const LabeledSample sample = draw_sample(uniform, targets[rec.target_id], m, gen());
    rec.sample_digest = digest(sample);
    rec.epsilon = plan.epsilon;
    rec.x = plan.x;
    try {
      const OccamRun run = occamize(learner, sample, k, gen());
      rec.output_digest = digest(truth_table(run.hypothesis));
      rec.exceptions = run.exceptions.size();
      rec.oracle_calls = run.oracle_calls;
      rec.consistent = training_error(run.hypothesis, sample) == 0.0;
    } catch (const LearnerFailure& e) {
      rec.error = e.what();
    }
  });
  return records;
}

std::string trials_to_csv(std::span<const TrialRecord> records) {
  std::string out(kTrialCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.trial) + ',' + hex64(r.seed) + ',' + std::to_string(r.target_id) + ',' +
           hex64(r.sample_digest) + ',' + hex64(r.output_digest) + ',' +
           std::to_string(r.exceptions) + ',' + format_number(r.epsilon) + ',' +
           (r.x ? std::to_string(*r.x) : std::string()) + ',' + (r.consistent ? "true" : "false") +
           ',' + std::to_string(r.oracle_calls) + ',' + csv_field(r.error) + '\n';
  }
  return out;
}

BoundReport check_exception_budget(const LearnerSpec& learner, const ConceptClassDescriptor& desc,
                                   std::uint64_t m, unsigned k, std::uint64_t trials,
                                   std::uint64_t seed, unsigned jobs) {
  const auto records = run_occam_trials(learner, desc, m, k, trials, seed, jobs);
  const LiftPlan plan = plan_lift(learner, desc.n, m, k);
  const double budget = plan.epsilon * static_cast<double>(m);
  const auto successes = static_cast<std::uint64_t>(
      std::count_if(records.begin(), records.end(), [&](const TrialRecord& r) {
        return r.error.empty() && static_cast<double>(r.exceptions) <= budget;
      }));
  BoundReport r = rate_report("exception_budget", successes, trials, plan);
  r.with("n", desc.n).with("m", static_cast<double>(m)).with("k", k).with("epsilon", plan.epsilon);
  return r;
}

std::vector<BoundReport> check_approx_occam(const LearnerSpec& learner,
                                            const ConceptClassDescriptor& desc, std::uint64_t m,
                                            unsigned k, std::uint64_t trials, std::uint64_t seed,
                                            unsigned jobs) {
  const std::vector<DecisionList> targets = distinct_targets(desc);
  const Distribution uniform = Distribution::uniform(desc.n);
  const LiftPlan plan = plan_lift(learner, desc.n, m, k);
  std::vector<std::uint8_t> agreed(trials, 0);
  parallel_for(trials, jobs, [&](std::uint64_t t) {
    SplitMix64 gen(derive_seed(seed, t));
    const auto& target = targets[uniform_below(gen, targets.size())];
    const LabeledSample sample = draw_sample(uniform, target, m, gen());
    try {
      agreed[t] = approx_occam_check(learner, sample, k, gen()).pass ? 1 : 0;
    } catch (const LearnerFailure&) {
    }
  });
  const auto successes = static_cast<std::uint64_t>(std::count(agreed.begin(), agreed.end(), 1));
  BoundReport rate = rate_report("approx_occam_rate", successes, trials, plan);
  rate.with("n", desc.n).with("m", static_cast<double>(m)).with("k", k).with("epsilon", plan.epsilon);
  if (plan.epsilon >= 1.0) {
    rate.mode = "vacuous";
    rate.pass = true;
  }

  const EffectiveSpace space = effective_space(lifted_procedure(learner, k), desc, m,
                                               SpaceMode::sampled, trials, derive_seed(seed, trials), jobs);
  const std::uint64_t x = plan.x.value_or(1);
  const unsigned d = vc::vc_dimension(space.hypotheses).d;
  BoundReport dim;
  dim.lemma = "approx_occam_space";
  dim.with("n", desc.n)
      .with("x", static_cast<double>(x))
      .with("m", static_cast<double>(m))
      .with("k", k)
      .with("epsilon", plan.epsilon)
      .with("x_default", plan.x ? 0.0 : 1.0)
      .with("hypotheses", static_cast<double>(space.hypotheses.size()))
      .with("d", d);
  dim.bound = approx_occam_bound(desc.n, x, m, k);
  dim.observed = d;
  dim.mode = "sampled";
  dim.pass = dim.observed <= dim.bound;
  return {rate, dim};
}

std::vector<BoundReport> check_exlist(unsigned n_max, std::uint64_t trials, std::uint64_t seed) {
  if (n_max == 0) throw std::invalid_argument("exlist check needs n_max >= 1");
  DomainSpec{n_max};
  std::uint64_t exact_failures = 0;
  std::uint64_t involution_failures = 0;
  std::uint64_t size_failures = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitMix64 gen(derive_seed(seed, t));
    const auto n = static_cast<unsigned>(1 + uniform_below(gen, n_max));
    const std::uint32_t domain = std::uint32_t{1} << n;
    const DecisionList c = random_decision_list(n, 6, 3, gen());
    const auto count = uniform_below(gen, std::min<std::uint64_t>(domain, 16) + 1);
    std::vector<Point> points;
    for (std::uint64_t i = 0; i < count; ++i) {
      points.push_back(Point{static_cast<std::uint32_t>(uniform_below(gen, domain))});
    }
    const ExceptionSet e(n, points);
    TruthTable mask(domain);
    for (Point x : e.points()) mask.set(x.index);

    const DecisionList ce = ex_list(c, e);
    const TruthTable c_table = truth_table(c);
    if (truth_table(ce) != (c_table ^ mask)) ++exact_failures;
    if (truth_table(ex_list(ce, e)) != c_table) ++involution_failures;
    if (concept_size(ce).value != ExListBound{}(n, concept_size(c).value, e.size())) ++size_failures;
  }
  auto report = [&](std::string lemma, std::uint64_t failures) {
    BoundReport r;
    r.lemma = std::move(lemma);
    r.with("n", n_max).with("trials", static_cast<double>(trials));
    r.bound = 0.0;
    r.observed = static_cast<double>(failures);
    r.mode = "exhaustive";
    r.pass = failures == 0;
    return r;
  };
  return {report("exlist_exact", exact_failures), report("exlist_involution", involution_failures),
          report("exlist_size", size_failures)};
}

}  // namespace occam::verify
