#include "occam/vc.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "occam/rng.hpp"

namespace occam::vc {

namespace {

std::vector<Point> normalized(std::span<const Point> points, std::uint32_t domain_size) {
  std::vector<Point> out(points.begin(), points.end());
  for (Point x : out) {
    if (x.index >= domain_size) throw DimensionMismatch("point outside the class domain");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t project(const TruthTable& table, std::span<const Point> points) {
  std::uint64_t pattern = 0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    pattern |= static_cast<std::uint64_t>(table.test(points[j].index)) << j;
  }
  return pattern;
}

// Number of distinct projections onto `points` (sorted, distinct), stopping
// early once `stop_at` is reached.
std::uint64_t count_projections(const FiniteClass& cls, std::span<const Point> points,
                                std::uint64_t stop_at) {
  const auto concepts = cls.concepts();
  if (points.size() <= 20) {
    std::vector<std::uint64_t> seen(((std::size_t{1} << points.size()) + 63) / 64, 0);
    std::uint64_t distinct = 0;
    for (const auto& c : concepts) {
      const std::uint64_t p = project(c, points);
      std::uint64_t& word = seen[p >> 6];
      const std::uint64_t bit = std::uint64_t{1} << (p & 63);
      if ((word & bit) == 0) {
        word |= bit;
        if (++distinct >= stop_at) return distinct;
      }
    }
    return distinct;
  }
  if (points.size() <= 64) {
    std::vector<std::uint64_t> patterns;
    patterns.reserve(concepts.size());
    for (const auto& c : concepts) patterns.push_back(project(c, points));
    std::sort(patterns.begin(), patterns.end());
    return static_cast<std::uint64_t>(std::unique(patterns.begin(), patterns.end()) - patterns.begin());
  }
  return restriction(cls, points).size();
}

bool shattered_sorted(const FiniteClass& cls, std::span<const Point> points) {
  if (points.size() >= 64) return false;
  const std::uint64_t needed = std::uint64_t{1} << points.size();
  if (cls.size() < needed) return false;
  return count_projections(cls, points, needed) == needed;
}

unsigned floor_log2(std::uint64_t v) { return static_cast<unsigned>(std::bit_width(v) - 1); }

}  // namespace

FiniteClass::FiniteClass(unsigned n, std::vector<TruthTable> concepts)
    : n_(n), concepts_(std::move(concepts)) {
  const DomainSpec spec(n);
  if (concepts_.empty()) throw std::invalid_argument("a concept class must be nonempty");
  for (const auto& c : concepts_) {
    if (c.size() != spec.size()) {
      throw DimensionMismatch("truth table of length " + std::to_string(c.size()) +
                              " in a class over X_" + std::to_string(n));
    }
  }
  std::sort(concepts_.begin(), concepts_.end());
  concepts_.erase(std::unique(concepts_.begin(), concepts_.end()), concepts_.end());
}

FiniteClass FiniteClass::from_concepts(unsigned n, std::span<const DecisionList> concepts) {
  std::vector<TruthTable> tables;
  tables.reserve(concepts.size());
  for (const auto& c : concepts) {
    if (c.n() != n) throw DimensionMismatch("concept dimension differs from class dimension");
    tables.push_back(truth_table(c));
  }
  return FiniteClass(n, std::move(tables));
}

FiniteClass FiniteClass::power_set(unsigned n) {
  if (n > 4) throw CapExceeded("power set class limited to n <= 4");
  const std::uint32_t points = std::uint32_t{1} << n;
  const std::uint64_t count = std::uint64_t{1} << points;
  std::vector<TruthTable> tables;
  tables.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    TruthTable t(points);
    for (std::uint32_t i = 0; i < points; ++i) {
      if ((mask >> i) & 1U) t.set(i);
    }
    tables.push_back(std::move(t));
  }
  return FiniteClass(n, std::move(tables));
}

FiniteClass random_class(unsigned n, std::size_t size, std::uint64_t seed) {
  const std::uint32_t domain = DomainSpec(n).size();
  if (size == 0) throw std::invalid_argument("random_class needs size >= 1");
  if (domain < 64 && size > (std::uint64_t{1} << domain)) {
    throw std::invalid_argument("more concepts requested than exist on the domain");
  }
  SplitMix64 gen(seed);
  std::set<TruthTable> drawn;
  while (drawn.size() < size) {
    TruthTable t(domain);
    for (std::uint32_t i = 0; i < domain; ++i) {
      if (gen() & 1) t.set(i, true);
    }
    drawn.insert(std::move(t));
  }
  return FiniteClass(n, std::vector<TruthTable>(drawn.begin(), drawn.end()));
}

std::vector<TruthTable> restriction(const FiniteClass& cls, std::span<const Point> points) {
  const auto sorted = normalized(points, cls.domain_size());
  std::vector<TruthTable> out;
  out.reserve(cls.size());
  for (const auto& c : cls.concepts()) {
    TruthTable d(sorted.size());
    for (std::size_t j = 0; j < sorted.size(); ++j) {
      if (c.test(sorted[j].index)) d.set(j);
    }
    out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_shattered(const FiniteClass& cls, std::span<const Point> points) {
  const auto sorted = normalized(points, cls.domain_size());
  return shattered_sorted(cls, sorted);
}

VcReport vc_dimension(const FiniteClass& cls, std::uint64_t work_cap) {
  const std::uint32_t domain = cls.domain_size();
  // No set larger than log2 |C| can be shattered.
  const unsigned depth_bound = std::min<unsigned>(floor_log2(cls.size()), domain);
  VcReport report;
  std::vector<Point> current;
  bool aborted = false;

  std::function<void(std::uint32_t)> extend = [&](std::uint32_t start) {
    if (current.size() >= depth_bound) return;
    for (std::uint32_t p = start; p < domain && !aborted; ++p) {
      if (report.shatter_checks >= work_cap) {
        aborted = true;
        return;
      }
      current.push_back(Point{p});
      ++report.shatter_checks;
      if (shattered_sorted(cls, current)) {
        if (current.size() > report.d) {
          report.d = static_cast<unsigned>(current.size());
          report.witness = current;
        }
        extend(p + 1);
      }
      current.pop_back();
    }
  };
  extend(0);
  report.certificate_no_larger = !aborted;
  return report;
}

bool is_trivial(const FiniteClass& cls) {
  if (cls.size() == 1) return true;
  if (cls.size() != 2) return false;
  const auto& a = cls.concepts()[0];
  const auto& b = cls.concepts()[1];
  return (a & b).none() && (a | b).count() == a.size();
}

double binomial(std::uint64_t m, std::uint64_t i) {
  if (i > m) return 0.0;
  i = std::min(i, m - i);
  double result = 1.0;
  for (std::uint64_t j = 1; j <= i; ++j) {
    result = result * static_cast<double>(m - i + j) / static_cast<double>(j);
  }
  return std::round(result);
}

std::uint64_t growth_function(const FiniteClass& cls, std::uint64_t m, std::uint64_t work_cap) {
  if (m == 0) throw std::invalid_argument("growth function needs m >= 1");
  const std::uint32_t domain = cls.domain_size();
  const auto k = static_cast<unsigned>(std::min<std::uint64_t>(m, domain));
  const double subsets = binomial(domain, k);
  if (subsets * static_cast<double>(cls.size()) > static_cast<double>(work_cap)) {
    throw CapExceeded("exhaustive growth function over C(" + std::to_string(domain) + "," +
                      std::to_string(k) + ") subsets exceeds the work cap");
  }
  const std::uint64_t ceiling =
      k >= 64 ? cls.size() : std::min<std::uint64_t>(cls.size(), std::uint64_t{1} << k);
  std::vector<std::uint32_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0U);
  std::vector<Point> points(k);
  std::uint64_t best = 0;
  while (true) {
    for (unsigned j = 0; j < k; ++j) points[j] = Point{idx[j]};
    best = std::max(best, count_projections(cls, points, ceiling));
    if (best >= ceiling) break;
    // next combination in lexicographic order
    int j = static_cast<int>(k) - 1;
    while (j >= 0 && idx[j] == domain - k + static_cast<unsigned>(j)) --j;
    if (j < 0) break;
    ++idx[j];
    for (unsigned t = static_cast<unsigned>(j) + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
  return best;
}

std::uint64_t growth_function_lower_bound(const FiniteClass& cls, std::uint64_t m,
                                          std::uint64_t subsets, std::uint64_t seed) {
  if (m == 0) throw std::invalid_argument("growth function needs m >= 1");
  const std::uint32_t domain = cls.domain_size();
  const auto k = static_cast<std::size_t>(std::min<std::uint64_t>(m, domain));
  std::vector<std::uint32_t> pool(domain);
  std::uint64_t best = 0;
  for (std::uint64_t t = 0; t < subsets; ++t) {
    SplitMix64 gen(derive_seed(seed, t));
    std::iota(pool.begin(), pool.end(), 0U);
    for (std::size_t j = 0; j < k; ++j) {
      const auto pick = j + uniform_below(gen, domain - j);
      std::swap(pool[j], pool[pick]);
    }
    std::vector<Point> points(k);
    for (std::size_t j = 0; j < k; ++j) points[j] = Point{pool[j]};
    std::sort(points.begin(), points.end());
    best = std::max(best, count_projections(cls, points, std::numeric_limits<std::uint64_t>::max()));
  }
  return best;
}

FiniteClass exception_expand(const FiniteClass& cls, unsigned l, std::uint64_t cap) {
  const std::uint32_t domain = cls.domain_size();
  double per_concept = 0.0;
  for (unsigned i = 0; i <= std::min<unsigned>(l, domain); ++i) per_concept += binomial(domain, i);
  if (per_concept * static_cast<double>(cls.size()) > static_cast<double>(cap)) {
    throw CapExceeded("exception expansion with l=" + std::to_string(l) + " exceeds the cap " +
                      std::to_string(cap));
  }
  std::vector<TruthTable> out;
  out.reserve(static_cast<std::size_t>(per_concept * static_cast<double>(cls.size())));
  for (const auto& h : cls.concepts()) {
    TruthTable current = h;
    std::function<void(std::uint32_t, unsigned)> flip_more = [&](std::uint32_t start, unsigned left) {
      out.push_back(current);
      if (left == 0) return;
      for (std::uint32_t p = start; p < domain; ++p) {
        current.flip(p);
        flip_more(p + 1, left - 1);
        current.flip(p);
      }
    };
    flip_more(0, l);
  }
  return FiniteClass(cls.n(), std::move(out));
}

double sauer_binomial_bound(std::uint64_t m, unsigned d) {
  double total = 0.0;
  for (unsigned i = 0; i <= d; ++i) total += binomial(m, i);
  return total;
}

double sauer_exponential_bound(std::uint64_t m, unsigned d) {
  return std::pow(std::exp(1.0) * static_cast<double>(m) / d, static_cast<double>(d));
}

double sauer_polynomial_bound(std::uint64_t m, unsigned d) {
  return std::pow(static_cast<double>(m), static_cast<double>(d)) + 1.0;
}

std::vector<BoundReport> check_sauer(const FiniteClass& cls, std::span<const std::uint64_t> m_values,
                                     std::uint64_t work_cap) {
  const unsigned d = vc_dimension(cls, work_cap).d;
  std::vector<BoundReport> reports;
  for (std::uint64_t m : m_values) {
    const auto tau = static_cast<double>(growth_function(cls, m, work_cap));
    auto base = [&](std::string lemma) {
      BoundReport r;
      r.lemma = std::move(lemma);
      r.with("n", cls.n()).with("class_size", static_cast<double>(cls.size())).with("d", d).with(
          "m", static_cast<double>(m));
      r.observed = tau;
      return r;
    };

    BoundReport binomial_form = base("sauer_binomial");
    binomial_form.bound = sauer_binomial_bound(m, d);
    binomial_form.pass = tau <= binomial_form.bound;
    reports.push_back(std::move(binomial_form));

    BoundReport exponential_form = base("sauer_exponential");
    if (d >= 1 && m >= d + 1) {
      exponential_form.bound = sauer_exponential_bound(m, d);
      exponential_form.pass = tau <= exponential_form.bound * (1.0 + 1e-12);
    } else {
      exponential_form.mode = "vacuous";
      exponential_form.pass = true;
    }
    reports.push_back(std::move(exponential_form));

    BoundReport polynomial_form = base("sauer_polynomial");
    polynomial_form.bound = sauer_polynomial_bound(m, d);
    polynomial_form.pass = tau <= polynomial_form.bound;
    reports.push_back(std::move(polynomial_form));
  }
  return reports;
}

BoundReport check_exception_dim_bound(const FiniteClass& cls, unsigned l, LogBase base,
                                      std::uint64_t cap) {
  const unsigned d = vc_dimension(cls).d;
  const unsigned d_l = vc_dimension(exception_expand(cls, l, cap)).d;
  BoundReport r;
  r.lemma = "exception_dim";
  r.with("n", cls.n())
      .with("class_size", static_cast<double>(cls.size()))
      .with("l", l)
      .with("d", d)
      .with("d_l", d_l)
      .with("log_base", base.base);
  r.bound = static_cast<double>(d) + l + 2.0;
  if (d_l < 2) {
    r.observed = d_l;
    r.mode = "vacuous";
    r.pass = true;
    return r;
  }
  r.observed = d_l / base(d_l);
  r.pass = r.observed <= r.bound;
  return r;
}

BoundReport check_vc_log_bound(const FiniteClass& cls, LogBase base) {
  BoundReport r;
  r.lemma = "vc_log";
  r.with("n", cls.n()).with("class_size", static_cast<double>(cls.size())).with("log_base", base.base);
  r.observed = vc_dimension(cls).d;
  r.bound = base(static_cast<double>(cls.size()));
  r.pass = r.observed <= r.bound + 1e-12;
  return r;
}

}  // namespace occam::vc
