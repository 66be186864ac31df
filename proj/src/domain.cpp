#include "occam/domain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "occam/rng.hpp"

namespace occam {

DomainSpec::DomainSpec(unsigned n, unsigned max_dimension) : n_(n) {
  if (n == 0) {
    throw std::invalid_argument("domain dimension must be at least 1");
  }
  if (n > max_dimension || n > 31) {
    throw CapExceeded("domain dimension " + std::to_string(n) + " exceeds maximum " +
                      std::to_string(std::min(max_dimension, 31U)));
  }
}

std::string DomainSpec::format(Point x) const {
  std::string bits(n_, '0');
  for (unsigned v = 0; v < n_; ++v) {
    if (value(x, v)) bits[v] = '1';
  }
  return bits;
}

Point DomainSpec::parse(std::string_view bits) const {
  if (bits.size() != n_) {
    throw DimensionMismatch("point '" + std::string(bits) + "' does not have " + std::to_string(n_) +
                            " bits");
  }
  std::uint32_t index = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("point '" + std::string(bits) + "' is not a bit string");
    }
    index = (index << 1) | static_cast<std::uint32_t>(ch == '1');
  }
  return Point{index};
}

std::vector<Point> enumerate_domain(const DomainSpec& spec) {
  std::vector<Point> points(spec.size());
  for (std::uint32_t i = 0; i < spec.size(); ++i) points[i] = Point{i};
  return points;
}

std::size_t TruthTable::count() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool TruthTable::none() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

TruthTable& TruthTable::operator^=(const TruthTable& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

TruthTable& TruthTable::operator&=(const TruthTable& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

TruthTable& TruthTable::operator|=(const TruthTable& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

TruthTable TruthTable::operator~() const {
  TruthTable out = *this;
  for (auto& w : out.words_) w = ~w;
  if (const std::size_t tail = size_ & 63; tail != 0 && !out.words_.empty()) {
    out.words_.back() &= (std::uint64_t{1} << tail) - 1;
  }
  return out;
}

Term::Term(std::vector<Literal> literals) : literals_(std::move(literals)) {
  std::sort(literals_.begin(), literals_.end(),
            [](Literal a, Literal b) { return a.key() < b.key(); });
  for (std::size_t i = 1; i < literals_.size(); ++i) {
    if (literals_[i].var == literals_[i - 1].var) {
      throw std::invalid_argument("term mentions variable " + std::to_string(literals_[i].var) +
                                  " twice");
    }
  }
}

Term Term::full(const DomainSpec& spec, Point x) {
  std::vector<Literal> literals;
  literals.reserve(spec.n());
  for (unsigned v = 0; v < spec.n(); ++v) {
    literals.push_back(Literal{static_cast<std::uint8_t>(v), spec.value(x, v)});
  }
  return Term(std::move(literals));
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  const auto la = a.literals();
  const auto lb = b.literals();
  return std::lexicographical_compare_three_way(
      la.begin(), la.end(), lb.begin(), lb.end(),
      [](Literal x, Literal y) { return x.key() <=> y.key(); });
}

DecisionList::DecisionList(unsigned n, std::vector<Rule> rules, bool default_label)
    : n_(n), rules_(std::move(rules)), default_label_(default_label) {
  if (n == 0 || n > 31) {
    throw std::invalid_argument("decision list dimension must be in [1, 31]");
  }
  masks_.reserve(rules_.size());
  for (const auto& rule : rules_) {
    Mask mask{0, 0};
    for (const Literal lit : rule.term.literals()) {
      if (lit.var >= n) {
        throw DimensionMismatch("literal on variable " + std::to_string(lit.var) +
                                " in a list over " + std::to_string(n) + " variables");
      }
      const std::uint32_t bit = std::uint32_t{1} << (n - 1 - lit.var);
      mask.care |= bit;
      if (lit.positive) mask.want |= bit;
    }
    masks_.push_back(mask);
  }
}

bool DecisionList::operator()(Point x) const {
  if (x.index >> n_ != 0) {
    throw DimensionMismatch("point " + std::to_string(x.index) + " is outside X_" +
                            std::to_string(n_));
  }
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    if ((x.index & masks_[i].care) == masks_[i].want) return rules_[i].label;
  }
  return default_label_;
}

bool eval_concept(const DecisionList& c, Point x) { return c(x); }

ConceptSize concept_size(const DecisionList& c) {
  std::uint64_t size = 1;
  for (const auto& rule : c.rules()) size += rule.term.width() + 1;
  return ConceptSize{size};
}

TruthTable truth_table(const DecisionList& c) {
  const std::uint32_t points = std::uint32_t{1} << c.n();
  TruthTable table(points);
  for (std::uint32_t i = 0; i < points; ++i) {
    if (c(Point{i})) table.set(i);
  }
  return table;
}

Distribution::Distribution(unsigned n, std::vector<double> weights)
    : n_(n), weights_(std::move(weights)) {
  DomainSpec spec(n);
  if (weights_.size() != spec.size()) {
    throw DimensionMismatch("distribution needs " + std::to_string(spec.size()) + " weights");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("distribution weights must be finite and nonnegative");
    }
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("distribution has empty support");
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("distribution weights sum to " + std::to_string(total));
  }
  cumulative_.resize(weights_.size());
  std::partial_sum(weights_.begin(), weights_.end(), cumulative_.begin());
}

Distribution Distribution::uniform(unsigned n) {
  DomainSpec spec(n);
  return Distribution(n, std::vector<double>(spec.size(), 1.0 / spec.size()));
}

Distribution Distribution::point_mass(unsigned n, Point x) {
  DomainSpec spec(n);
  if (!spec.contains(x)) throw DimensionMismatch("point mass outside the domain");
  std::vector<double> weights(spec.size(), 0.0);
  weights[x.index] = 1.0;
  return Distribution(n, std::move(weights));
}

Point Distribution::quantile(double u) const {
  const double target = u * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  auto index = static_cast<std::size_t>(it - cumulative_.begin());
  if (index >= weights_.size()) index = weights_.size() - 1;
  // Rounding can land on a trailing zero-weight point; step back to support.
  while (weights_[index] == 0.0 && index > 0) --index;
  return Point{static_cast<std::uint32_t>(index)};
}

LabeledSample draw_sample(const Distribution& dist, const DecisionList& c, std::uint64_t m,
                          std::uint64_t seed) {
  if (dist.n() != c.n()) throw DimensionMismatch("distribution and concept dimensions differ");
  if (m == 0) throw std::invalid_argument("sample size must be positive");
  SplitMix64 gen(seed);
  LabeledSample sample{c.n(), {}};
  sample.pairs.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    const Point x = dist.quantile(uniform_unit(gen));
    sample.pairs.push_back({x, c(x)});
  }
  return sample;
}

LabeledSample label_points(const DecisionList& c, std::span<const Point> points) {
  LabeledSample sample{c.n(), {}};
  sample.pairs.reserve(points.size());
  for (Point x : points) sample.pairs.push_back({x, c(x)});
  return sample;
}

double true_error(const DecisionList& h, const DecisionList& c, const Distribution& dist) {
  if (h.n() != c.n() || h.n() != dist.n()) {
    throw DimensionMismatch("true_error arguments have different dimensions");
  }
  double error = 0.0;
  const auto weights = dist.weights();
  for (std::uint32_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0 && h(Point{i}) != c(Point{i})) error += weights[i];
  }
  return error;
}

double training_error(const DecisionList& h, const LabeledSample& sample) {
  if (sample.pairs.empty()) throw std::invalid_argument("training error of an empty sample");
  if (h.n() != sample.n) throw DimensionMismatch("hypothesis and sample dimensions differ");
  std::size_t wrong = 0;
  for (const auto& [x, label] : sample.pairs) {
    if (h(x) != label) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(sample.pairs.size());
}

std::uint64_t fnv1a(std::span<const std::uint8_t> bytes, std::uint64_t hash) {
  for (std::uint8_t b : bytes) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

namespace {

void append_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

std::uint64_t digest(const LabeledSample& sample) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(8 + sample.pairs.size() * 5);
  append_u64(bytes, sample.n);
  for (const auto& [x, label] : sample.pairs) {
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(x.index >> (8 * i)));
    bytes.push_back(label ? 1 : 0);
  }
  return fnv1a(bytes);
}

std::uint64_t digest(const TruthTable& table) {
  std::vector<std::uint8_t> bytes;
  append_u64(bytes, table.size());
  for (auto w : table.words()) append_u64(bytes, w);
  return fnv1a(bytes);
}

DecisionList random_decision_list(unsigned n, unsigned max_rules, unsigned width_max,
                                  std::uint64_t seed) {
  const DomainSpec spec(n);
  const unsigned w_cap = std::min(width_max, n);
  if (w_cap == 0 && max_rules > 0) throw std::invalid_argument("random rules need a positive width");
  SplitMix64 gen(seed);
  const auto rule_count = static_cast<unsigned>(uniform_below(gen, std::uint64_t{max_rules} + 1));
  std::vector<Rule> rules;
  std::vector<std::uint8_t> vars(n);
  for (unsigned r = 0; r < rule_count; ++r) {
    std::iota(vars.begin(), vars.end(), std::uint8_t{0});
    const auto width = static_cast<unsigned>(1 + uniform_below(gen, w_cap));
    std::vector<Literal> literals;
    for (unsigned i = 0; i < width; ++i) {
      const auto j = i + static_cast<unsigned>(uniform_below(gen, n - i));
      std::swap(vars[i], vars[j]);
      literals.push_back(Literal{vars[i], (gen() & 1) != 0});
    }
    rules.push_back(Rule{Term(std::move(literals)), (gen() & 1) != 0});
  }
  return DecisionList(n, std::move(rules), (gen() & 1) != 0);
}

}  // namespace occam
