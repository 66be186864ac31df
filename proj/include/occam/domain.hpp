#pragma once

// Finite boolean learning domains, decision-list concepts and their
// evaluation, distributions, labelled samples and error measures.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "occam/errors.hpp"

namespace occam {

inline constexpr unsigned kDefaultMaxDimension = 16;
inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// A point of X_n, stored as the integer whose binary expansion (most
/// significant bit first) is x_1 x_2 ... x_n. Integer order is therefore the
/// lexicographic order of the bit strings.
struct Point {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(Point, Point) = default;
};

class DomainSpec {
 public:
  /// Throws CapExceeded when n exceeds max_dimension, std::invalid_argument
  /// when n is zero.
  explicit DomainSpec(unsigned n, unsigned max_dimension = kDefaultMaxDimension);

  unsigned n() const { return n_; }
  std::uint32_t size() const { return std::uint32_t{1} << n_; }
  bool contains(Point x) const { return x.index < size(); }

  /// Value of variable `var` (0-based, x_1 is var 0) at x.
  bool value(Point x, unsigned var) const { return (x.index >> (n_ - 1 - var)) & 1U; }

  std::string format(Point x) const;
  Point parse(std::string_view bits) const;

 private:
  unsigned n_;
};

std::vector<Point> enumerate_domain(const DomainSpec& spec);

/// Fixed-length bit vector. Used for concept truth tables over X_n (bit i is
/// the label of point i) and for dichotomies on ordered point sets.
class TruthTable {
 public:
  TruthTable() = default;
  explicit TruthTable(std::size_t bits) : size_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t count() const;
  bool none() const;
  std::span<const std::uint64_t> words() const { return words_; }

  TruthTable& operator^=(const TruthTable& other);
  TruthTable& operator&=(const TruthTable& other);
  TruthTable& operator|=(const TruthTable& other);
  TruthTable operator~() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;
  friend auto operator<=>(const TruthTable&, const TruthTable&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline TruthTable operator^(TruthTable a, const TruthTable& b) { return a ^= b; }
inline TruthTable operator&(TruthTable a, const TruthTable& b) { return a &= b; }
inline TruthTable operator|(TruthTable a, const TruthTable& b) { return a |= b; }

struct Literal {
  std::uint8_t var = 0;
  bool positive = true;

  /// Sort key: variables ascending, the positive literal before the negated one.
  constexpr unsigned key() const { return 2U * var + (positive ? 0U : 1U); }

  friend constexpr bool operator==(Literal, Literal) = default;
};

/// Conjunction of literals over distinct variables, kept sorted by variable.
class Term {
 public:
  Term() = default;
  /// Throws std::invalid_argument when a variable appears twice.
  explicit Term(std::vector<Literal> literals);

  std::span<const Literal> literals() const { return literals_; }
  std::size_t width() const { return literals_.size(); }

  /// Exactly the point x (every variable fixed).
  static Term full(const DomainSpec& spec, Point x);

  friend bool operator==(const Term&, const Term&) = default;
  /// Lexicographic order on the literal key sequences.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  std::vector<Literal> literals_;
};

struct Rule {
  Term term;
  bool label = false;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct ConceptSize {
  std::uint64_t value = 1;

  friend constexpr auto operator<=>(ConceptSize, ConceptSize) = default;
};

/// Ordered (term, label) rules with a default label; first match wins.
class DecisionList {
 public:
  /// Throws DimensionMismatch when a literal refers to a variable >= n.
  DecisionList(unsigned n, std::vector<Rule> rules, bool default_label);

  static DecisionList constant(unsigned n, bool label) { return DecisionList(n, {}, label); }

  unsigned n() const { return n_; }
  std::span<const Rule> rules() const { return rules_; }
  bool default_label() const { return default_label_; }

  /// Throws DimensionMismatch for x outside X_n.
  bool operator()(Point x) const;

  friend bool operator==(const DecisionList& a, const DecisionList& b) {
    return a.n_ == b.n_ && a.default_label_ == b.default_label_ && a.rules_ == b.rules_;
  }

 private:
  struct Mask {
    std::uint32_t care;
    std::uint32_t want;
  };

  unsigned n_;
  std::vector<Rule> rules_;
  bool default_label_;
  std::vector<Mask> masks_;
};

bool eval_concept(const DecisionList& c, Point x);

/// Sum over rules of (literals + 1), plus 1 for the default.
ConceptSize concept_size(const DecisionList& c);

TruthTable truth_table(const DecisionList& c);

/// C_{n,s}: every decision list over n variables with size <= s_max whose
/// terms are non-empty and have at most width_max literals.
struct ConceptClassDescriptor {
  unsigned n = 1;
  std::uint64_t s_max = 1;
  unsigned width_max = 1;
};

/// Number of lists enumerate_concepts would yield (saturates at UINT64_MAX).
std::uint64_t count_concepts(const ConceptClassDescriptor& desc);

/// Every list of the class exactly once, in a fixed order. Throws CapExceeded
/// (before generating anything) when the count exceeds `cap`.
std::vector<DecisionList> enumerate_concepts(const ConceptClassDescriptor& desc,
                                             std::uint64_t cap = kDefaultEnumerationCap);

/// All terms of width 1..width_max over n variables, ordered by width and
/// then lexicographically.
std::vector<Term> enumerate_terms(unsigned n, unsigned width_max);

class Distribution {
 public:
  /// Weights indexed by point. Throws std::invalid_argument unless the weights
  /// are nonnegative and sum to 1 within 1e-12.
  Distribution(unsigned n, std::vector<double> weights);

  static Distribution uniform(unsigned n);
  static Distribution point_mass(unsigned n, Point x);

  unsigned n() const { return n_; }
  double weight(Point x) const { return weights_[x.index]; }
  std::span<const double> weights() const { return weights_; }

  /// Maps u in [0,1) to a point; zero-weight points are never returned.
  Point quantile(double u) const;

 private:
  unsigned n_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

struct LabeledPoint {
  Point x;
  bool label = false;

  friend constexpr bool operator==(LabeledPoint, LabeledPoint) = default;
};

/// The m-sample M as an ordered multiset of labelled points.
struct LabeledSample {
  unsigned n = 1;
  std::vector<LabeledPoint> pairs;

  std::size_t m() const { return pairs.size(); }
  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

/// m i.i.d. draws from dist labelled by c; a pure function of the seed.
LabeledSample draw_sample(const Distribution& dist, const DecisionList& c, std::uint64_t m,
                          std::uint64_t seed);

/// Labels the given points with c.
LabeledSample label_points(const DecisionList& c, std::span<const Point> points);

/// Exact probability mass of h xor c.
double true_error(const DecisionList& h, const DecisionList& c, const Distribution& dist);

/// Fraction of sample pairs that h mislabels. Throws std::invalid_argument on
/// an empty sample.
double training_error(const DecisionList& h, const LabeledSample& sample);

/// Up to max_rules rules with random terms of width 1..width_max (capped at
/// n), random labels and default; a pure function of the seed.
DecisionList random_decision_list(unsigned n, unsigned max_rules, unsigned width_max,
                                  std::uint64_t seed);

std::uint64_t fnv1a(std::span<const std::uint8_t> bytes, std::uint64_t hash = 0xcbf29ce484222325ULL);
std::uint64_t digest(const LabeledSample& sample);
std::uint64_t digest(const TruthTable& table);

}  // namespace occam
