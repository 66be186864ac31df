#pragma once

// Closure of decision lists under exception lists: ExList(c, E) = c xor E.

#include <cstdint>
#include <span>
#include <vector>

#include "occam/domain.hpp"

namespace occam {

/// Finite E subset of X_n, kept sorted and duplicate-free.
class ExceptionSet {
 public:
  /// Throws DimensionMismatch for points outside X_n.
  ExceptionSet(unsigned n, std::vector<Point> points);

  unsigned n() const { return n_; }
  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool contains(Point x) const;

  friend bool operator==(const ExceptionSet&, const ExceptionSet&) = default;

 private:
  unsigned n_;
  std::vector<Point> points_;
};

/// Size bound of the prepend construction: p_ex(n, s, e) = s + e (n + 1).
struct ExListBound {
  std::uint64_t operator()(std::uint64_t n, std::uint64_t s, std::uint64_t e) const {
    return s + e * (n + 1);
  }
};

/// Prepends, for each exception x in ascending order, a full-width rule
/// matching only x and carrying the label not c(x).
DecisionList ex_list(const DecisionList& c, const ExceptionSet& exceptions);

/// Distinct sample points that c_prime mislabels. Throws CorruptSample when a
/// point occurs with both labels.
ExceptionSet compute_exceptions(const DecisionList& c_prime, const LabeledSample& sample);

}  // namespace occam
