#include "occam/exception_list.hpp"

#include <algorithm>
#include <map>

namespace occam {

ExceptionSet::ExceptionSet(unsigned n, std::vector<Point> points)
    : n_(n), points_(std::move(points)) {
  const DomainSpec spec(n);
  for (Point x : points_) {
    if (!spec.contains(x)) {
      throw DimensionMismatch("exception point " + std::to_string(x.index) + " is outside X_" +
                              std::to_string(n));
    }
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool ExceptionSet::contains(Point x) const {
  return std::binary_search(points_.begin(), points_.end(), x);
}

DecisionList ex_list(const DecisionList& c, const ExceptionSet& exceptions) {
  if (exceptions.n() != c.n()) throw DimensionMismatch("exception set and concept dimensions differ");
  const DomainSpec spec(c.n(), 31);
  std::vector<Rule> rules;
  rules.reserve(exceptions.size() + c.rules().size());
  for (Point x : exceptions.points()) rules.push_back(Rule{Term::full(spec, x), !c(x)});
  rules.insert(rules.end(), c.rules().begin(), c.rules().end());
  return DecisionList(c.n(), std::move(rules), c.default_label());
}

ExceptionSet compute_exceptions(const DecisionList& c_prime, const LabeledSample& sample) {
  if (sample.pairs.empty()) throw std::invalid_argument("cannot compute exceptions of an empty sample");
  if (sample.n != c_prime.n()) throw DimensionMismatch("hypothesis and sample dimensions differ");
  std::map<Point, bool> seen;
  std::vector<Point> wrong;
  for (const auto& [x, label] : sample.pairs) {
    auto [it, inserted] = seen.emplace(x, label);
    if (!inserted) {
      if (it->second != label) {
        throw CorruptSample("point " + DomainSpec(sample.n, 31).format(x) +
                            " appears with both labels");
      }
      continue;
    }
    if (c_prime(x) != label) wrong.push_back(x);
  }
  return ExceptionSet(sample.n, std::move(wrong));
}

}  // namespace occam
