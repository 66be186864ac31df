#include "occam/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "occam/report.hpp"

namespace occam {

PolynomialBound::PolynomialBound(std::string name, std::vector<std::string> variables,
                                 std::vector<Monomial> terms)
    : name_(std::move(name)), variables_(std::move(variables)), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (!(t.coefficient >= 0.0) || !std::isfinite(t.coefficient)) {
      throw std::invalid_argument(name_ + ": coefficients must be finite and nonnegative");
    }
    if (t.exponents.size() != variables_.size()) {
      throw std::invalid_argument(name_ + ": monomial arity differs from the variable count");
    }
  }
}

double PolynomialBound::operator()(std::span<const double> values) const {
  if (values.size() != variables_.size()) {
    throw std::invalid_argument(name_ + ": expected " + std::to_string(variables_.size()) + " values");
  }
  double total = 0.0;
  for (const auto& t : terms_) {
    double v = t.coefficient;
    for (std::size_t i = 0; i < values.size(); ++i) {
      v *= std::pow(values[i], static_cast<double>(t.exponents[i]));
    }
    total += v;
  }
  return total;
}

std::size_t PolynomialBound::index_of(const std::string& variable) const {
  auto it = std::find(variables_.begin(), variables_.end(), variable);
  if (it == variables_.end()) throw std::out_of_range(name_ + " has no variable " + variable);
  return static_cast<std::size_t>(it - variables_.begin());
}

unsigned PolynomialBound::degree_in(const std::string& variable) const {
  const std::size_t i = index_of(variable);
  unsigned degree = 0;
  for (const auto& t : terms_) {
    if (t.coefficient > 0.0) degree = std::max(degree, t.exponents[i]);
  }
  return degree;
}

std::string PolynomialBound::to_string() const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    out += format_number(t.coefficient);
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      out += "*" + variables_[i];
      if (t.exponents[i] > 1) out += "^" + std::to_string(t.exponents[i]);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace occam
