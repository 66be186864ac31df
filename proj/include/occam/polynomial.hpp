#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace occam {

/// coefficient * prod_i var_i^exponents[i]
struct Monomial {
  double coefficient = 0.0;
  std::vector<unsigned> exponents;
};

/// Multivariate polynomial with nonnegative coefficients over named variables,
/// hence nondecreasing in every variable on the positive orthant.
class PolynomialBound {
 public:
  /// Throws std::invalid_argument on a negative coefficient or an exponent
  /// vector whose length differs from the variable count.
  PolynomialBound(std::string name, std::vector<std::string> variables, std::vector<Monomial> terms);

  const std::string& name() const { return name_; }
  std::span<const std::string> variables() const { return variables_; }
  std::span<const Monomial> terms() const { return terms_; }

  /// Values in the order of variables().
  double operator()(std::span<const double> values) const;
  double operator()(std::initializer_list<double> values) const {
    return (*this)(std::span<const double>(values.begin(), values.size()));
  }

  /// Index of a variable; throws std::out_of_range when absent.
  std::size_t index_of(const std::string& variable) const;

  /// Highest exponent of the variable over terms with positive coefficient.
  unsigned degree_in(const std::string& variable) const;

  std::string to_string() const;

 private:
  std::string name_;
  std::vector<std::string> variables_;
  std::vector<Monomial> terms_;
};

}  // namespace occam
