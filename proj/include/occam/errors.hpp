#pragma once

#include <stdexcept>
#include <string>

namespace occam {

/// A configured enumeration or work limit would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point, concept or sample belongs to a different bit-dimension.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A learner could not produce a hypothesis (for the greedy list learner:
/// the drawn examples are not realisable at the configured term width).
class LearnerFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Labels disagree on duplicated sample points.
class CorruptSample : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace occam
