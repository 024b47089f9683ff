#pragma once

#include <stdexcept>

#include "ctsched/model.hpp"

namespace ctsched {

/// The instance is outside the class a solver handles.
class NotApplicable : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Input larger than an exhaustive method's configured cap.
class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Solution {
  Time lmax = 0;
  Sequence schedule;
  /// False when a search budget ran out before optimality was certified;
  /// lmax is then an upper bound attained by `schedule`.
  bool proven_optimal = true;
};

}  // namespace ctsched
