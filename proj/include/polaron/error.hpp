#pragma once

#include <stdexcept>
#include <string>

namespace polaron {

/// Precondition violated by the caller (bad sizes, mismatched grids, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical kernel produced a non-finite or otherwise unusable result.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input lies outside the region where an expression is defined, e.g. a
/// non-positive momentum profile where its logarithmic derivative is needed.
class DomainFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The gradient flow increased the energy beyond tolerance.
class StepSizeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polaron
