#pragma once

#include "polaron/radial.hpp"

#include <vector>

namespace polaron {

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Butland slopes) on
/// the uniform table {0, h, 2h, ..., n h}. The value at 0 is supplied by the
/// caller; arguments beyond the last node evaluate to zero.
class MonotoneCubic {
 public:
  MonotoneCubic(double spacing, std::vector<double> values);

  /// Table built from a radial function plus its extrapolated origin value.
  static MonotoneCubic from(const RadialFunction& f);
  static MonotoneCubic from(const RadialFunction& f, double origin_value);

  double operator()(double x) const;
  double upper() const { return spacing_ * static_cast<double>(values_.size() - 1); }

 private:
  double spacing_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussLegendreRule gauss_legendre(int n);

}  // namespace polaron
