#include "polaron/interpolation.hpp"

#include "polaron/error.hpp"

#include <cmath>
#include <numbers>

namespace polaron {

MonotoneCubic::MonotoneCubic(double spacing, std::vector<double> values)
    : spacing_(spacing), values_(std::move(values)) {
  const std::size_t n = values_.size();
  if (n < 3) throw InvalidArgument("monotone cubic needs at least three samples");
  if (!(spacing_ > 0.0)) throw InvalidArgument("monotone cubic needs positive spacing");

  std::vector<double> delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (values_[i + 1] - values_[i]) / spacing_;

  slopes_.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double a = delta[i - 1];
    const double b = delta[i];
    if (a * b > 0.0) slopes_[i] = 2.0 * a * b / (a + b);  // harmonic mean on uniform spacing
  }
  // Three-point end slopes, limited so the end intervals stay monotone.
  auto end_slope = [](double d0, double d1) {
    double s = 0.5 * (3.0 * d0 - d1);
    if (s * d0 <= 0.0) {
      s = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0)) {
      s = 3.0 * d0;
    }
    return s;
  };
  slopes_[0] = end_slope(delta[0], delta[1]);
  slopes_[n - 1] = end_slope(delta[n - 2], delta[n - 3]);
}

MonotoneCubic MonotoneCubic::from(const RadialFunction& f) {
  return from(f, f.value_at_origin());
}

MonotoneCubic MonotoneCubic::from(const RadialFunction& f, double origin_value) {
  std::vector<double> v(f.size() + 1);
  v[0] = origin_value;
  for (int i = 0; i < f.size(); ++i) v[i + 1] = f[i];
  return MonotoneCubic(f.grid().spacing(), std::move(v));
}

double MonotoneCubic::operator()(double x) const {
  if (x < 0.0) x = -x;
  const double t_all = x / spacing_;
  const auto last = values_.size() - 1;
  if (t_all > static_cast<double>(last)) return 0.0;
  std::size_t i = static_cast<std::size_t>(t_all);
  if (i >= last) i = last - 1;
  const double t = t_all - static_cast<double>(i);
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * values_[i] + h10 * spacing_ * slopes_[i] + h01 * values_[i + 1] +
         h11 * spacing_ * slopes_[i + 1];
}

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs n >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace polaron
