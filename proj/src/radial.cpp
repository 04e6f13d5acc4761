#include "polaron/radial.hpp"

#include "polaron/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace polaron {

namespace {

constexpr double kPi = std::numbers::pi;

void require_same_grid(const RadialFunction& a, const RadialFunction& b,
                       const char* what) {
  if (!a.grid().same_as(b.grid())) {
    throw InvalidArgument(std::string(what) + ": functions live on different grids");
  }
}

}  // namespace

RadialGrid::RadialGrid(int n, double rmax) {
  if (n < 2) throw InvalidArgument("radial grid needs n >= 2, got " + std::to_string(n));
  if (!(rmax > 0.0) || !std::isfinite(rmax)) {
    throw InvalidArgument("radial grid needs rmax > 0");
  }
  rmax_ = rmax;
  h_ = rmax / n;
  nodes_.resize(n);
  weights_.setConstant(n, h_);
  for (int i = 0; i < n; ++i) nodes_[i] = (i + 1) * rmax / n;
  weights_[n - 1] = 0.5 * h_;
}

GridPtr build_grid(int n, double rmax) {
  return std::make_shared<const RadialGrid>(n, rmax);
}

RadialFunction::RadialFunction(GridPtr grid, Vector values, Parity parity)
    : grid_(std::move(grid)), values_(std::move(values)), parity_(parity) {
  if (!grid_) throw InvalidArgument("radial function without grid");
  if (values_.size() != grid_->size()) {
    throw InvalidArgument("radial function: " + std::to_string(values_.size()) +
                          " values for " + std::to_string(grid_->size()) + " nodes");
  }
  if (!values_.allFinite()) throw NumericalFailure("radial function has non-finite values");
}

RadialFunction RadialFunction::operator*(const RadialFunction& other) const {
  require_same_grid(*this, other, "product");
  const Parity p = parity_ == other.parity_ ? Parity::even : Parity::odd;
  return RadialFunction(grid_, values_.cwiseProduct(other.values_), p);
}

RadialFunction RadialFunction::scaled(double factor) const {
  return RadialFunction(grid_, values_ * factor, parity_);
}

RadialFunction RadialFunction::times_power(int power) const {
  Vector v = values_;
  for (int i = 0; i < v.size(); ++i) v[i] *= std::pow(grid_->node(i), power);
  const Parity p = (power % 2 == 0) == (parity_ == Parity::even) ? Parity::even : Parity::odd;
  return RadialFunction(grid_, std::move(v), p);
}

double RadialFunction::value_at_origin() const {
  if (size() < 3) throw InvalidArgument("extrapolation to origin needs three nodes");
  if (parity_ == Parity::odd) return 0.0;
  const double first[3] = {values_[0], values_[1], values_[2]};
  return extrapolate_to_origin(first);
}

double extrapolate_to_origin(std::span<const double> f) {
  // Lagrange interpolant through (h, 2h, 3h) evaluated at 0.
  return 3.0 * f[0] - 3.0 * f[1] + f[2];
}

double integrate_1d(const RadialGrid& grid, const Vector& integrand,
                    double origin_value) {
  if (integrand.size() != grid.size()) throw InvalidArgument("integrate_1d: size mismatch");
  return grid.weights().dot(integrand) + grid.origin_weight() * origin_value;
}

double integrate_3d(const RadialFunction& f) {
  const auto& g = f.grid();
  const Vector& r = g.nodes();
  return 4.0 * kPi * (g.weights().array() * r.array().square() * f.values().array()).sum();
}

RadialFunction radial_derivative(const RadialFunction& f) {
  const int n = f.size();
  if (n < 4) throw InvalidArgument("radial_derivative needs at least 4 nodes");
  const double h = f.grid().spacing();
  const Vector& v = f.values();
  Vector d(n);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  for (int i = 1; i < n - 1; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  const Parity p = f.parity() == Parity::even ? Parity::odd : Parity::even;
  return RadialFunction(f.grid_ptr(), std::move(d), p);
}

RadialFunction coulomb_potential(const RadialFunction& rho) {
  const auto& g = rho.grid();
  const int n = g.size();
  const double h = g.spacing();
  const Vector& r = g.nodes();
  const Vector& q = rho.values();

  // inner[i] = \int_0^{r_i} s^2 rho ds, trapezoid with zero integrand at s = 0.
  Vector inner(n);
  double acc = 0.0;
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cur = r[i] * r[i] * q[i];
    acc += 0.5 * h * (prev + cur);
    inner[i] = acc;
    prev = cur;
  }
  // outer[i] = \int_{r_i}^{rmax} s rho ds.
  Vector outer(n);
  acc = 0.0;
  outer[n - 1] = 0.0;
  for (int i = n - 2; i >= 0; --i) {
    acc += 0.5 * h * (r[i] * q[i] + r[i + 1] * q[i + 1]);
    outer[i] = acc;
  }
  Vector phi(n);
  for (int i = 0; i < n; ++i) phi[i] = 4.0 * kPi * (inner[i] / r[i] + outer[i]);
  return RadialFunction(rho.grid_ptr(), std::move(phi), Parity::even);
}

double coulomb_bilinear(const RadialFunction& a, const RadialFunction& b) {
  require_same_grid(a, b, "coulomb_bilinear");
  return integrate_3d(a * coulomb_potential(b));
}

namespace {

// \int_0^{rmax} r^k K(p r) f(r) dr on the grid for each p, where the kernel is
// evaluated directly (no FFT).
template <typename Kernel>
Vector radial_transform(const RadialFunction& f, const RadialGrid& pgrid, Kernel kernel) {
  const auto& g = f.grid();
  const Vector& r = g.nodes();
  const Vector wf = g.weights().cwiseProduct(f.values());
  Vector out(pgrid.size());
  for (int j = 0; j < pgrid.size(); ++j) {
    const double p = pgrid.node(j);
    double acc = 0.0;
    for (int i = 0; i < g.size(); ++i) acc += wf[i] * kernel(p, r[i]);
    out[j] = acc;
  }
  return out;
}

double spherical_j1(double x) {
  if (std::abs(x) < 0.05) {
    const double x2 = x * x;
    return x / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0));
  }
  return (std::sin(x) / x - std::cos(x)) / x;
}

}  // namespace

RadialFunction fourier_radial(const RadialFunction& f, const GridPtr& pgrid) {
  Vector s = radial_transform(f, *pgrid, [](double p, double r) { return r * std::sin(p * r); });
  const double c = std::sqrt(2.0 / kPi);
  for (int j = 0; j < s.size(); ++j) s[j] *= c / pgrid->node(j);
  return RadialFunction(pgrid, std::move(s), f.parity());
}

RadialFunction fourier_density(const RadialFunction& rho, const GridPtr& pgrid) {
  Vector s = radial_transform(rho, *pgrid, [](double p, double r) { return r * std::sin(p * r); });
  for (int j = 0; j < s.size(); ++j) s[j] *= 4.0 * kPi / pgrid->node(j);
  return RadialFunction(pgrid, std::move(s), Parity::even);
}

RadialFunction fourier_radial_derivative(const RadialFunction& f, const GridPtr& pgrid) {
  // p^{-1} \int r^2 cos(pr) f - p^{-2} \int r sin(pr) f = -\int r^3 j1(pr) f,
  // written with j1 so that small p does not cancel.
  Vector d = radial_transform(f, *pgrid, [](double p, double r) {
    return -r * r * r * spherical_j1(p * r);
  });
  d *= std::sqrt(2.0 / kPi);
  return RadialFunction(pgrid, std::move(d), Parity::odd);
}

}  // namespace polaron
