#pragma once

// Rotation-invariant functions on R^3 sampled on a uniform radial grid.
//
// The grid excludes the origin: nodes are r_i = i*h, i = 1..n, h = rmax/n.
// Every 3D integrand carries an r^2 Jacobian, so the origin contributes
// nothing to integrate_3d. The composite trapezoid rule over [0, rmax] gives
// the origin its own half weight h/2; it is kept separately on the grid
// (origin_weight) and only used by integrals whose integrand is finite and
// nonzero at r = 0 (integrate_1d with an explicit origin value).

#include <Eigen/Dense>

#include <memory>
#include <span>

namespace polaron {

using Vector = Eigen::VectorXd;

class RadialGrid {
 public:
  RadialGrid(int n, double rmax);

  int size() const { return static_cast<int>(nodes_.size()); }
  double spacing() const { return h_; }
  double rmax() const { return rmax_; }
  const Vector& nodes() const { return nodes_; }
  const Vector& weights() const { return weights_; }
  double origin_weight() const { return 0.5 * h_; }
  double node(int i) const { return nodes_[i]; }

  bool same_as(const RadialGrid& other) const {
    return nodes_.size() == other.nodes_.size() && rmax_ == other.rmax_;
  }

 private:
  double h_;
  double rmax_;
  Vector nodes_;
  Vector weights_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr build_grid(int n, double rmax);

/// Behaviour of the 3D extension at the origin, used when a value "at r = 0"
/// is extrapolated.
enum class Parity { even, odd };

class RadialFunction {
 public:
  RadialFunction(GridPtr grid, Vector values, Parity parity = Parity::even);

  template <typename F>
  static RadialFunction sample(GridPtr grid, F&& f,
                               Parity parity = Parity::even) {
    Vector v(grid->size());
    for (int i = 0; i < grid->size(); ++i) v[i] = f(grid->node(i));
    return RadialFunction(std::move(grid), std::move(v), parity);
  }

  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const Vector& values() const { return values_; }
  double operator[](int i) const { return values_[i]; }
  int size() const { return static_cast<int>(values_.size()); }
  Parity parity() const { return parity_; }

  /// Pointwise product/transform helpers; results live on the same grid.
  RadialFunction operator*(const RadialFunction& other) const;
  RadialFunction scaled(double factor) const;
  RadialFunction times_power(int power) const;  // f(r) * r^power

  /// Quadratic extrapolation to r = 0 from the three smallest nodes.
  double value_at_origin() const;

 private:
  GridPtr grid_;
  Vector values_;
  Parity parity_;
};

double extrapolate_to_origin(std::span<const double> first_three);

/// \int_0^{rmax} f(r) dr by the grid trapezoid rule. The integrand value at
/// r = 0 enters with the origin half weight.
double integrate_1d(const RadialGrid& grid, const Vector& integrand,
                    double origin_value = 0.0);

/// \int_{R^3} f(|x|) dx = 4 pi \sum_i w_i r_i^2 f(r_i).
double integrate_3d(const RadialFunction& f);

/// d f / d r: central differences inside, one-sided second-order stencils at
/// both ends. Requires at least four nodes.
RadialFunction radial_derivative(const RadialFunction& f);

/// Coulomb potential \int rho(y)/|x-y| dy of a radial density by Newton's
/// theorem, with cumulative trapezoid integrals on the grid.
RadialFunction coulomb_potential(const RadialFunction& rho);

/// \iint a(x) b(y) / |x-y| dx dy.
double coulomb_bilinear(const RadialFunction& a, const RadialFunction& b);

/// Unitary transform (2 pi)^{-3/2} \int f(x) e^{-ip.x} dx of a radial
/// function, sampled on `pgrid`. The transform of a radial function is real
/// and is its own inverse.
RadialFunction fourier_radial(const RadialFunction& f, const GridPtr& pgrid);

/// Raw transform \int rho(x) e^{-ip.x} dx (no (2 pi) prefactor). Used for
/// densities and for the phonon field.
RadialFunction fourier_density(const RadialFunction& rho,
                               const GridPtr& pgrid);

/// p-derivative of the unitary transform, computed from the differentiated
/// kernel rather than by differencing.
RadialFunction fourier_radial_derivative(const RadialFunction& f,
                                         const GridPtr& pgrid);

}  // namespace polaron
