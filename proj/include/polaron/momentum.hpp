#pragma once

// Momentum-space picture of the Pekar minimizer and the classical
// functionals its quantum ground state converges to at strong coupling.
//
// Conventions:
//   psi_hat(p) = (2 pi)^{-3/2} \int psi(x) e^{-ip.x} dx      (unitary)
//   rho_hat(p) = \int rho(x) e^{-ip.x} dx                      (raw)
//   phi(p)     = rho_hat(p) / (sqrt(2) pi |p|)                 (phonon field)
// All three are real and radial.

#include "polaron/interpolation.hpp"
#include "polaron/pekar.hpp"
#include "polaron/radial.hpp"

#include <functional>

namespace polaron {

struct MomentumProfile {
  GridPtr pgrid;
  RadialFunction psi_hat;
  RadialFunction dpsi_hat;  // d psi_hat / dp, so grad psi_hat = p_hat * dpsi_hat
  RadialFunction phi;
  double mu = 0.0;
  double eP = 0.0;
  double D = 0.0;
  double mass_coeff = 0.0;  // (8 pi / 3) \int psi^4
};

struct QuadratureSettings {
  int reduced_n = 400;
  int angular_nodes = 64;

  void validate() const;
};

/// A real radial profile g(|p|). `bounded` records whether the caller
/// vouches for sup |g| < infinity.
struct RadialTestFunction {
  std::function<double(double)> f;
  bool bounded = true;

  double operator()(double p) const { return f(p); }

  static RadialTestFunction constant(double c) {
    return {[c](double) { return c; }, true};
  }
};

/// (8 pi / 3) \int |psi|^4, the conjectured alpha^{-4} limit of the mass.
double mass_coefficient(const PekarState& state);

GridPtr default_momentum_grid();  // 2000 nodes on (0, 2]

/// Throws DomainFailure if psi_hat is not strictly positive on the grid.
MomentumProfile momentum_profile(const PekarState& state, const GridPtr& pgrid);

/// \int phi(p)^2 dp over R^3 on the momentum grid.
double field_norm(const MomentumProfile& mp);

/// \int |psi_hat|^2 dp over R^3 on the momentum grid.
double momentum_norm(const MomentumProfile& mp);

/// Interpolation tables shared by the angular-reduced double integrals.
struct ConvolutionTables {
  GridPtr reduced;           // outer quadrature grid on (0, pmax]
  MonotoneCubic psi_hat;     // psi_hat(q)
  MonotoneCubic dpsi_over_p; // psi_hat'(q) / q
  MonotoneCubic k_phi;       // k phi(k) = rho_hat(k) / (sqrt 2 pi)
  GaussLegendreRule angular;
};

ConvolutionTables convolution_tables(const MomentumProfile& mp, const QuadratureSettings& quad);

/// Weighted L^2 norm over the reduced momentum grid of
///   (p^2 + mu) psi_hat(p) - (sqrt 2 / pi) \int dk phi(k)/|k| psi_hat(p + k).
double el_residual_momentum(const MomentumProfile& mp, const QuadratureSettings& quad = {});

/// \int |psi_hat(p)|^2 g(p) dp.
double lemma1_density_expectation(const MomentumProfile& mp, const RadialTestFunction& g);

/// (\int phi^2) (\int |psi_hat|^2 g). Requires a bounded g.
double lemma1_number_expectation(const MomentumProfile& mp, const RadialTestFunction& g);

enum class CrossEvaluation { standard, swapped };

/// \iint dk dp phi(k) xi(k) psi_hat(p+k) g(p+k) psi_hat(p) g(p), reduced to
/// 8 pi^2 \int k^2 dk \int p^2 dp \int_{-1}^{1} dc. `swapped` puts the grid
/// factor at p+k and interpolates the factor at p instead.
double lemma1_cross(const MomentumProfile& mp, const RadialTestFunction& xi,
                    const RadialTestFunction& g, const QuadratureSettings& quad = {},
                    CrossEvaluation evaluation = CrossEvaluation::standard);

}  // namespace polaron
