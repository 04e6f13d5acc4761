#pragma once

// Strong-coupling limit of the variational bound on the inverse effective
// mass. With the trial direction
//
//   t(p) = (grad psi_hat(p) / psi_hat(p)) chi(eps p) = p h(p),
//
// the right-hand side of the bound tends (alpha -> infinity) to
//
//   f(eps) = 1 + (Q1 - Q2) / 3 + 4 R / 3,
//
//   R  = \int psi_hat^2 p.t                       -> -3/2
//   Q1 = \int chi^2 |grad psi_hat|^2 (p^2 + mu)
//   Q2 = (sqrt 2/pi) \iint phi(k)/|k| chi grad psi_hat(p+k) . chi grad psi_hat(p)
//
// and Q1 - Q2 -> 3 as eps -> 0, so f -> 0 and the mass diverges.

#include "polaron/momentum.hpp"

#include <utility>
#include <vector>

namespace polaron {

enum class CutoffShape { bump, gaussian, one };

struct CutoffSpec {
  double eps = 0.1;
  CutoffShape shape = CutoffShape::bump;
  double support_radius = 1.0;  // s* of the bump

  static CutoffSpec identity() { return {0.0, CutoffShape::one, 1.0}; }

  void validate() const;
  /// chi(s); chi(0) = 1 for every shape.
  double chi(double s) const;
  double operator()(double p) const { return chi(eps * p); }
  /// Largest |p| with chi(eps p) != 0 (infinity when not compactly supported).
  double support_end() const;
};

/// h(p) = psi_hat'(p) / (p psi_hat(p)) chi(eps p); zero outside the support
/// of chi. Throws DomainFailure if psi_hat <= 0 inside the support.
RadialFunction trial_profile(const MomentumProfile& mp, const CutoffSpec& cut);

/// R(eps) = 4 pi \int p^3 chi(eps p) psi_hat psi_hat' dp.
double pairing_term(const MomentumProfile& mp, const CutoffSpec& cut);

/// Q1(eps) = 4 pi \int p^2 chi(eps p)^2 psi_hat'^2 (p^2 + mu) dp.
double kinetic_term(const MomentumProfile& mp, const CutoffSpec& cut);

/// Q2(eps) by angular reduction; the k-sum includes the origin, where
/// k^2 phi(k)/k tends to rho_hat(0)/(sqrt 2 pi). With `restrict_to_support`
/// the loops skip nodes where every term vanishes because chi does.
double potential_term(const MomentumProfile& mp, const CutoffSpec& cut,
                      const QuadratureSettings& quad = {}, bool restrict_to_support = true);

struct MassBoundReport {
  double eps = 0.0;
  double R = 0.0;
  double Q1 = 0.0;
  double Q2 = 0.0;
  double f = 0.0;
  double m_lower = 0.0;        // 1/(2f), +infinity when f <= 0
  bool f_nonpositive = false;  // m_lower is the +infinity sentinel
  double identity_neg32 = 0.0; // R at chi = 1
  double identity_3 = 0.0;     // Q1 - Q2 at chi = 1
  double mass_coeff = 0.0;
};

/// Assembles f(eps) for `cut` together with the chi = 1 identity values.
MassBoundReport bound_rhs(const MomentumProfile& mp, const CutoffSpec& cut,
                          const QuadratureSettings& quad = {});

/// One report per cutoff, followed by the chi = 1 endpoint (eps = 0); the
/// endpoint is evaluated once and shared.
std::vector<MassBoundReport> bound_sweep(const MomentumProfile& mp, const std::vector<CutoffSpec>& cuts,
                                         const QuadratureSettings& quad = {});

struct ScalingPrediction {
  double energy;  // alpha^2 e^P
  double mass;    // alpha^4 coeff
};

ScalingPrediction alpha_scaling(const PekarState& state, double coeff, double alpha);

}  // namespace polaron
