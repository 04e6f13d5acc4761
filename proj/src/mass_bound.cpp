#include "polaron/mass_bound.hpp"

#include "polaron/error.hpp"
#include "polaron/parallel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace polaron {

namespace {

constexpr double kPi = std::numbers::pi;

double weighted_sum(const RadialGrid& g, const CutoffSpec& cut, auto&& integrand) {
  const double end = cut.support_end();
  double acc = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    const double p = g.node(i);
    if (p >= end) break;
    acc += g.weights()[i] * integrand(i, p);
  }
  return acc;
}

}  // namespace

void CutoffSpec::validate() const {
  if (shape == CutoffShape::one) return;
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("cutoff eps must be positive");
  if (!(support_radius > 0.0)) throw InvalidArgument("cutoff support radius must be positive");
}

double CutoffSpec::chi(double s) const {
  switch (shape) {
    case CutoffShape::one:
      return 1.0;
    case CutoffShape::gaussian:
      return std::exp(-s * s);
    case CutoffShape::bump: {
      const double x = s / support_radius;
      const double x2 = x * x;
      if (x2 >= 1.0) return 0.0;
      return std::exp(1.0 - 1.0 / (1.0 - x2));
    }
  }
  return 0.0;
}

double CutoffSpec::support_end() const {
  if (shape != CutoffShape::bump) return std::numeric_limits<double>::infinity();
  return support_radius / eps;
}

RadialFunction trial_profile(const MomentumProfile& mp, const CutoffSpec& cut) {
  cut.validate();
  const RadialGrid& g = *mp.pgrid;
  Vector h = Vector::Zero(g.size());
  for (int i = 0; i < g.size(); ++i) {
    const double p = g.node(i);
    const double c = cut(p);
    if (c == 0.0) continue;
    if (!(mp.psi_hat[i] > 0.0)) {
      throw DomainFailure("psi_hat <= 0 inside the cutoff support at p = " + std::to_string(p));
    }
    h[i] = mp.dpsi_hat[i] / (p * mp.psi_hat[i]) * c;
  }
  return RadialFunction(mp.pgrid, std::move(h), Parity::even);
}

double pairing_term(const MomentumProfile& mp, const CutoffSpec& cut) {
  cut.validate();
  return 4.0 * kPi * weighted_sum(*mp.pgrid, cut, [&](int i, double p) {
           return p * p * p * cut(p) * mp.psi_hat[i] * mp.dpsi_hat[i];
         });
}

double kinetic_term(const MomentumProfile& mp, const CutoffSpec& cut) {
  cut.validate();
  return 4.0 * kPi * weighted_sum(*mp.pgrid, cut, [&](int i, double p) {
           const double c = cut(p);
           const double d = mp.dpsi_hat[i];
           return p * p * c * c * d * d * (p * p + mp.mu);
         });
}

double potential_term(const MomentumProfile& mp, const CutoffSpec& cut,
                      const QuadratureSettings& quad, bool restrict_to_support) {
  cut.validate();
  const ConvolutionTables tab = convolution_tables(mp, quad);
  const RadialGrid& g = *tab.reduced;
  const int n = g.size();
  const auto& c = tab.angular.nodes;
  const auto& wc = tab.angular.weights;

  const double p_end = restrict_to_support ? cut.support_end() : std::numeric_limits<double>::infinity();
  const double k_end = 2.0 * p_end;

  // chi(eps p) psi_hat'(p) on the reduced nodes.
  Vector grad(n);
  for (int j = 0; j < n; ++j) {
    const double p = g.node(j);
    grad[j] = cut(p) * p * tab.dpsi_over_p(p);
  }

  // Row i = -1 is the origin of the k-sum.
  const std::vector<double> rows = parallel_map(n + 1, [&](int row) {
    const int i = row - 1;
    const double k = i < 0 ? 0.0 : g.node(i);
    if (k >= k_end) return 0.0;
    const double wk = i < 0 ? g.origin_weight() : g.weights()[i];
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p = g.node(j);
      if (p >= p_end) break;
      double inner = 0.0;
      for (std::size_t a = 0; a < c.size(); ++a) {
        const double q = std::sqrt(std::max(0.0, p * p + k * k + 2.0 * p * k * c[a]));
        // grad psi_hat(p+k) . p_hat = psi_hat'(q)/q (p + k c)
        inner += wc[a] * cut(q) * tab.dpsi_over_p(q) * (p + k * c[a]);
      }
      acc += g.weights()[j] * p * p * grad[j] * inner;
    }
    return wk * tab.k_phi(k) * acc;
  });

  double total = 0.0;
  for (double r : rows) total += r;
  return 8.0 * kPi * kPi * (std::sqrt(2.0) / kPi) * total;
}

namespace {

MassBoundReport assemble(const MomentumProfile& mp, const CutoffSpec& cut, const QuadratureSettings& quad) {
  MassBoundReport rep;
  rep.eps = cut.shape == CutoffShape::one ? 0.0 : cut.eps;
  rep.R = pairing_term(mp, cut);
  rep.Q1 = kinetic_term(mp, cut);
  rep.Q2 = potential_term(mp, cut, quad);
  rep.f = 1.0 + (rep.Q1 - rep.Q2) / 3.0 + 4.0 * rep.R / 3.0;
  rep.f_nonpositive = !(rep.f > 0.0);
  rep.m_lower = rep.f_nonpositive ? std::numeric_limits<double>::infinity() : 1.0 / (2.0 * rep.f);
  rep.mass_coeff = mp.mass_coeff;
  return rep;
}

void attach_identities(MassBoundReport& rep, const MassBoundReport& endpoint) {
  rep.identity_neg32 = endpoint.R;
  rep.identity_3 = endpoint.Q1 - endpoint.Q2;
}

}  // namespace

MassBoundReport bound_rhs(const MomentumProfile& mp, const CutoffSpec& cut,
                          const QuadratureSettings& quad) {
  MassBoundReport rep = assemble(mp, cut, quad);
  attach_identities(rep, cut.shape == CutoffShape::one ? rep : assemble(mp, CutoffSpec::identity(), quad));
  return rep;
}

std::vector<MassBoundReport> bound_sweep(const MomentumProfile& mp, const std::vector<CutoffSpec>& cuts,
                                         const QuadratureSettings& quad) {
  MassBoundReport endpoint = assemble(mp, CutoffSpec::identity(), quad);
  attach_identities(endpoint, endpoint);
  std::vector<MassBoundReport> out;
  out.reserve(cuts.size() + 1);
  for (const CutoffSpec& cut : cuts) {
    out.push_back(assemble(mp, cut, quad));
    attach_identities(out.back(), endpoint);
  }
  out.push_back(endpoint);
  return out;
}

ScalingPrediction alpha_scaling(const PekarState& state, double coeff, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  const double a2 = alpha * alpha;
  return {a2 * state.eP, a2 * a2 * coeff};
}

}  // namespace polaron
