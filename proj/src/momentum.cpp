#include "polaron/momentum.hpp"

#include "polaron/error.hpp"
#include "polaron/parallel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace polaron {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

// 4 pi \int p^2 f(p) dp where p^2 f(p) is even and finite at the origin.
double integrate_3d_with_origin(const RadialGrid& g, const Vector& f, double p2f_at_origin) {
  const Vector p2f = g.nodes().array().square() * f.array();
  return 4.0 * kPi * integrate_1d(g, p2f, p2f_at_origin);
}

}  // namespace

void QuadratureSettings::validate() const {
  if (reduced_n < 2) throw InvalidArgument("quad.reduced_n must be >= 2");
  if (angular_nodes < 2) throw InvalidArgument("quad.angular_nodes must be >= 2");
}

double mass_coefficient(const PekarState& state) {
  const RadialFunction rho2 = state.rho * state.rho;
  return 8.0 * kPi / 3.0 * integrate_3d(rho2);
}

GridPtr default_momentum_grid() { return build_grid(2000, 2.0); }

MomentumProfile momentum_profile(const PekarState& state, const GridPtr& pgrid) {
  RadialFunction psi_hat = fourier_radial(state.psi, pgrid);
  RadialFunction dpsi_hat = fourier_radial_derivative(state.psi, pgrid);
  const RadialFunction rho_hat = fourier_density(state.rho, pgrid);
  Vector phi = rho_hat.values().cwiseQuotient(pgrid->nodes()) / (kSqrt2 * kPi);

  for (int j = 0; j < psi_hat.size(); ++j) {
    if (!(psi_hat[j] > 0.0)) {
      throw DomainFailure("psi_hat is not positive at p = " + std::to_string(pgrid->node(j)) +
                          "; enlarge the position grid or reduce pmax");
    }
  }
  return MomentumProfile{pgrid,
                         std::move(psi_hat),
                         std::move(dpsi_hat),
                         RadialFunction(pgrid, std::move(phi), Parity::odd),
                         state.mu,
                         state.eP,
                         state.D,
                         mass_coefficient(state)};
}

double field_norm(const MomentumProfile& mp) {
  // p^2 phi^2 = rho_hat^2 / (2 pi^2) stays finite at p = 0.
  const RadialFunction p_phi = mp.phi.times_power(1);
  const double at_origin = std::pow(p_phi.value_at_origin(), 2);
  return integrate_3d_with_origin(*mp.pgrid, mp.phi.values().cwiseAbs2(), at_origin);
}

double momentum_norm(const MomentumProfile& mp) {
  return integrate_3d(mp.psi_hat * mp.psi_hat);
}

ConvolutionTables convolution_tables(const MomentumProfile& mp, const QuadratureSettings& quad) {
  quad.validate();
  const RadialFunction ratio = mp.dpsi_hat * RadialFunction(mp.pgrid, mp.pgrid->nodes().cwiseInverse(),
                                                            Parity::odd);
  return ConvolutionTables{build_grid(quad.reduced_n, mp.pgrid->rmax()),
                           MonotoneCubic::from(mp.psi_hat),
                           MonotoneCubic::from(ratio),
                           MonotoneCubic::from(mp.phi.times_power(1)),
                           gauss_legendre(quad.angular_nodes)};
}

double el_residual_momentum(const MomentumProfile& mp, const QuadratureSettings& quad) {
  const ConvolutionTables tab = convolution_tables(mp, quad);
  const RadialGrid& g = *tab.reduced;
  const int n = g.size();
  const auto& c = tab.angular.nodes;
  const auto& wc = tab.angular.weights;
  const double prefactor = kSqrt2 / kPi * 2.0 * kPi;

  const std::vector<double> lhs = parallel_map(n, [&](int j) {
    const double p = g.node(j);
    // k runs over the origin (half weight) and the reduced nodes; k phi(k)
    // is finite and even, so the trapezoid rule keeps its accuracy.
    double conv = 0.0;
    for (int i = -1; i < n; ++i) {
      const double k = i < 0 ? 0.0 : g.node(i);
      const double w = i < 0 ? g.origin_weight() : g.weights()[i];
      double inner = 0.0;
      for (std::size_t a = 0; a < c.size(); ++a) {
        const double q = std::sqrt(std::max(0.0, p * p + k * k + 2.0 * p * k * c[a]));
        inner += wc[a] * tab.psi_hat(q);
      }
      conv += w * tab.k_phi(k) * inner;  // k^2 (phi(k) / k) = k phi(k)
    }
    return (p * p + mp.mu) * tab.psi_hat(p) - prefactor * conv;
  });

  Vector sq(n);
  for (int j = 0; j < n; ++j) sq[j] = lhs[j] * lhs[j];
  return std::sqrt(integrate_3d(RadialFunction(tab.reduced, std::move(sq))));
}

double lemma1_density_expectation(const MomentumProfile& mp, const RadialTestFunction& g) {
  const RadialFunction gv = RadialFunction::sample(mp.pgrid, g.f);
  return integrate_3d(mp.psi_hat * mp.psi_hat * gv);
}

double lemma1_number_expectation(const MomentumProfile& mp, const RadialTestFunction& g) {
  if (!g.bounded) throw InvalidArgument("lemma1_number_expectation requires a bounded g");
  return field_norm(mp) * lemma1_density_expectation(mp, g);
}

double lemma1_cross(const MomentumProfile& mp, const RadialTestFunction& xi,
                    const RadialTestFunction& g, const QuadratureSettings& quad,
                    CrossEvaluation evaluation) {
  const ConvolutionTables tab = convolution_tables(mp, quad);
  const RadialGrid& grid = *tab.reduced;
  const int n = grid.size();
  const Vector& w = grid.weights();
  auto amplitude = [&](double q) { return tab.psi_hat(q) * g(q); };

  Vector a_grid(n);
  for (int j = 0; j < n; ++j) a_grid[j] = amplitude(grid.node(j));

  std::vector<double> rows;
  if (evaluation == CrossEvaluation::standard) {
    const auto& c = tab.angular.nodes;
    const auto& wc = tab.angular.weights;
    rows = parallel_map(n, [&](int i) {
      const double k = grid.node(i);
      const double k2_phi_xi = k * tab.k_phi(k) * xi(k);
      if (k2_phi_xi == 0.0) return 0.0;
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p = grid.node(j);
        double inner = 0.0;
        for (std::size_t a = 0; a < c.size(); ++a) {
          inner += wc[a] * amplitude(std::sqrt(std::max(0.0, p * p + k * k + 2.0 * p * k * c[a])));
        }
        acc += w[j] * p * p * a_grid[j] * inner;
      }
      return w[i] * k2_phi_xi * acc;
    });
  } else {
    // Both amplitude factors on grid nodes (p and q = p + k); the field
    // factor is interpolated at k = |q - p|. With c = 1 - 2 s^2 the 1/k
    // singularity of phi at p = q becomes the bounded ratio s / k.
    const GaussLegendreRule rule = gauss_legendre(quad.angular_nodes);
    std::vector<double> s(rule.nodes.size());
    std::vector<double> ws(rule.nodes.size());
    for (std::size_t a = 0; a < s.size(); ++a) {
      s[a] = 0.5 * (rule.nodes[a] + 1.0);
      ws[a] = 0.5 * rule.weights[a];
    }
    rows = parallel_map(n, [&](int i) {
      const double q = grid.node(i);
      if (a_grid[i] == 0.0) return 0.0;
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p = grid.node(j);
        double inner = 0.0;
        for (std::size_t a = 0; a < s.size(); ++a) {
          const double k = std::sqrt((p - q) * (p - q) + 4.0 * p * q * s[a] * s[a]);
          if (k == 0.0) continue;
          inner += ws[a] * 4.0 * s[a] * tab.k_phi(k) * xi(k) / k;
        }
        acc += w[j] * p * p * a_grid[j] * inner;
      }
      return w[i] * q * q * a_grid[i] * acc;
    });
  }

  double total = 0.0;
  for (double r : rows) total += r;
  return 8.0 * kPi * kPi * total;
}

}  // namespace polaron
