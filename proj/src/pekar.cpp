#include "polaron/pekar.hpp"

#include "polaron/error.hpp"
#include "polaron/tridiagonal.hpp"

#include <cmath>
#include <numbers>

namespace polaron {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Reduced radial unknowns u_i = r_i psi_i on nodes 0..n-2; the wall node
// r_n = rmax carries u = 0.
struct Reduced {
  GridPtr grid;
  double h;
  int m;  // n - 1 interior unknowns
};

Reduced reduced_of(const GridPtr& grid) {
  return {grid, grid->spacing(), grid->size() - 1};
}

Vector u_from_psi(const RadialFunction& psi) {
  const int m = psi.size() - 1;
  return psi.values().head(m).cwiseProduct(psi.grid().nodes().head(m));
}

RadialFunction psi_from_u(const Reduced& red, const Vector& u) {
  Vector psi = Vector::Zero(red.m + 1);
  psi.head(red.m) = u.cwiseQuotient(red.grid->nodes().head(red.m));
  return RadialFunction(red.grid, std::move(psi));
}

double u_norm2(const Reduced& red, const Vector& u) { return kFourPi * red.h * u.squaredNorm(); }

// -d^2/dr^2 + potential on the interior nodes.
SymmetricTridiagonal radial_operator(const Reduced& red, const Vector& potential) {
  const double inv_h2 = 1.0 / (red.h * red.h);
  SymmetricTridiagonal t;
  t.diag = potential.head(red.m).array() + 2.0 * inv_h2;
  t.off = Vector::Constant(red.m - 1, -inv_h2);
  return t;
}

double kinetic(const Reduced& red, const Vector& u) {
  double acc = u[0] * u[0];
  for (int i = 1; i < red.m; ++i) acc += (u[i] - u[i - 1]) * (u[i] - u[i - 1]);
  acc += u[red.m - 1] * u[red.m - 1];
  return kFourPi * acc / red.h;
}

void normalize_positive(const Reduced& red, Vector& u) {
  if (u.sum() < 0.0) u = -u;
  u /= std::sqrt(u_norm2(red, u));
}

RadialFunction initial_psi(const GridPtr& grid, InitialProfile init) {
  auto psi = init == InitialProfile::hydrogenic
                 ? RadialFunction::sample(grid, [](double r) { return std::exp(-r); })
                 : RadialFunction::sample(grid, [](double r) { return std::exp(-0.5 * r * r); });
  Vector v = psi.values();
  v[v.size() - 1] = 0.0;
  const double norm = integrate_3d(RadialFunction(grid, v.cwiseAbs2()));
  return RadialFunction(grid, v / std::sqrt(norm));
}

PekarState evaluate_with_potential(const RadialFunction& psi, const RadialFunction& rho,
                                   const RadialFunction& phi) {
  const Reduced red = reduced_of(psi.grid_ptr());
  PekarState s{psi, rho};
  s.T = kinetic(red, u_from_psi(psi));
  s.D = integrate_3d(rho * phi);
  s.eP = s.T - s.D;
  s.mu = s.D - s.eP;
  return s;
}

PekarState finish(PekarState s, int iterations) {
  s.iterations = iterations;
  s.residual = el_residual_position(s);
  return s;
}

}  // namespace

void SolverOptions::validate() const {
  if (n < 4) throw InvalidArgument("grid.n must be >= 4");
  if (!(rmax > 0.0)) throw InvalidArgument("grid.rmax must be positive");
  if (!(mixing > 0.0 && mixing <= 1.0)) throw InvalidArgument("solver.mixing must lie in (0, 1]");
  if (!(tol_energy > 0.0)) throw InvalidArgument("solver.tol_energy must be positive");
  if (!(tol_psi > 0.0)) throw InvalidArgument("solver.tol_psi must be positive");
  if (max_iter < 1) throw InvalidArgument("solver.max_iter must be positive");
}

PekarState evaluate_state(const RadialFunction& psi) {
  if (psi.size() < 4) throw InvalidArgument("state needs at least 4 grid nodes");
  RadialFunction rho = psi * psi;
  return evaluate_with_potential(psi, rho, coulomb_potential(rho));
}

PekarState solve_pekar(const SolverOptions& opts) {
  opts.validate();
  const Reduced red = reduced_of(build_grid(opts.n, opts.rmax));

  RadialFunction psi = initial_psi(red.grid, opts.init);
  Vector rho_mix = psi.values().cwiseAbs2();
  Vector u_prev = u_from_psi(psi);
  double e_prev = evaluate_state(psi).eP;

  std::vector<double> energies{e_prev};
  std::vector<double> changes;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const RadialFunction phi = coulomb_potential(RadialFunction(red.grid, rho_mix));
    Eigenpair pair = lowest_eigenpair(radial_operator(red, -2.0 * phi.values()));
    Vector u = std::move(pair.vector);
    normalize_positive(red, u);

    psi = psi_from_u(red, u);
    PekarState s = evaluate_state(psi);
    const double de = std::abs(s.eP - e_prev);
    const double dpsi = std::sqrt(u_norm2(red, u - u_prev));
    energies.push_back(s.eP);
    changes.push_back(dpsi);
    if (!std::isfinite(s.eP)) throw NumericalFailure("SCF energy became non-finite");
    if (de <= opts.tol_energy && dpsi <= opts.tol_psi) return finish(std::move(s), it);

    rho_mix = (1.0 - opts.mixing) * rho_mix + opts.mixing * psi.values().cwiseAbs2();
    u_prev = std::move(u);
    e_prev = s.eP;
  }
  throw ConvergenceFailure("SCF did not converge in " + std::to_string(opts.max_iter) + " iterations",
                           std::move(energies), std::move(changes), psi.values());
}

PekarState imaginary_time_oracle(const SolverOptions& opts, double step,
                                 ImaginaryTimeTrace* trace, long max_steps) {
  opts.validate();
  if (!(step > 0.0)) throw InvalidArgument("imaginary-time step must be positive");
  const Reduced red = reduced_of(build_grid(opts.n, opts.rmax));

  Vector u = u_from_psi(initial_psi(red.grid, opts.init));
  PekarState s = evaluate_state(psi_from_u(red, u));
  RadialFunction phi = coulomb_potential(s.rho);
  if (trace) {
    trace->energies.assign(1, s.eP);
    trace->norm_errors.assign(1, std::abs(integrate_3d(s.rho) - 1.0));
  }

  for (long k = 1; k <= max_steps; ++k) {
    SymmetricTridiagonal op = radial_operator(red, -2.0 * phi.values());
    op.diag *= step;
    op.off *= step;
    u = solve_shifted(op, 1.0, u);
    normalize_positive(red, u);

    RadialFunction psi = psi_from_u(red, u);
    RadialFunction rho = psi * psi;
    phi = coulomb_potential(rho);
    PekarState next = evaluate_with_potential(psi, rho, phi);
    if (!std::isfinite(next.eP)) throw NumericalFailure("imaginary-time energy became non-finite");
    if (next.eP > s.eP + 1e-12) {
      throw StepSizeFailure("energy increased along the flow at step " + std::to_string(k) +
                            "; reduce the step size");
    }
    if (trace) {
      trace->energies.push_back(next.eP);
      trace->norm_errors.push_back(std::abs(integrate_3d(next.rho) - 1.0));
    }
    const double de = s.eP - next.eP;
    s = std::move(next);
    if (de <= opts.tol_energy * step) return finish(std::move(s), static_cast<int>(k));
  }
  throw ConvergenceFailure("imaginary-time flow did not stagnate", trace ? trace->energies : std::vector<double>{},
                           {}, s.psi.values());
}

double el_residual_position(const PekarState& state) {
  const Reduced red = reduced_of(state.psi.grid_ptr());
  const Vector u = u_from_psi(state.psi);
  const RadialFunction phi = coulomb_potential(state.rho);
  const Vector hu = radial_operator(red, -2.0 * phi.values()).apply(u);
  const double lambda = u.dot(hu) / u.squaredNorm();
  return std::sqrt(u_norm2(red, hu - lambda * u));
}

}  // namespace polaron
