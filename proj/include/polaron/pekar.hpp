#pragma once

// Minimizer of the Pekar functional
//
//   E[psi] = \int |grad psi|^2 - \iint |psi(x)|^2 |psi(y)|^2 / |x-y|,
//   \int |psi|^2 = 1,
//
// restricted to nonnegative radial psi centred at the origin. Everything is
// discretized on the reduced function u = r psi with u(0) = u(rmax) = 0 and
// the standard three-point Laplacian, so the discrete Euler-Lagrange equation
// is exactly an eigenvalue problem of a symmetric tridiagonal matrix.

#include "polaron/radial.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace polaron {

enum class InitialProfile { hydrogenic, gaussian };

struct SolverOptions {
  int n = 3000;
  double rmax = 30.0;
  InitialProfile init = InitialProfile::hydrogenic;
  double mixing = 0.5;
  double tol_energy = 1e-10;
  double tol_psi = 1e-8;
  int max_iter = 500;

  void validate() const;
};

struct PekarState {
  RadialFunction psi;
  RadialFunction rho;
  double T = 0.0;   // \int |grad psi|^2
  double D = 0.0;   // \iint rho rho / |x-y|
  double eP = 0.0;  // T - D
  double mu = 0.0;  // D - eP = 2D - T
  int iterations = 0;
  double residual = 0.0;  // position-space Euler-Lagrange residual
};

/// Energy bookkeeping for an arbitrary normalized radial trial function.
/// `iterations` and `residual` are left at zero.
PekarState evaluate_state(const RadialFunction& psi);

class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, std::vector<double> energies,
                     std::vector<double> psi_changes, Vector last_psi)
      : std::runtime_error(what),
        energies(std::move(energies)),
        psi_changes(std::move(psi_changes)),
        last_psi(std::move(last_psi)) {}

  std::vector<double> energies;
  std::vector<double> psi_changes;
  Vector last_psi;
};

/// Self-consistent iteration: freeze the Hartree potential of the mixed
/// density, take the lowest eigenvector of -d^2/dr^2 - 2 Phi, mix densities.
PekarState solve_pekar(const SolverOptions& opts);

struct ImaginaryTimeTrace {
  std::vector<double> energies;    // after every step, starting with the initial state
  std::vector<double> norm_errors; // |\int rho - 1| after renormalization
};

/// Independent minimizer: normalized gradient flow
///   psi <- normalize((1 + step (-Delta - 2 Phi_rho))^{-1} psi),
/// linearly implicit in the frozen-potential operator. Stops when the energy
/// change per unit flow time drops below tol_energy.
PekarState imaginary_time_oracle(const SolverOptions& opts, double step = 1e-3,
                                 ImaginaryTimeTrace* trace = nullptr,
                                 long max_steps = 2'000'000);

/// 3D L^2 norm of (-Delta - 2 Phi_rho - lambda) psi with
/// lambda = <psi, (-Delta - 2 Phi_rho) psi> = T - 2D.
double el_residual_position(const PekarState& state);

}  // namespace polaron
