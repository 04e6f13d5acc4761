#pragma once

// Shared, lazily computed inputs for the unit tests.

#include "polaron/mass_bound.hpp"
#include "polaron/momentum.hpp"
#include "polaron/pekar.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace fixtures {

inline constexpr double kPi = std::numbers::pi;

inline const polaron::PekarState& minimizer() {
  static const polaron::PekarState s = polaron::solve_pekar({});
  return s;
}

inline const polaron::MomentumProfile& profile() {
  static const polaron::MomentumProfile mp =
      polaron::momentum_profile(minimizer(), polaron::default_momentum_grid());
  return mp;
}

// pi^{-3/4} exp(-r^2 / 2): normalized, its own unitary transform.
inline double gaussian_psi(double r) { return std::pow(kPi, -0.75) * std::exp(-0.5 * r * r); }

inline polaron::PekarState gaussian_state(int n = 2000, double rmax = 20.0) {
  return polaron::evaluate_state(
      polaron::RadialFunction::sample(polaron::build_grid(n, rmax), gaussian_psi));
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20261019);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline double rel_err(double computed, double expected) {
  return std::abs(computed / expected - 1.0);
}

}  // namespace fixtures
