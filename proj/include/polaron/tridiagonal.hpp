#pragma once

#include <Eigen/Dense>

namespace polaron {

/// Real symmetric tridiagonal matrix: `diag` of length m, `off` of length m-1.
struct SymmetricTridiagonal {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;

  int size() const { return static_cast<int>(diag.size()); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

struct Eigenpair {
  double value;
  Eigen::VectorXd vector;  // unit Euclidean norm
};

/// Number of eigenvalues strictly below `shift` (Sturm sequence count).
int count_below(const SymmetricTridiagonal& t, double shift);

/// Lowest eigenpair: bisection on the Sturm count for the eigenvalue, then
/// inverse iteration just below it for the vector.
Eigenpair lowest_eigenpair(const SymmetricTridiagonal& t);

/// Solves (t + sigma I) x = b by the Thomas algorithm. Requires the shifted
/// matrix to be nonsingular without pivoting (e.g. positive definite).
Eigen::VectorXd solve_shifted(const SymmetricTridiagonal& t, double sigma,
                              const Eigen::VectorXd& b);

}  // namespace polaron
