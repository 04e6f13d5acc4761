#include "polaron/tridiagonal.hpp"

#include "polaron/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polaron {

Eigen::VectorXd SymmetricTridiagonal::apply(const Eigen::VectorXd& x) const {
  const int m = size();
  Eigen::VectorXd y = diag.cwiseProduct(x);
  for (int i = 0; i + 1 < m; ++i) {
    y[i] += off[i] * x[i + 1];
    y[i + 1] += off[i] * x[i];
  }
  return y;
}

int count_below(const SymmetricTridiagonal& t, double shift) {
  const int m = t.size();
  const double tiny = std::numeric_limits<double>::min();
  int count = 0;
  double q = t.diag[0] - shift;
  if (q < 0.0) ++count;
  for (int i = 1; i < m; ++i) {
    if (std::abs(q) < tiny) q = -tiny;
    q = t.diag[i] - shift - t.off[i - 1] * t.off[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

Eigen::VectorXd solve_shifted(const SymmetricTridiagonal& t, double sigma,
                              const Eigen::VectorXd& b) {
  const int m = t.size();
  Eigen::VectorXd c(m);
  Eigen::VectorXd x(m);
  double piv = t.diag[0] + sigma;
  if (piv == 0.0) throw NumericalFailure("tridiagonal solve hit a zero pivot");
  c[0] = m > 1 ? t.off[0] / piv : 0.0;
  x[0] = b[0] / piv;
  for (int i = 1; i < m; ++i) {
    piv = t.diag[i] + sigma - t.off[i - 1] * c[i - 1];
    if (piv == 0.0) throw NumericalFailure("tridiagonal solve hit a zero pivot");
    c[i] = i + 1 < m ? t.off[i] / piv : 0.0;
    x[i] = (b[i] - t.off[i - 1] * x[i - 1]) / piv;
  }
  for (int i = m - 2; i >= 0; --i) x[i] -= c[i] * x[i + 1];
  return x;
}

Eigenpair lowest_eigenpair(const SymmetricTridiagonal& t) {
  const int m = t.size();
  if (m < 1 || t.off.size() != std::max(0, m - 1)) {
    throw InvalidArgument("tridiagonal matrix has inconsistent sizes");
  }
  if (!t.diag.allFinite() || !t.off.allFinite()) {
    throw NumericalFailure("tridiagonal matrix has non-finite entries");
  }

  // Gershgorin bounds.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < m; ++i) {
    const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < m ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double scale = std::max(std::abs(lo), std::abs(hi));
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * scale; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(t, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double lambda = 0.5 * (lo + hi);

  // Shift slightly below the eigenvalue: the shifted matrix is positive
  // definite, and the iteration amplifies the wanted vector by ~1/delta.
  const double delta = 1e-10 * std::max(1.0, std::abs(lambda));
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m);
  for (int it = 0; it < 4; ++it) {
    v = solve_shifted(t, -(lambda - delta), v);
    const double norm = v.norm();
    if (!std::isfinite(norm) || norm == 0.0) throw NumericalFailure("inverse iteration failed");
    v /= norm;
  }
  const double rayleigh = v.dot(t.apply(v));
  if (!std::isfinite(rayleigh)) throw NumericalFailure("inverse iteration produced non-finite eigenvalue");
  return {rayleigh, std::move(v)};
}

}  // namespace polaron
