#pragma once

#include <functional>

namespace fadinglab {

/// Settings for the one-dimensional integrators.
struct QuadratureConfig {
  enum class Method { gauss_legendre, tanh_sinh };

  Method method = Method::gauss_legendre;
  /// Gauss-Legendre: base rule size n; panels are checked against the 2n rule.
  int nodes = 10;
  /// Target accuracy relative to the magnitude of the integral.
  double tolerance = 1e-12;
  /// Gauss-Legendre: maximum number of panels is 2^max_levels (capped at 4096).
  /// Tanh-sinh: maximum number of step halvings.
  int max_levels = 12;

  /// Throws DomainError when tolerance <= 0 or nodes < 8.
  void check() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

using Integrand = std::function<double(double)>;

/// Integral of f over the finite interval [lo, hi] with the configured method.
/// Stops when the error estimate is below max(abs_floor, tol * |value|).
QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadratureConfig& cfg,
                           double abs_floor = 0.0);

/// Globally adaptive composite Gauss-Legendre. Each panel is evaluated with
/// n and 2n nodes; the panel with the largest discrepancy is bisected.
QuadratureResult integrate_gauss_legendre(const Integrand& f, double lo, double hi,
                                          const QuadratureConfig& cfg, double abs_floor = 0.0);

/// Double-exponential (tanh-sinh) rule with step halving. Tolerates
/// integrable endpoint singularities; f is never evaluated at lo or hi.
QuadratureResult integrate_tanh_sinh(const Integrand& f, double lo, double hi,
                                     const QuadratureConfig& cfg, double abs_floor = 0.0);

}  // namespace fadinglab
