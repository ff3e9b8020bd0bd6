#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fadinglab/mgf.hpp"
#include "fadinglab/quadrature.hpp"

namespace fadinglab {

struct SeriesConfig {
  int max_order = 4000;
  double tolerance = 1e-13;

  void check() const;
};

/// Upper tail of the standard normal, Q(x) = erfc(x/sqrt 2)/2.
double gaussian_q(double x);

/// Gauss hypergeometric 2F1(a, b; c; x) for x < 1.
double gauss_2f1(double a, double b, double c, double x);

/// Kummer confluent hypergeometric 1F1(a; b; x).
double kummer_1f1(double a, double b, double x);

/// Regularized upper incomplete gamma Gamma(m, x)/Gamma(m).
double reg_gamma_q(double m, double x);

struct LauricellaResult {
  double value = 0.0;
  double error = 0.0;  // absolute, on the normalized value
  bool converged = true;
};

/// Lauricella F_D^(n)(alpha; b_1..b_n; c; x_1..x_n) from its Euler integral,
/// valid for c > alpha > 0 and arguments keeping 1 - x_i u away from zero on
/// [0, 1]. Complex arguments must come in conjugate pairs with equal b.
LauricellaResult lauricella_fd_detailed(double alpha, std::span<const double> b, double c,
                                        std::span<const Complex> x, const QuadratureConfig& cfg = {});

double lauricella_fd(double alpha, std::span<const double> b, double c, std::span<const Complex> x,
                     const QuadratureConfig& cfg = {});

/// Real-argument overload.
double lauricella_fd(double alpha, std::span<const double> b, double c, std::span<const double> x,
                     const QuadratureConfig& cfg = {});

/// Confluent Lauricella Phi_2^(n)(b; c; x) by series, n <= 2 and x_i <= 0.
double phi2_series(std::span<const double> b, double c, std::span<const double> x,
                   const SeriesConfig& cfg = {});

struct InversionResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  int terms = 0;
};

/// CDF of the SNR at t > 0 by numerical Laplace inversion of M(-s)/s along
/// a Bromwich line, with Euler acceleration of the alternating tail. The
/// result is clamped to [0, 1].
InversionResult bromwich_cdf(const PosynomialMGF& mgf, double t, double tol = 1e-9);

}  // namespace fadinglab
