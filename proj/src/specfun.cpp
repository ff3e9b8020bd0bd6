#include "fadinglab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fadinglab/error.hpp"

namespace fadinglab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::nearbyint(v); }

bool near_integer(double v, double tol) { return std::abs(v - std::nearbyint(v)) <= tol; }

// Direct 2F1 series; caller guarantees |x| < 1.
double series_2f1(double a, double b, double c, double x, long max_terms) {
  double term = 1.0;
  double sum = 1.0;
  for (long k = 0; k < max_terms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) <= 0.25 * kEps * std::abs(sum)) {
      // The ratio tends to x; make sure the tail is already shrinking.
      const double ratio = std::abs((a + k + 1) * (b + k + 1) / ((c + k + 1) * (k + 2.0)) * x);
      if (ratio < 1.0 && std::abs(term) * ratio / (1.0 - ratio) <= 0.5 * kEps * std::abs(sum)) return sum;
    }
  }
  throw ConvergenceError("gauss_2f1: series did not converge at x=" + std::to_string(x));
}

// 2F1(a,b;c;z) for z close to 1 via the connection formula around z = 1.
// Returns NaN when c-a-b is (near) integer or the gamma factors overflow.
double connection_2f1(double a, double b, double c, double z) {
  const double s = c - a - b;
  if (near_integer(s, 1e-8)) return std::numeric_limits<double>::quiet_NaN();
  const double w = 1.0 - z;
  const double g1 = std::tgamma(c) * std::tgamma(s) / (std::tgamma(c - a) * std::tgamma(c - b));
  const double g2 = std::tgamma(c) * std::tgamma(-s) / (std::tgamma(a) * std::tgamma(b));
  if (!std::isfinite(g1) || !std::isfinite(g2)) return std::numeric_limits<double>::quiet_NaN();
  const double f1 = g1 == 0.0 ? 0.0 : g1 * series_2f1(a, b, 1.0 - s, w, 100000);
  const double f2 = g2 == 0.0 ? 0.0 : g2 * std::pow(w, s) * series_2f1(c - a, c - b, 1.0 + s, w, 100000);
  return f1 + f2;
}

double positive_2f1(double a, double b, double c, double z) {
  // 0 <= z < 1
  if (z > 0.9) {
    const double v = connection_2f1(a, b, c, z);
    if (std::isfinite(v)) return v;
  }
  return series_2f1(a, b, c, z, 2000000);
}

// 1F1 power series for x >= 0.
double series_1f1(double a, double b, double x) {
  double term = 1.0;
  double sum = 1.0;
  for (long k = 0; k < 200000; ++k) {
    const double ratio = (a + k) / (b + k) * x / (k + 1.0);
    term *= ratio;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(ratio) < 1.0 && std::abs(term) <= 0.25 * kEps * std::abs(sum)) return sum;
  }
  throw ConvergenceError("kummer_1f1: series did not converge at x=" + std::to_string(x));
}

// Double series sum_{j,k} (b1)_j (b2)_k / (c)_{j+k} y1^j y2^k / (j! k!) for y >= 0.
double double_series(double b1, double b2, double c, double y1, double y2, const SeriesConfig& cfg) {
  std::vector<double> u{1.0};
  std::vector<double> v{1.0};
  double inv_poch_c = 1.0;
  double sum = 1.0;
  double previous_block = 1.0;
  for (int order = 1; order <= cfg.max_order; ++order) {
    const int j = order - 1;
    u.push_back(u.back() * (b1 + j) * y1 / (j + 1.0));
    v.push_back(v.back() * (b2 + j) * y2 / (j + 1.0));
    inv_poch_c /= (c + order - 1);
    double block = 0.0;
    for (int i = 0; i <= order; ++i) block += u[i] * v[order - i];
    block *= inv_poch_c;
    sum += block;
    const double bound = cfg.tolerance * std::abs(sum);
    if (order > y1 + y2 + 2 && std::abs(block) <= bound && std::abs(previous_block) <= bound) return sum;
    previous_block = block;
  }
  throw ConvergenceError("phi2_series: no convergence within " + std::to_string(cfg.max_order) + " orders");
}

}  // namespace

void SeriesConfig::check() const {
  if (max_order <= 0 || !(tolerance > 0.0)) throw DomainError("series configuration must be positive");
}

double gaussian_q(double x) {
  // erfc(x / sqrt 2) with the rounding of x/sqrt(2) corrected to first order,
  // which matters in the far tail where d log erfc / dz ~ -2z.
  constexpr double kInvSqrt2 = 0.7071067811865476;
  constexpr double kInvSqrt2Lo = -4.8336466567264565e-17;
  const double z = x * kInvSqrt2;
  const double dz = std::fma(x, kInvSqrt2, -z) + x * kInvSqrt2Lo;
  const double slope = 2.0 / std::sqrt(std::numbers::pi) * std::exp(-z * z);
  return 0.5 * (std::erfc(z) - slope * dz);
}

double gauss_2f1(double a, double b, double c, double x) {
  if (is_nonpositive_integer(c)) throw DomainError("gauss_2f1: c must not be a nonpositive integer");
  if (!(x < 1.0)) throw DomainError("gauss_2f1: requires x < 1");
  if (x == 0.0 || a == 0.0 || b == 0.0) return 1.0;
  if (x > 0.0) return positive_2f1(a, b, c, x);
  // Pfaff: 2F1(a,b;c;x) = (1-x)^(-a) 2F1(a, c-b; c; x/(x-1)), argument in (0,1).
  const double z = x / (x - 1.0);
  if (x >= -0.5) return series_2f1(a, b, c, x, 100000);
  return std::pow(1.0 - x, -a) * positive_2f1(a, c - b, c, z);
}

double kummer_1f1(double a, double b, double x) {
  if (is_nonpositive_integer(b)) throw DomainError("kummer_1f1: b must not be a nonpositive integer");
  if (x == 0.0) return 1.0;
  if (x > 0.0) return series_1f1(a, b, x);
  // Kummer: 1F1(a;b;x) = e^x 1F1(b-a;b;-x) keeps the series free of cancellation.
  return std::exp(x) * series_1f1(b - a, b, -x);
}

double reg_gamma_q(double m, double x) {
  if (!(m > 0.0) || !(x >= 0.0)) throw DomainError("reg_gamma_q: requires m > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;

  if (x < m + 1.0) {
    // Lower regularized gamma P by its series, Q = 1 - P.
    double term = 1.0 / m;
    double sum = term;
    for (int n = 1; n < 100000; ++n) {
      term *= x / (m + n);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 0.25 * kEps) break;
    }
    const double p = sum * std::exp(-x + m * std::log(x) - std::lgamma(m));
    return std::clamp(1.0 - p, 0.0, 1.0);
  }

  // Continued fraction for Q (modified Lentz).
  constexpr double kTiny = 1e-300;
  double bcf = x + 1.0 - m;
  double c = 1.0 / kTiny;
  double d = 1.0 / bcf;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - m);
    bcf += 2.0;
    d = an * d + bcf;
    if (std::abs(d) < kTiny) d = kTiny;
    c = bcf + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 0.25 * kEps) break;
  }
  return std::exp(-x + m * std::log(x) - std::lgamma(m)) * h;
}

LauricellaResult lauricella_fd_detailed(double alpha, std::span<const double> b, double c,
                                        std::span<const Complex> x, const QuadratureConfig& cfg) {
  if (b.size() != x.size()) throw DomainError("lauricella_fd: b and x differ in length");
  if (!(alpha > 0.0) || !(c > alpha)) throw DomainError("lauricella_fd: requires c > alpha > 0");

  std::vector<double> bs;
  std::vector<Complex> xs;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (x[i] == Complex{0.0, 0.0} || b[i] == 0.0) continue;
    if (x[i].imag() == 0.0 && x[i].real() >= 1.0)
      throw DomainError("lauricella_fd: integrand pole, 1 - x u vanishes on (0, 1]");
    bs.push_back(b[i]);
    xs.push_back(x[i]);
  }
  if (bs.empty()) return {1.0, 0.0, true};

  // u = sin^2(theta) maps the Euler integral onto [0, pi/2] and absorbs the
  // u^(alpha-1) (1-u)^(c-alpha-1) endpoint behaviour into powers of sin, cos.
  const double sin_power = 2.0 * alpha - 1.0;
  const double cos_power = 2.0 * (c - alpha) - 1.0;
  bool all_real = std::all_of(xs.begin(), xs.end(), [](Complex v) { return v.imag() == 0.0; });

  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double co = std::cos(theta);
    const double u = s * s;
    double log_kernel = sin_power * std::log(s);
    if (cos_power != 0.0) log_kernel += cos_power * std::log(co);
    if (all_real) {
      for (std::size_t i = 0; i < bs.size(); ++i) log_kernel -= bs[i] * std::log1p(-xs[i].real() * u);
      return 2.0 * std::exp(log_kernel);
    }
    Complex log_factors{0.0, 0.0};
    for (std::size_t i = 0; i < bs.size(); ++i) log_factors -= bs[i] * std::log(1.0 - xs[i] * u);
    return 2.0 * (std::exp(log_kernel + log_factors)).real();
  };

  const auto q = integrate(integrand, 0.0, std::numbers::pi / 2.0, cfg, 1e-300);
  const double log_beta = std::lgamma(alpha) + std::lgamma(c - alpha) - std::lgamma(c);
  const double scale = std::exp(-log_beta);
  return {q.value * scale, q.error * scale, q.converged};
}

double lauricella_fd(double alpha, std::span<const double> b, double c, std::span<const Complex> x,
                     const QuadratureConfig& cfg) {
  return lauricella_fd_detailed(alpha, b, c, x, cfg).value;
}

double lauricella_fd(double alpha, std::span<const double> b, double c, std::span<const double> x,
                     const QuadratureConfig& cfg) {
  std::vector<Complex> xc(x.begin(), x.end());
  return lauricella_fd_detailed(alpha, b, c, xc, cfg).value;
}

double phi2_series(std::span<const double> b, double c, std::span<const double> x, const SeriesConfig& cfg) {
  cfg.check();
  if (b.size() != x.size()) throw DomainError("phi2_series: b and x differ in length");
  if (b.size() > 2) throw DomainError("phi2_series: series route supports at most two variables");
  if (is_nonpositive_integer(c)) throw DomainError("phi2_series: c must not be a nonpositive integer");
  for (double v : x) {
    if (v > 0.0) throw DomainError("phi2_series: arguments must be nonpositive");
  }
  if (b.empty()) return 1.0;
  if (b.size() == 1) return kummer_1f1(b[0], c, x[0]);
  if (x[0] == 0.0 && x[1] == 0.0) return 1.0;

  // Phi2(b1,b2;c;x1,x2) = e^{x2} Phi2(b1, c-b1-b2; c; x1-x2, -x2). Pivoting on
  // the most negative argument leaves only nonnegative series arguments.
  const std::size_t pivot = x[1] <= x[0] ? 1 : 0;
  const std::size_t other = 1 - pivot;
  const double y_other = x[other] - x[pivot];
  const double y_pivot = -x[pivot];
  const double s = double_series(b[other], c - b[0] - b[1], c, y_other, y_pivot, cfg);
  return std::exp(x[pivot]) * s;
}

InversionResult bromwich_cdf(const PosynomialMGF& mgf, double t, double tol) {
  if (!(t > 0.0)) throw DomainError("bromwich_cdf: requires t > 0");
  if (!(tol > 0.0)) throw DomainError("bromwich_cdf: tolerance must be positive");

  // Discretization error of the trapezoid rule on the Bromwich line is about
  // e^{-A} for a function bounded by one.
  const double A = std::max(18.4, std::log(8.0 / tol));
  constexpr int kEulerTerms = 11;
  constexpr int kMaxTerms = 20000;

  auto transform = [&](Complex s) { return (mgf_eval(mgf, -s) / s).real(); };

  std::vector<double> partial;  // partial sums S_0, S_1, ...
  partial.reserve(256);
  partial.push_back(0.5 * transform(Complex{A / (2.0 * t), 0.0}));
  auto ensure = [&](int n) {
    while (static_cast<int>(partial.size()) <= n) {
      const int k = static_cast<int>(partial.size());
      const double term = transform(Complex{A, 2.0 * k * std::numbers::pi} / (2.0 * t));
      partial.push_back(partial.back() + ((k % 2 == 0) ? term : -term));
    }
  };

  std::vector<double> binom(kEulerTerms + 1);
  binom[0] = 1.0;
  for (int j = 1; j <= kEulerTerms; ++j) binom[j] = binom[j - 1] * (kEulerTerms - j + 1) / j;
  const double scale_m = std::ldexp(1.0, -kEulerTerms);
  auto euler = [&](int n) {
    ensure(n + kEulerTerms);
    double e = 0.0;
    for (int j = 0; j <= kEulerTerms; ++j) e += binom[j] * partial[n + j];
    return e * scale_m;
  };

  const double prefactor = std::exp(A / 2.0) / t;
  InversionResult result;
  double previous = prefactor * euler(15);
  for (int n = 20; n + kEulerTerms < kMaxTerms; n += std::max(5, n / 2)) {
    const double current = prefactor * euler(n);
    const double next = prefactor * euler(n + 1);
    const double spread = std::max(std::abs(current - next), std::abs(current - previous));
    result.value = current;
    result.error = spread + std::exp(-A);
    result.terms = static_cast<int>(partial.size());
    if (std::abs(current - next) < 0.25 * tol && std::abs(current - previous) < tol) {
      result.value = std::clamp(current, 0.0, 1.0);
      return result;
    }
    previous = current;
  }
  result.converged = false;
  result.value = std::clamp(result.value, 0.0, 1.0);
  return result;
}

}  // namespace fadinglab
