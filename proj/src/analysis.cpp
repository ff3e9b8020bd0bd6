#include "fadinglab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fadinglab/error.hpp"

namespace fadinglab {
namespace {

// log(1 / (2 sqrt(pi)))
const double kLogHalfInvSqrtPi = -std::log(2.0 * std::sqrt(std::numbers::pi));

// Sum_i b_i log|a_i|. Conjugate pairs make the imaginary parts cancel.
double log_pole_product(const MonomialTerm& term, double pole_scale = 1.0) {
  double acc = 0.0;
  for (const auto& f : term.factors) acc += f.b * std::log(pole_scale * std::abs(f.a));
  return acc;
}

bool series_admissible(const MonomialTerm& term, double gamma_th) {
  if (term.factors.size() > 2) return false;
  double load = 0.0;
  for (const auto& f : term.factors) {
    if (f.a.imag() != 0.0) return false;
    load += std::abs(f.a.real()) * gamma_th;
  }
  return load <= kSeriesArgumentLimit;
}

std::string describe(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::euler_integral:
      return "euler-integral";
    case Method::laplace_inversion:
      return "laplace-inversion";
    case Method::closed_form:
      return "closed-form";
    case Method::series:
      return "series";
    case Method::mixed:
      return "mixed";
  }
  return "unknown";
}

WeightedGaussianSum::WeightedGaussianSum(std::vector<GaussianTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw DomainError("weighted Gaussian sum needs at least one term");
  for (const auto& t : terms_) {
    if (!(t.scale > 0.0) || !std::isfinite(t.scale)) throw DomainError("Gaussian argument scales must be positive");
    if (!std::isfinite(t.weight)) throw DomainError("Gaussian weights must be finite");
  }
}

EvalResult q_transform(const PosynomialMGF& mgf, double p, const QuadratureConfig& cfg) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("q_transform: p must be finite and nonnegative");
  EvalResult result;
  if (p == 0.0) {
    result.value = 0.5;
    result.method = Method::closed_form;
    return result;
  }
  result.method = Method::euler_integral;

  for (const auto& term : mgf.terms()) {
    const double bsum = term.exponent_sum();
    std::vector<double> b;
    std::vector<Complex> x;
    for (const auto& f : term.factors) {
      b.push_back(f.b);
      x.push_back(-2.0 * f.a / p);
    }
    const auto fd = lauricella_fd_detailed(0.5 + bsum, b, 1.0 + bsum, x, cfg);
    if (!fd.converged) result.warnings.push_back("quadrature did not reach tolerance at p=" + describe(p));

    const double log_prefactor = kLogHalfInvSqrtPi + log_pole_product(term) + std::lgamma(0.5 + bsum) -
                                 std::lgamma(1.0 + bsum) + bsum * std::log(2.0 / p);
    const double prefactor = std::exp(log_prefactor);
    result.value += term.c * prefactor * fd.value;
    result.error += std::abs(term.c) * prefactor * fd.error;
  }

  if (result.value < 0.0) {
    result.warnings.push_back("negative round-off " + describe(result.value) + " clamped to 0");
    result.value = 0.0;
  }
  result.value = std::min(result.value, 0.5);
  return result;
}

double q_asymptotic(const PosynomialMGF& mgf, double p) {
  if (!(p > 0.0)) throw DomainError("q_asymptotic: p must be positive");
  double total = 0.0;
  for (const auto& term : mgf.terms()) {
    const double bsum = term.exponent_sum();
    const double log_value = kLogHalfInvSqrtPi + log_pole_product(term, 2.0) + std::lgamma(0.5 + bsum) -
                             std::lgamma(1.0 + bsum) - bsum * std::log(p);
    total += term.c * std::exp(log_value);
  }
  return total;
}

double diversity_order(const PosynomialMGF& mgf) {
  double order = std::numeric_limits<double>::infinity();
  for (const auto& term : mgf.terms()) order = std::min(order, term.exponent_sum());
  return order;
}

EvalResult outage(const PosynomialMGF& mgf, double gamma_th, const OutageOptions& options) {
  if (!(gamma_th >= 0.0)) throw DomainError("outage: threshold must be nonnegative");
  EvalResult result;
  if (gamma_th == 0.0 || std::isinf(gamma_th)) {
    result.value = gamma_th == 0.0 ? 0.0 : 1.0;
    result.method = Method::closed_form;
    return result;
  }

  bool used_series = false;
  bool used_inversion = false;
  for (const auto& term : mgf.terms()) {
    const bool admissible = series_admissible(term, gamma_th);
    bool use_series = false;
    switch (options.route) {
      case OutageRoute::automatic:
        use_series = admissible;
        break;
      case OutageRoute::series:
        if (term.factors.size() > 2 || std::any_of(term.factors.begin(), term.factors.end(),
                                                   [](const MonomialFactor& f) { return f.a.imag() != 0.0; }))
          throw DomainError("outage: series route needs at most two real poles per term");
        use_series = true;
        break;
      case OutageRoute::inversion:
        use_series = false;
        break;
    }

    if (use_series) {
      const double bsum = term.exponent_sum();
      std::vector<double> b;
      std::vector<double> x;
      for (const auto& f : term.factors) {
        b.push_back(f.b);
        x.push_back(-f.a.real() * gamma_th);
      }
      const double phi2 = phi2_series(b, 1.0 + bsum, x, options.series);
      const double log_prefactor = log_pole_product(term) + bsum * std::log(gamma_th) - std::lgamma(1.0 + bsum);
      const double value = term.c * std::exp(log_prefactor) * phi2;
      result.value += value;
      result.error += 10.0 * options.series.tolerance * std::abs(value);
      used_series = true;
    } else {
      const auto inv = bromwich_cdf(PosynomialMGF({MonomialTerm{1.0, term.factors}}), gamma_th,
                                    options.inversion_tolerance);
      if (!inv.converged) result.warnings.push_back("Laplace inversion did not converge at " + describe(gamma_th));
      result.value += term.c * inv.value;
      result.error += std::abs(term.c) * inv.error;
      used_inversion = true;
    }
  }

  result.method = used_series && used_inversion ? Method::mixed
                  : used_series                ? Method::series
                                               : Method::laplace_inversion;
  if (result.value < 0.0 || result.value > 1.0) {
    result.warnings.push_back("outage " + describe(result.value) + " clamped to [0, 1]");
    result.value = std::clamp(result.value, 0.0, 1.0);
  }
  return result;
}

EvalResult average_ep(const PosynomialMGF& mgf, const WeightedGaussianSum& sum, const QuadratureConfig& cfg) {
  EvalResult result;
  result.method = Method::euler_integral;
  for (const auto& t : sum.terms()) {
    const auto q = q_transform(mgf, t.scale, cfg);
    result.value += t.weight * q.value;
    result.error += std::abs(t.weight) * q.error;
    result.warnings.insert(result.warnings.end(), q.warnings.begin(), q.warnings.end());
  }
  return result;
}

}  // namespace fadinglab
