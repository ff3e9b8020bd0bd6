#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fadinglab/mgf.hpp"
#include "fadinglab/quadrature.hpp"
#include "fadinglab/specfun.hpp"

namespace fadinglab {

enum class Method { euler_integral, laplace_inversion, closed_form, series, mixed };

std::string_view to_string(Method method);

struct EvalResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error, >= 0
  Method method = Method::closed_form;
  std::vector<std::string> warnings;
};

struct GaussianTerm {
  double weight = 1.0;
  double scale = 1.0;  // p_j in Q(sqrt(p_j gamma))
};

/// Sum_j w_j Q(sqrt(p_j gamma)): the shape of most conditional BEP formulas.
class WeightedGaussianSum {
 public:
  /// Throws DomainError on an empty list or a nonpositive scale.
  explicit WeightedGaussianSum(std::vector<GaussianTerm> terms);

  static WeightedGaussianSum bpsk() { return WeightedGaussianSum({{1.0, 2.0}}); }

  const std::vector<GaussianTerm>& terms() const { return terms_; }

 private:
  std::vector<GaussianTerm> terms_;
};

/// E[Q(sqrt(p gamma))] via the Euler integral of each term's F_D function.
EvalResult q_transform(const PosynomialMGF& mgf, double p, const QuadratureConfig& cfg = {});

/// Leading high-SNR term of the Q-transform.
double q_asymptotic(const PosynomialMGF& mgf, double p);

/// min_k sum_i b_ki.
double diversity_order(const PosynomialMGF& mgf);

enum class OutageRoute { automatic, series, inversion };

struct OutageOptions {
  OutageRoute route = OutageRoute::automatic;
  double inversion_tolerance = 1e-9;
  SeriesConfig series{};
};

/// Largest sum_i |a_i gamma_th| for which the series route is chosen.
inline constexpr double kSeriesArgumentLimit = 30.0;

/// P(gamma <= gamma_th). Each term goes through the Phi_2 series when it has
/// at most two real poles and small arguments, otherwise through Laplace
/// inversion; forcing `series` on an inadmissible term throws DomainError.
EvalResult outage(const PosynomialMGF& mgf, double gamma_th, const OutageOptions& options = {});

/// Sum_j w_j Q-transform(p_j).
EvalResult average_ep(const PosynomialMGF& mgf, const WeightedGaussianSum& sum, const QuadratureConfig& cfg = {});

}  // namespace fadinglab
