#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fadinglab/mgf.hpp"

namespace fadinglab {

enum class ChannelKind {
  rayleigh,
  hoyt,
  nakagami_m,
  rician_shadowed,
  eta_mu,
  mrc,
  mixture,
  ostbc_shadowed_rician,
  posynomial,  // raw characteristic coefficients, no physical model
};

std::string_view to_string(ChannelKind kind);
/// Throws ParseError for unknown names.
ChannelKind channel_kind_from_string(std::string_view name);

/// Parametric description of a fading channel.
///
/// Parameter names per kind:
///   hoyt: q; nakagami_m: m; rician_shadowed: K, m; eta_mu: format, eta, n;
///   ostbc_shadowed_rician: n_t, n_r, a, b, m (a and b carry the SNR scale).
/// Single-link kinds carry a linear mean SNR; mrc and mixture carry nested specs.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::rayleigh;
  std::map<std::string, double> params;
  std::optional<double> avg_snr;
  std::vector<ChannelSpec> components;  // mrc branches or mixture scenarios
  std::vector<double> probs;            // mixture only
  std::optional<PosynomialMGF> coefficients;  // posynomial only

  double param(const std::string& name) const;

  static ChannelSpec rayleigh(double avg_snr);
  static ChannelSpec hoyt(double q, double avg_snr);
  static ChannelSpec nakagami(double m, double avg_snr);
  static ChannelSpec rician_shadowed(double K, double m, double avg_snr);
  static ChannelSpec eta_mu(int format, double eta, int n, double avg_snr);
  static ChannelSpec mrc(std::vector<ChannelSpec> branches);
  static ChannelSpec mixture(std::vector<double> probs, std::vector<ChannelSpec> scenarios);
  static ChannelSpec ostbc_shadowed_rician(int n_t, int n_r, double a, double b, double m);
  static ChannelSpec posynomial(PosynomialMGF mgf);
};

/// Throws SpecError naming the first admissibility constraint the channel description breaks.
void check_spec(const ChannelSpec& spec);

/// Characteristic coefficients of the channel's SNR, simplified.
PosynomialMGF to_mgf(const ChannelSpec& spec);

using Rng = std::mt19937_64;

struct SamplerRecipe;

namespace draw {
struct Exponential {
  double mean;
};
struct Gamma {
  double shape;
  double scale;
};
/// gain * (X^2 + Y^2), X ~ N(0, sigma_x^2), Y ~ N(0, sigma_y^2).
struct Hoyt {
  double sigma_x;
  double sigma_y;
  double gain;
};
/// Sum of two independent Gamma(shape, scale_i) variates.
struct GammaPair {
  double shape;
  double scale1;
  double scale2;
};
/// gain * |xi + w|^2: xi has Nakagami-m amplitude with E|xi|^2 = omega,
/// w is circular complex Gaussian with E|w|^2 = scatter_power.
struct ShadowedRician {
  double m;
  double omega;
  double scatter_power;
  double gain;
};
struct Sum {
  std::vector<SamplerRecipe> branches;
};
struct Categorical {
  std::vector<double> cumulative;
  std::vector<SamplerRecipe> scenarios;
};
}  // namespace draw

/// Recipe for drawing SNR samples of a channel from an explicit generator.
struct SamplerRecipe {
  ChannelKind kind = ChannelKind::rayleigh;
  std::map<std::string, double> params;
  /// Factor mapping raw channel power to SNR (1 for composite kinds).
  double normalization = 1.0;
  std::variant<draw::Exponential, draw::Gamma, draw::Hoyt, draw::GammaPair, draw::ShadowedRician, draw::Sum,
               draw::Categorical>
      model;

  double operator()(Rng& rng) const;
};

/// Throws UnsupportedSampler for specs without a physical model.
SamplerRecipe to_sampler(const ChannelSpec& spec);

/// eta-mu (h, H) pair for the given format.
std::pair<double, double> eta_mu_hH(int format, double eta);

}  // namespace fadinglab
