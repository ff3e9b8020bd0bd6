#include <algorithm>
#include <cmath>

#include "fadinglab/channels.hpp"
#include "fadinglab/error.hpp"

namespace fadinglab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double draw_gamma(Rng& rng, double shape, double scale) {
  return std::gamma_distribution<double>(shape, scale)(rng);
}

double draw_normal(Rng& rng, double sigma) { return std::normal_distribution<double>(0.0, sigma)(rng); }

SamplerRecipe shadowed_rician(double m, double omega, double scatter_power, double gain) {
  SamplerRecipe r;
  r.kind = ChannelKind::rician_shadowed;
  r.params = {{"m", m}, {"omega", omega}, {"scatter_power", scatter_power}};
  r.normalization = gain;
  r.model = draw::ShadowedRician{m, omega, scatter_power, gain};
  return r;
}

}  // namespace

double SamplerRecipe::operator()(Rng& rng) const {
  return std::visit(
      overloaded{
          [&](const draw::Exponential& d) { return std::exponential_distribution<double>(1.0 / d.mean)(rng); },
          [&](const draw::Gamma& d) { return draw_gamma(rng, d.shape, d.scale); },
          [&](const draw::Hoyt& d) {
            const double x = draw_normal(rng, d.sigma_x);
            const double y = draw_normal(rng, d.sigma_y);
            return d.gain * (x * x + y * y);
          },
          [&](const draw::GammaPair& d) {
            return draw_gamma(rng, d.shape, d.scale1) + draw_gamma(rng, d.shape, d.scale2);
          },
          [&](const draw::ShadowedRician& d) {
            const double los = d.omega > 0.0 ? std::sqrt(draw_gamma(rng, d.m, d.omega / d.m)) : 0.0;
            const double sigma = std::sqrt(d.scatter_power / 2.0);
            const double re = los + draw_normal(rng, sigma);
            const double im = draw_normal(rng, sigma);
            return d.gain * (re * re + im * im);
          },
          [&](const draw::Sum& d) {
            double total = 0.0;
            for (const auto& b : d.branches) total += b(rng);
            return total;
          },
          [&](const draw::Categorical& d) {
            const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            auto it = std::upper_bound(d.cumulative.begin(), d.cumulative.end(), u);
            const auto idx = std::min<std::size_t>(it - d.cumulative.begin(), d.scenarios.size() - 1);
            return d.scenarios[idx](rng);
          },
      },
      model);
}

SamplerRecipe to_sampler(const ChannelSpec& spec) {
  check_spec(spec);
  const double g = spec.avg_snr.value_or(1.0);
  SamplerRecipe r;
  r.kind = spec.kind;
  r.params = spec.params;

  switch (spec.kind) {
    case ChannelKind::rayleigh:
      r.normalization = g;
      r.model = draw::Exponential{g};
      return r;
    case ChannelKind::nakagami_m: {
      const double m = spec.param("m");
      r.normalization = g / m;
      r.model = draw::Gamma{m, g / m};
      return r;
    }
    case ChannelKind::hoyt: {
      // q = sigma_x / sigma_y with sigma_y = 1; E[X^2 + Y^2] = 1 + q^2.
      const double q = spec.param("q");
      r.normalization = g / (1.0 + q * q);
      r.model = draw::Hoyt{q, 1.0, r.normalization};
      return r;
    }
    case ChannelKind::eta_mu: {
      const auto [h, H] = eta_mu_hH(static_cast<int>(spec.param("format")), spec.param("eta"));
      const double n = spec.param("n");
      r.model = draw::GammaPair{n / 2.0, g / (n * (h + H)), g / (n * (h - H))};
      return r;
    }
    case ChannelKind::rician_shadowed: {
      // Scatter power 2 b0 = 1 and LOS power Omega = K, so E|xi + w|^2 = 1 + K.
      const double K = spec.param("K");
      auto out = shadowed_rician(spec.param("m"), K, 1.0, g / (1.0 + K));
      out.params = spec.params;
      return out;
    }
    case ChannelKind::mrc: {
      draw::Sum sum;
      for (const auto& b : spec.components) sum.branches.push_back(to_sampler(b));
      r.model = std::move(sum);
      return r;
    }
    case ChannelKind::mixture: {
      draw::Categorical cat;
      double acc = 0.0;
      for (std::size_t i = 0; i < spec.components.size(); ++i) {
        acc += spec.probs[i];
        cat.cumulative.push_back(acc);
        cat.scenarios.push_back(to_sampler(spec.components[i]));
      }
      r.model = std::move(cat);
      return r;
    }
    case ChannelKind::ostbc_shadowed_rician: {
      // With white scatter the OSTBC SNR is a sum of n_t n_r independent
      // shadowed-Rician powers, each with MGF (1 - a s)^(m-1) (1 - (a+b) s)^(-m):
      // scatter power a and LOS power m b.
      const int antennas = static_cast<int>(spec.param("n_t") * spec.param("n_r"));
      const double a = spec.param("a");
      const double b = spec.param("b");
      const double m = spec.param("m");
      draw::Sum sum;
      for (int i = 0; i < antennas; ++i) sum.branches.push_back(shadowed_rician(m, m * b, a, 1.0));
      r.model = std::move(sum);
      return r;
    }
    case ChannelKind::posynomial:
      throw UnsupportedSampler("no physical sampler for raw posynomial coefficients");
  }
  throw UnsupportedSampler("unsupported channel kind");
}

}  // namespace fadinglab
