#pragma once

#include <cstdint>
#include <functional>

#include "fadinglab/analysis.hpp"
#include "fadinglab/channels.hpp"

namespace fadinglab {

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::int64_t kDefaultMcSamples = 1'000'000;

/// Samples are drawn in fixed-size chunks; chunk i uses a generator seeded
/// from (seed, i), so results depend only on (seed, n), never on threading.
inline constexpr std::int64_t kMcChunkSize = 1 << 16;

/// Sample mean and standard error of statistic(gamma) over n draws.
McEstimate mc_mean(const SamplerRecipe& sampler, const std::function<double(double)>& statistic, std::int64_t n,
                   std::uint64_t seed);

/// Monte Carlo estimate of E[Q(sqrt(p gamma))].
McEstimate mc_q_transform(const ChannelSpec& spec, double p, std::int64_t n = kDefaultMcSamples,
                          std::uint64_t seed = 1);

/// Empirical P(gamma <= gamma_th) with binomial standard error.
McEstimate mc_outage(const ChannelSpec& spec, double gamma_th, std::int64_t n = kDefaultMcSamples,
                     std::uint64_t seed = 1);

/// Monte Carlo estimate of sum_j w_j E[Q(sqrt(p_j gamma))] from one sample set.
McEstimate mc_average_ep(const ChannelSpec& spec, const WeightedGaussianSum& sum, std::int64_t n = kDefaultMcSamples,
                         std::uint64_t seed = 1);

/// Empirical E[exp(s gamma)] for real s <= 0.
McEstimate mc_mgf(const ChannelSpec& spec, double s, std::int64_t n = kDefaultMcSamples, std::uint64_t seed = 1);

/// CDF used by the forward-Laplace oracle: closed form for Rayleigh and
/// Nakagami-m, Laplace inversion of the channel MGF otherwise.
double oracle_cdf(const ChannelSpec& spec, double t, double tol = 1e-10);

/// Q-transform from the CDF:
///   sqrt(p) / (2 sqrt(2 pi)) * int_0^inf exp(-p t / 2) F(t) t^(-1/2) dt,
/// evaluated with t = x^2 and truncated where exp(-p t / 2) < tol * 1e-3.
double laplace_forward_q(const ChannelSpec& spec, double p, double tol = 1e-9);

/// Direct quadrature of int Q(sqrt(p gamma)) f(gamma) d gamma for kinds with an
/// elementary PDF (rayleigh, nakagami_m). Throws DomainError otherwise.
double pdf_quadrature_q(const ChannelSpec& spec, double p, double tol = 1e-12);

}  // namespace fadinglab
