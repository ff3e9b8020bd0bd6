#include "fadinglab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "fadinglab/error.hpp"
#include "fadinglab/specfun.hpp"

namespace fadinglab {
namespace {

// Running moments of one chunk; merged with Chan's pairwise update.
struct Moments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++count;
    const double delta = v - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (v - mean);
  }

  static Moments merge(const Moments& x, const Moments& y) {
    if (x.count == 0) return y;
    if (y.count == 0) return x;
    Moments out;
    out.count = x.count + y.count;
    const double nx = static_cast<double>(x.count);
    const double ny = static_cast<double>(y.count);
    const double delta = y.mean - x.mean;
    out.mean = x.mean + delta * ny / static_cast<double>(out.count);
    out.m2 = x.m2 + y.m2 + delta * delta * nx * ny / static_cast<double>(out.count);
    return out;
  }
};

Moments pairwise_merge(const std::vector<Moments>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return Moments::merge(pairwise_merge(parts, lo, mid), pairwise_merge(parts, mid, hi));
}

Rng chunk_generator(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return Rng(seq);
}

void check_samples(std::int64_t n) {
  if (n < 1000) throw DomainError("Monte Carlo needs at least 1000 samples");
}

}  // namespace

McEstimate mc_mean(const SamplerRecipe& sampler, const std::function<double(double)>& statistic, std::int64_t n,
                   std::uint64_t seed) {
  if (n <= 0) throw DomainError("Monte Carlo sample count must be positive");
  const auto chunks = static_cast<std::size_t>((n + kMcChunkSize - 1) / kMcChunkSize);
  std::vector<Moments> parts(chunks);

  auto run_chunk = [&](std::size_t i) {
    Rng rng = chunk_generator(seed, i);
    const std::int64_t begin = static_cast<std::int64_t>(i) * kMcChunkSize;
    const std::int64_t count = std::min(kMcChunkSize, n - begin);
    Moments m;
    for (std::int64_t j = 0; j < count; ++j) m.add(statistic(sampler(rng)));
    parts[i] = m;
  };

  const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), chunks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < chunks; ++i) run_chunk(i);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < chunks; i += workers) run_chunk(i);
      });
    }
  }

  const Moments total = pairwise_merge(parts, 0, parts.size());
  McEstimate est;
  est.estimate = total.mean;
  est.samples = total.count;
  est.seed = seed;
  est.std_error = total.count > 1 ? std::sqrt(total.m2 / static_cast<double>(total.count - 1) /
                                              static_cast<double>(total.count))
                                  : 0.0;
  return est;
}

McEstimate mc_q_transform(const ChannelSpec& spec, double p, std::int64_t n, std::uint64_t seed) {
  check_samples(n);
  if (!(p >= 0.0)) throw DomainError("mc_q_transform: p must be nonnegative");
  const auto sampler = to_sampler(spec);
  if (p == 0.0) return McEstimate{0.5, 0.0, n, seed};
  return mc_mean(sampler, [p](double g) { return gaussian_q(std::sqrt(p * g)); }, n, seed);
}

McEstimate mc_outage(const ChannelSpec& spec, double gamma_th, std::int64_t n, std::uint64_t seed) {
  check_samples(n);
  const auto sampler = to_sampler(spec);
  auto est = mc_mean(sampler, [gamma_th](double g) { return g <= gamma_th ? 1.0 : 0.0; }, n, seed);
  const double ph = est.estimate;
  est.std_error = std::sqrt(ph * (1.0 - ph) / static_cast<double>(est.samples));
  return est;
}

McEstimate mc_average_ep(const ChannelSpec& spec, const WeightedGaussianSum& sum, std::int64_t n,
                         std::uint64_t seed) {
  check_samples(n);
  const auto sampler = to_sampler(spec);
  const auto terms = sum.terms();
  return mc_mean(
      sampler,
      [&terms](double g) {
        double acc = 0.0;
        for (const auto& t : terms) acc += t.weight * gaussian_q(std::sqrt(t.scale * g));
        return acc;
      },
      n, seed);
}

McEstimate mc_mgf(const ChannelSpec& spec, double s, std::int64_t n, std::uint64_t seed) {
  check_samples(n);
  if (!(s <= 0.0)) throw DomainError("mc_mgf: s must be nonpositive");
  const auto sampler = to_sampler(spec);
  return mc_mean(sampler, [s](double g) { return std::exp(s * g); }, n, seed);
}

double oracle_cdf(const ChannelSpec& spec, double t, double tol) {
  if (t <= 0.0) return 0.0;
  check_spec(spec);
  switch (spec.kind) {
    case ChannelKind::rayleigh:
      return -std::expm1(-t / *spec.avg_snr);
    case ChannelKind::nakagami_m: {
      const double m = spec.param("m");
      return 1.0 - reg_gamma_q(m, m * t / *spec.avg_snr);
    }
    default:
      return bromwich_cdf(to_mgf(spec), t, tol).value;
  }
}

double laplace_forward_q(const ChannelSpec& spec, double p, double tol) {
  if (!(p > 0.0)) throw DomainError("laplace_forward_q: p must be positive");
  if (!(tol > 0.0)) throw DomainError("laplace_forward_q: tolerance must be positive");
  check_spec(spec);
  const double x_max = std::sqrt(2.0 * std::log(1e3 / tol) / p);
  const double cdf_tol = 0.1 * tol;
  auto integrand = [&](double x) { return std::exp(-0.5 * p * x * x) * oracle_cdf(spec, x * x, cdf_tol); };

  QuadratureConfig cfg;
  cfg.tolerance = 0.1 * tol;
  const auto q = integrate_gauss_legendre(integrand, 0.0, x_max, cfg, 0.01 * tol);
  return std::sqrt(p / (2.0 * std::numbers::pi)) * q.value;
}

double pdf_quadrature_q(const ChannelSpec& spec, double p, double tol) {
  check_spec(spec);
  double m = 1.0;
  if (spec.kind == ChannelKind::nakagami_m)
    m = spec.param("m");
  else if (spec.kind != ChannelKind::rayleigh)
    throw DomainError("pdf_quadrature_q: no closed-form PDF for " + std::string(to_string(spec.kind)));
  if (!(p >= 0.0)) throw DomainError("pdf_quadrature_q: p must be nonnegative");
  if (p == 0.0) return 0.5;

  const double rate = m / *spec.avg_snr;
  // Truncate where the remaining probability mass is negligible.
  double upper = *spec.avg_snr;
  while (reg_gamma_q(m, rate * upper) > tol * 1e-3) upper *= 2.0;

  // gamma = x^2 turns the Nakagami density into 2 rate^m x^(2m-1) e^(-rate x^2) / Gamma(m),
  // which is bounded at the origin for every m >= 1/2.
  const double log_norm = std::log(2.0) + m * std::log(rate) - std::lgamma(m);
  auto integrand = [&](double x) {
    const double density = std::exp(log_norm + (2.0 * m - 1.0) * std::log(x) - rate * x * x);
    return gaussian_q(std::sqrt(p) * x) * density;
  };
  QuadratureConfig cfg;
  cfg.tolerance = tol;
  return integrate_gauss_legendre(integrand, 0.0, std::sqrt(upper), cfg, 1e-2 * tol).value;
}

}  // namespace fadinglab
