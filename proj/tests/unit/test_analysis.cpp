#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fadinglab/analysis.hpp"
#include "fadinglab/channels.hpp"
#include "fadinglab/error.hpp"
#include "fadinglab/oracle.hpp"
#include "helpers.hpp"

using namespace fadinglab;
using fadinglab::test::rel_err;

namespace {

double rayleigh_q(double p, double g) {
  // 1 - r = (1 - r^2) / (1 + r) avoids cancellation at high SNR.
  const double c = p * g / 2.0;
  const double r = std::sqrt(c / (1.0 + c));
  return 0.5 / ((1.0 + c) * (1.0 + r));
}

std::vector<ChannelSpec> link_specs() {
  return {ChannelSpec::rayleigh(1.0), ChannelSpec::hoyt(0.3, 2.0), ChannelSpec::nakagami(2.5, 0.5),
          ChannelSpec::rician_shadowed(5.0, 2.0, 1.0), ChannelSpec::eta_mu(1, 2.0, 2, 3.0),
          ChannelSpec::eta_mu(2, -0.4, 1, 1.0)};
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("q_transform at p = 0 is exactly one half") {
    for (const auto& spec : link_specs()) {
      const auto r = q_transform(to_mgf(spec), 0.0);
      CHECK(r.value == 0.5);
      CHECK(r.method == Method::closed_form);
    }
    CHECK_THROWS_AS(q_transform(to_mgf(ChannelSpec::rayleigh(1.0)), -1.0), DomainError);
  }

  TEST_CASE("q_transform reference values") {
    const auto ray = q_transform(to_mgf(ChannelSpec::rayleigh(1.0)), 2.0);
    CHECK(std::abs(ray.value - 0.1464466094067262378) < 1e-14);
    CHECK(ray.method == Method::euler_integral);
    CHECK(ray.error >= 0.0);
    CHECK(std::abs(q_transform(to_mgf(ChannelSpec::nakagami(2.0, 1.0)), 2.0).value - 0.11509982054024949033) < 1e-13);
    CHECK(std::abs(q_transform(to_mgf(ChannelSpec::hoyt(0.3, 1.0)), 4.0).value - 0.11835385646348958093) < 1e-13);
    const auto nak = ChannelSpec::nakagami(2.0, 1.0);
    CHECK(std::abs(q_transform(to_mgf(nak), 2.0).value - pdf_quadrature_q(nak, 2.0)) < 1e-8);
  }

  TEST_CASE("q_transform matches the Rayleigh closed form across SNR") {
    for (double g : {0.01, 1.0, 100.0})
      for (double p : {1e-3, 0.3, 2.0, 50.0, 1e4, 1e7}) {
        INFO("g=" << g << " p=" << p);
        CHECK(rel_err(q_transform(to_mgf(ChannelSpec::rayleigh(g)), p).value, rayleigh_q(p, g)) < 1e-11);
      }
  }

  TEST_CASE("q_transform handles complex conjugate poles") {
    // Mixture-free check: conjugate poles give a real, bounded, decreasing result.
    const auto mgf = monomial({{Complex{1.0, 0.8}, 1.5}, {Complex{1.0, -0.8}, 1.5}});
    REQUIRE(validate(mgf).ok);
    double prev = 0.5;
    for (double p : {0.1, 1.0, 10.0, 100.0}) {
      const double v = q_transform(mgf, p).value;
      CHECK(v > 0.0);
      CHECK(v < prev);
      prev = v;
    }
    // These coefficients describe no probability law (the inverted CDF overshoots
    // one), so the CDF-based oracle does not apply; integrate the MGF form directly.
    QuadratureConfig cfg;
    cfg.method = QuadratureConfig::Method::tanh_sinh;
    const double p = 2.0;
    auto craig = [&](double t) { return mgf_eval(mgf, -p / (2.0 * std::sin(t) * std::sin(t))).real() / std::numbers::pi; };
    const double ref = integrate(craig, 0.0, std::numbers::pi / 2, cfg).value;
    CHECK(std::abs(q_transform(mgf, p).value - ref) < 1e-12);
    CHECK(std::abs(ref - 0.0436329273383143358676) < 1e-12);
  }

  TEST_CASE("q_transform properties on a log grid") {
    for (const auto& spec : link_specs()) {
      const auto mgf = to_mgf(spec);
      double prev = 0.5;
      double prev_err = 0.0;
      for (int k = 0; k < 20; ++k) {
        const double p = std::pow(10.0, -2.0 + 4.0 * k / 19.0);
        const auto r = q_transform(mgf, p);
        CHECK(r.value > 0.0);
        CHECK(r.value <= 0.5);
        CHECK(r.value < prev + 2.0 * (r.error + prev_err));
        CHECK(r.value < prev);
        prev = r.value;
        prev_err = r.error;
      }
    }
  }

  TEST_CASE("q_asymptotic") {
    const auto ray = to_mgf(ChannelSpec::rayleigh(1.0));
    for (double p : {1.0, 10.0, 1e5}) CHECK(rel_err(q_asymptotic(ray, p), 1.0 / (2.0 * p)) < 1e-14);
    CHECK(std::abs(q_transform(ray, 1e3).value - q_asymptotic(ray, 1e3)) / q_transform(ray, 1e3).value < 0.01);
    const double m = 2.5;
    const auto nak = to_mgf(ChannelSpec::nakagami(m, 4.0));
    for (double p : {1.0, 37.0, 1e4}) CHECK(rel_err(q_asymptotic(nak, 2 * p) / q_asymptotic(nak, p), std::pow(2.0, -m)) < 1e-12);
    CHECK_THROWS_AS(q_asymptotic(ray, 0.0), DomainError);
  }

  TEST_CASE("q_asymptotic ratio tends to one") {
    for (const auto& spec : link_specs()) {
      const auto mgf = to_mgf(spec);
      double p = 1.0;
      while (q_transform(mgf, p).value >= 1e-6) p *= 1.5;
      INFO(to_string(spec.kind) << " p=" << p);
      CHECK(std::abs(q_transform(mgf, p).value / q_asymptotic(mgf, p) - 1.0) < 0.02);
    }
  }

  TEST_CASE("diversity order") {
    CHECK(diversity_order(to_mgf(ChannelSpec::nakagami(2.5, 1.0))) == 2.5);
    for (double q : {0.1, 0.7, 1.0}) CHECK(diversity_order(to_mgf(ChannelSpec::hoyt(q, 1.0))) == 1.0);
    const auto mix = to_mgf(
        ChannelSpec::mixture({0.5, 0.5}, {ChannelSpec::nakagami(1.0, 1.0), ChannelSpec::nakagami(3.0, 1.0)}));
    CHECK(diversity_order(mix) == 1.0);
    CHECK(diversity_order(to_mgf(ChannelSpec::ostbc_shadowed_rician(2, 2, 0.5, 1.0, 0.5))) == 4.0);
  }

  TEST_CASE("outage reference values") {
    const auto r = outage(to_mgf(ChannelSpec::rayleigh(1.0)), 1.0);
    CHECK(std::abs(r.value - 0.6321205588285576784) < 1e-13);
    CHECK(std::abs(outage(to_mgf(ChannelSpec::nakagami(2.0, 1.0)), 1.0).value - 0.59399415029016192432) < 1e-13);
    CHECK(outage(to_mgf(ChannelSpec::rayleigh(1.0)), 0.0).value == 0.0);
    CHECK(outage(to_mgf(ChannelSpec::rayleigh(1.0)), INFINITY).value == 1.0);
    CHECK_THROWS_AS(outage(to_mgf(ChannelSpec::rayleigh(1.0)), -1.0), DomainError);
  }

  TEST_CASE("outage routes agree") {
    OutageOptions series;
    series.route = OutageRoute::series;
    OutageOptions inversion;
    inversion.route = OutageRoute::inversion;
    const auto hoyt = to_mgf(ChannelSpec::hoyt(0.5, 1.0));
    const auto a = outage(hoyt, 0.5, series);
    const auto b = outage(hoyt, 0.5, inversion);
    CHECK(a.method == Method::series);
    CHECK(b.method == Method::laplace_inversion);
    CHECK(std::abs(a.value - b.value) < 1e-7);

    for (const auto& spec : link_specs()) {
      const auto mgf = to_mgf(spec);
      for (double th : {0.05, 0.3, 1.0, 3.0}) {
        INFO(to_string(spec.kind) << " th=" << th);
        CHECK(std::abs(outage(mgf, th, series).value - outage(mgf, th, inversion).value) < 1e-7);
      }
    }
  }

  TEST_CASE("outage routing records the method") {
    // Three distinct poles force the inversion route.
    const auto three = to_mgf(ChannelSpec::mrc({ChannelSpec::hoyt(0.3, 1.0), ChannelSpec::rayleigh(2.0)}));
    CHECK(outage(three, 1.0).method == Method::laplace_inversion);
    CHECK(outage(to_mgf(ChannelSpec::hoyt(0.3, 1.0)), 1.0).method == Method::series);
    // Large arguments also route to inversion.
    CHECK(outage(to_mgf(ChannelSpec::rayleigh(1.0)), 100.0).method == Method::laplace_inversion);
    OutageOptions series;
    series.route = OutageRoute::series;
    CHECK_THROWS_AS(outage(three, 1.0, series), DomainError);
  }

  TEST_CASE("outage is a distribution function") {
    for (const auto& spec : link_specs()) {
      const auto mgf = to_mgf(spec);
      double prev = 0.0;
      for (double th = 0.01; th < 40.0; th *= 1.4) {
        const double v = outage(mgf, th).value;
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(v >= prev - 2e-9);
        prev = v;
      }
    }
  }

  TEST_CASE("average_ep") {
    const auto ray = to_mgf(ChannelSpec::rayleigh(1.0));
    CHECK(std::abs(average_ep(ray, WeightedGaussianSum::bpsk()).value - 0.1464466094067262378) < 1e-14);
    const double p = 3.3;
    CHECK(std::abs(average_ep(ray, WeightedGaussianSum({{0.5, p}, {0.5, p}})).value - q_transform(ray, p).value) <
          1e-14);
    const auto twin = to_mgf(ChannelSpec::mixture({0.5, 0.5}, {ChannelSpec::rayleigh(1.0), ChannelSpec::rayleigh(1.0)}));
    CHECK(std::abs(average_ep(twin, WeightedGaussianSum::bpsk()).value - 0.1464466094067262378) < 1e-14);
    CHECK_THROWS_AS(WeightedGaussianSum({}), DomainError);
    CHECK_THROWS_AS(WeightedGaussianSum({{1.0, 0.0}}), DomainError);
  }

  TEST_CASE("mixture linearity") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<PosynomialMGF> parts{test::random_mgf(rng), test::random_mgf(rng)};
      const std::vector<double> w{0.35, 0.65};
      const auto mix = mixture(w, parts);
      for (double p : {0.2, 3.0, 40.0}) {
        const double sum = w[0] * q_transform(parts[0], p).value + w[1] * q_transform(parts[1], p).value;
        CHECK(std::abs(q_transform(mix, p).value - sum) < 1e-10);
      }
    }
  }

  TEST_CASE("method tags") {
    CHECK(to_string(Method::euler_integral) == "euler-integral");
    CHECK(to_string(Method::laplace_inversion) == "laplace-inversion");
    CHECK(to_string(Method::closed_form) == "closed-form");
  }
}
