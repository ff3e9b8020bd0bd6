// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fadinglab/analysis.hpp"
#include "fadinglab/channels.hpp"
#include "fadinglab/cli.hpp"
#include "fadinglab/json_io.hpp"
#include "fadinglab/mgf.hpp"
#include "fadinglab/oracle.hpp"
#include "fadinglab/specfun.hpp"

using namespace fadinglab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Tracker {
  bool pass = true;
  double worst = 0.0;
  std::string worst_where;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& where) {
    if (!ok) {
      pass = false;
      if (failures.size() < 5) failures.push_back(where);
    }
  }

  void track(double metric, const std::string& where) {
    if (metric > worst || worst_where.empty()) {
      worst = metric;
      worst_where = where;
    }
  }

  std::string failures_text() const {
    std::string s;
    for (const auto& f : failures) s += "\n      fail: " + f;
    return s;
  }
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

struct NamedSpec {
  std::string name;
  std::function<ChannelSpec(double)> make;  // mean SNR -> spec
};

std::vector<std::vector<NamedSpec>> link_families() {
  return {
      {{"rayleigh", [](double g) { return ChannelSpec::rayleigh(g); }}},
      {{"hoyt q=0.2", [](double g) { return ChannelSpec::hoyt(0.2, g); }},
       {"hoyt q=0.5", [](double g) { return ChannelSpec::hoyt(0.5, g); }},
       {"hoyt q=0.9", [](double g) { return ChannelSpec::hoyt(0.9, g); }}},
      {{"nakagami m=0.5", [](double g) { return ChannelSpec::nakagami(0.5, g); }},
       {"nakagami m=2", [](double g) { return ChannelSpec::nakagami(2.0, g); }},
       {"nakagami m=3.5", [](double g) { return ChannelSpec::nakagami(3.5, g); }}},
      {{"rician_shadowed K=2 m=1", [](double g) { return ChannelSpec::rician_shadowed(2.0, 1.0, g); }},
       {"rician_shadowed K=5 m=2", [](double g) { return ChannelSpec::rician_shadowed(5.0, 2.0, g); }},
       {"rician_shadowed K=10 m=4.5", [](double g) { return ChannelSpec::rician_shadowed(10.0, 4.5, g); }}},
      {{"eta_mu f1 eta=0.5 n=1", [](double g) { return ChannelSpec::eta_mu(1, 0.5, 1, g); }},
       {"eta_mu f1 eta=2 n=2", [](double g) { return ChannelSpec::eta_mu(1, 2.0, 2, g); }},
       {"eta_mu f2 eta=0.3 n=3", [](double g) { return ChannelSpec::eta_mu(2, 0.3, 3, g); }}},
  };
}

// One representative setting per channel family for the high-SNR checks.
std::vector<NamedSpec> representatives() {
  return {
      {"rayleigh", [](double g) { return ChannelSpec::rayleigh(g); }},
      {"hoyt q=0.5", [](double g) { return ChannelSpec::hoyt(0.5, g); }},
      {"nakagami m=2", [](double g) { return ChannelSpec::nakagami(2.0, g); }},
      {"rician_shadowed K=5 m=2", [](double g) { return ChannelSpec::rician_shadowed(5.0, 2.0, g); }},
      {"eta_mu f1 eta=2 n=2", [](double g) { return ChannelSpec::eta_mu(1, 2.0, 2, g); }},
  };
}

Outcome triple_route_agreement() {
  const auto start = std::chrono::steady_clock::now();
  Tracker laplace;
  Tracker mc;
  int points = 0;
  for (const auto& family : link_families()) {
    for (const auto& ch : family) {
      for (double snr : {1.0, 10.0}) {
        const auto spec = ch.make(snr);
        const auto mgf = to_mgf(spec);
        for (double p : {0.5, 2.0, 8.0}) {
          const std::string where = fmt("%s snr=%g p=%g", ch.name.c_str(), snr, p);
          const double exact = q_transform(mgf, p).value;
          const double forward = laplace_forward_q(spec, p, 1e-9);
          const auto est = mc_q_transform(spec, p, 1'000'000, 1);
          const double d = std::abs(exact - forward);
          const double z_exact = std::abs(exact - est.estimate) / est.std_error;
          const double z_forward = std::abs(forward - est.estimate) / est.std_error;
          laplace.track(d, where);
          mc.track(std::max(z_exact, z_forward), where);
          laplace.check(d < 1e-6, where + fmt(" |diff|=%.3g", d));
          mc.check(z_exact < 4.0 && z_forward < 4.0, where + fmt(" z=%.2f/%.2f", z_exact, z_forward));
          ++points;
        }
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o;
  o.pass = laplace.pass && mc.pass && seconds < 300.0;
  o.detail = fmt("%d points; max |q - laplace| = %.3g (%s); max |z| = %.2f (%s); %.1f s", points, laplace.worst,
                 laplace.worst_where.c_str(), mc.worst, mc.worst_where.c_str(), seconds) +
             laplace.failures_text() + mc.failures_text();
  return o;
}

Outcome nakagami_equivalence() {
  Tracker t;
  for (double m : {0.5, 1.0, 2.0, 3.5})
    for (double snr : {1.0, 10.0})
      for (double p : {1.0, 2.0, 4.0}) {
        const auto spec = ChannelSpec::nakagami(m, snr);
        const double a = q_transform(to_mgf(spec), p).value;
        const double b = pdf_quadrature_q(spec, p);
        const std::string where = fmt("m=%g snr=%g p=%g", m, snr, p);
        t.track(std::abs(a - b), where);
        t.check(std::abs(a - b) < 1e-8, where + fmt(" |diff|=%.3g", std::abs(a - b)));
      }
  return {t.pass, fmt("max |diff| = %.3g (%s)", t.worst, t.worst_where.c_str()) + t.failures_text()};
}

Outcome outage_closed_form() {
  Tracker nak;
  Tracker ray;
  for (double snr : {1.0, 10.0})
    for (double th : {0.1, 1.0, 2.0, 4.0, 10.0}) {
      for (double m : {0.5, 1.0, 2.0, 3.5}) {
        const double v = outage(to_mgf(ChannelSpec::nakagami(m, snr)), th).value;
        const double ref = 1.0 - reg_gamma_q(m, m * th / snr);
        const std::string where = fmt("nakagami m=%g snr=%g th=%g", m, snr, th);
        nak.track(std::abs(v - ref), where);
        nak.check(std::abs(v - ref) < 1e-8, where);
      }
      const double v = outage(to_mgf(ChannelSpec::rayleigh(snr)), th).value;
      const double ref = -std::expm1(-th / snr);
      const std::string where = fmt("rayleigh snr=%g th=%g", snr, th);
      ray.track(std::abs(v - ref), where);
      ray.check(std::abs(v - ref) < 1e-9, where);
    }
  return {nak.pass && ray.pass,
          fmt("nakagami max |diff| = %.3g (%s); rayleigh max |diff| = %.3g", nak.worst, nak.worst_where.c_str(),
              ray.worst) +
              nak.failures_text() + ray.failures_text()};
}

Outcome asymptotics_and_diversity() {
  Tracker ratio;
  Tracker slope;
  for (const auto& ch : representatives()) {
    const auto mgf = to_mgf(ch.make(1.0));
    const double d = diversity_order(mgf);

    // 0.1 dB grid from 0 dB upward.
    double p_hit = 0.0;
    double q_hit = 0.0;
    for (int k = 0; k <= 1200; ++k) {
      const double p = std::pow(10.0, k / 100.0);
      const double q = q_transform(mgf, p).value;
      if (q < 1e-6) {
        p_hit = p;
        q_hit = q;
        break;
      }
    }
    const double r = p_hit > 0.0 ? std::abs(q_hit / q_asymptotic(mgf, p_hit) - 1.0) : 1.0;
    ratio.track(r, ch.name + fmt(" p=%.4g", p_hit));
    ratio.check(p_hit > 0.0 && r < 0.02, ch.name + fmt(" p=%.4g |ratio-1|=%.3g", p_hit, r));

    // Least-squares slope of log Q against log p over [1e3, 1e5].
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = 41;
    for (int k = 0; k < n; ++k) {
      const double x = std::log(1e3) + (std::log(1e5) - std::log(1e3)) * k / (n - 1);
      const double y = std::log(q_transform(mgf, std::exp(x)).value);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double fitted = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double rel = std::abs(fitted + d) / d;
    slope.track(rel, ch.name + fmt(" slope=%.5f div=%g", fitted, d));
    slope.check(rel < 0.01, ch.name + fmt(" slope=%.5f div=%g", fitted, d));
  }
  return {ratio.pass && slope.pass,
          fmt("max |ratio-1| = %.3g (%s); max slope rel err = %.3g (%s)", ratio.worst, ratio.worst_where.c_str(),
              slope.worst, slope.worst_where.c_str()) +
              ratio.failures_text() + slope.failures_text()};
}

Outcome closure_algebra() {
  Tracker t;
  for (int L : {2, 3, 4}) {
    std::vector<ChannelSpec> branches(L, ChannelSpec::rayleigh(1.0));
    const auto combined = simplify(to_mgf(ChannelSpec::mrc(branches)));
    const auto nak = to_mgf(ChannelSpec::nakagami(L, L));
    t.check(combined == nak, fmt("mrc L=%d: %s vs %s", L, dump_canonical(to_json(combined)).c_str(),
                                 dump_canonical(to_json(nak)).c_str()));
  }

  const auto ostbc = ChannelSpec::ostbc_shadowed_rician(2, 2, 0.5, 1.0, 2.0);
  const auto mgf = to_mgf(ostbc);
  const auto report = validate(mgf);
  t.check(report.ok, "ostbc coefficients fail validation");
  double worst_z = 0.0;
  for (double s : {-0.5, -1.0, -2.0}) {
    const auto est = mc_mgf(ostbc, s, 1'000'000, 7);
    const double z = std::abs(mgf_eval(mgf, s).real() - est.estimate) / est.std_error;
    worst_z = std::max(worst_z, z);
    t.check(z < 4.0, fmt("ostbc mgf s=%g z=%.2f", s, z));
  }
  for (double p : {0.5, 2.0, 8.0}) {
    const auto est = mc_q_transform(ostbc, p, 1'000'000, 7);
    const double z = std::abs(q_transform(mgf, p).value - est.estimate) / est.std_error;
    worst_z = std::max(worst_z, z);
    t.check(z < 4.0, fmt("ostbc q p=%g z=%.2f", p, z));
  }
  return {t.pass, fmt("mrc L=2,3,4 exact match; ostbc %s, max |z| = %.2f", report.ok ? "valid" : "invalid", worst_z) +
                      t.failures_text()};
}

Outcome lemma_properties() {
  Tracker t;
  int checked = 0;
  for (const auto& family : link_families())
    for (const auto& ch : family)
      for (double snr : {1.0, 10.0}) {
        const auto mgf = to_mgf(ch.make(snr));
        const std::string where = fmt("%s snr=%g", ch.name.c_str(), snr);
        t.check(q_transform(mgf, 0.0).value == 0.5, where + " Q(0) != 1/2");
        double prev = 0.5;
        for (int k = 0; k < 20; ++k) {
          const double p = std::pow(10.0, -2.0 + 4.0 * k / 19.0);
          const double q = q_transform(mgf, p).value;
          t.check(q > 0.0 && q <= 0.5, where + fmt(" p=%g out of range", p));
          t.check(q < prev, where + fmt(" p=%g not decreasing", p));
          prev = q;
          ++checked;
        }
      }
  return {t.pass, fmt("%d grid values checked", checked) + t.failures_text()};
}

Outcome mixture_linearity() {
  const std::vector<double> probs{0.2, 0.5, 0.3};
  const std::vector<ChannelSpec> parts{ChannelSpec::rayleigh(2.0), ChannelSpec::nakagami(2.0, 4.0),
                                       ChannelSpec::hoyt(0.5, 1.0)};
  const auto mix = to_mgf(ChannelSpec::mixture(probs, parts));
  Tracker t;
  for (double p : {0.5, 1.0, 2.0, 8.0, 32.0}) {
    double sum = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) sum += probs[i] * q_transform(to_mgf(parts[i]), p).value;
    const double d = std::abs(q_transform(mix, p).value - sum);
    t.track(d, fmt("q p=%g", p));
    t.check(d < 1e-10, fmt("q p=%g |diff|=%.3g", p, d));
  }
  for (double th : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    double sum = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) sum += probs[i] * outage(to_mgf(parts[i]), th).value;
    const double d = std::abs(outage(mix, th).value - sum);
    t.track(d, fmt("outage th=%g", th));
    t.check(d < 1e-10, fmt("outage th=%g |diff|=%.3g", th, d));
  }
  return {t.pass, fmt("max |diff| = %.3g (%s)", t.worst, t.worst_where.c_str()) + t.failures_text()};
}

Outcome reproducibility(const std::string& dir) {
  const std::string spec_path = dir + "/acceptance_hoyt.json";
  if (FILE* f = std::fopen(spec_path.c_str(), "w")) {
    std::fputs(R"({"kind":"hoyt","q":0.4,"avg_snr_db":3})", f);
    std::fclose(f);
  } else {
    return {false, "cannot write " + spec_path};
  }
  const std::vector<std::vector<std::string>> commands{
      {"validate", spec_path, "--quantity", "qtransform", "--grid", "0:10:5", "--db", "--mc", "200000", "--seed",
       "11"},
      {"validate", spec_path, "--quantity", "outage", "--grid", "0.5:2:0.5", "--mc", "200000", "--seed", "3"},
      {"sweep", spec_path, "--quantity", "aep", "--grid", "0:20:5", "--db", "--modulation", "bpsk", "--mc", "100000",
       "--seed", "5"},
      {"sweep", spec_path, "--quantity", "outage", "--grid", "0.5:3:0.5"},
  };
  Tracker t;
  for (const auto& args : commands) {
    std::ostringstream out1, err1, out2, err2;
    const int c1 = cli::run(args, out1, err1);
    const int c2 = cli::run(args, out2, err2);
    t.check(c1 == c2 && out1.str() == out2.str() && !out1.str().empty(),
            args[0] + " " + args[3] + fmt(" exit %d/%d", c1, c2));
  }
  std::remove(spec_path.c_str());
  return {t.pass, fmt("%zu commands run twice with byte-identical output", commands.size()) + t.failures_text()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : ".";
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"triple_route_agreement", triple_route_agreement},
      {"nakagami_equivalence", nakagami_equivalence},
      {"outage_closed_form", outage_closed_form},
      {"asymptotics_and_diversity", asymptotics_and_diversity},
      {"closure_algebra", closure_algebra},
      {"q_transform_properties", lemma_properties},
      {"mixture_linearity", mixture_linearity},
      {"reproducibility", [&] { return reproducibility(dir); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%zu] %-26s %s  %s\n", i + 1, criteria[i].name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
