#include "fadinglab/channels.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <utility>

#include "fadinglab/error.hpp"

namespace fadinglab {
namespace {

constexpr std::array<std::pair<ChannelKind, std::string_view>, 9> kKindNames{{
    {ChannelKind::rayleigh, "rayleigh"},
    {ChannelKind::hoyt, "hoyt"},
    {ChannelKind::nakagami_m, "nakagami_m"},
    {ChannelKind::rician_shadowed, "rician_shadowed"},
    {ChannelKind::eta_mu, "eta_mu"},
    {ChannelKind::mrc, "mrc"},
    {ChannelKind::mixture, "mixture"},
    {ChannelKind::ostbc_shadowed_rician, "ostbc_shadowed_rician"},
    {ChannelKind::posynomial, "posynomial"},
}};

bool is_link_kind(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::rayleigh:
    case ChannelKind::hoyt:
    case ChannelKind::nakagami_m:
    case ChannelKind::rician_shadowed:
    case ChannelKind::eta_mu:
      return true;
    default:
      return false;
  }
}

bool is_positive_integer(double v) { return v >= 1.0 && v == std::nearbyint(v); }

void require(bool ok, const std::string& message) {
  if (!ok) throw SpecError(message);
}

ChannelSpec link(ChannelKind kind, std::map<std::string, double> params, double avg_snr) {
  ChannelSpec s;
  s.kind = kind;
  s.params = std::move(params);
  s.avg_snr = avg_snr;
  return s;
}

MonomialFactor real_factor(double a, double b) { return MonomialFactor{Complex{a, 0.0}, b}; }

}  // namespace

std::string_view to_string(ChannelKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ChannelKind channel_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw ParseError("unknown channel kind '" + std::string(name) + "'");
}

double ChannelSpec::param(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end())
    throw SpecError(std::string(to_string(kind)) + " requires parameter '" + name + "'");
  return it->second;
}

ChannelSpec ChannelSpec::rayleigh(double avg_snr) { return link(ChannelKind::rayleigh, {}, avg_snr); }

ChannelSpec ChannelSpec::hoyt(double q, double avg_snr) { return link(ChannelKind::hoyt, {{"q", q}}, avg_snr); }

ChannelSpec ChannelSpec::nakagami(double m, double avg_snr) {
  return link(ChannelKind::nakagami_m, {{"m", m}}, avg_snr);
}

ChannelSpec ChannelSpec::rician_shadowed(double K, double m, double avg_snr) {
  return link(ChannelKind::rician_shadowed, {{"K", K}, {"m", m}}, avg_snr);
}

ChannelSpec ChannelSpec::eta_mu(int format, double eta, int n, double avg_snr) {
  return link(ChannelKind::eta_mu, {{"format", format}, {"eta", eta}, {"n", n}}, avg_snr);
}

ChannelSpec ChannelSpec::mrc(std::vector<ChannelSpec> branches) {
  ChannelSpec s;
  s.kind = ChannelKind::mrc;
  s.components = std::move(branches);
  return s;
}

ChannelSpec ChannelSpec::mixture(std::vector<double> probs, std::vector<ChannelSpec> scenarios) {
  ChannelSpec s;
  s.kind = ChannelKind::mixture;
  s.probs = std::move(probs);
  s.components = std::move(scenarios);
  return s;
}

ChannelSpec ChannelSpec::ostbc_shadowed_rician(int n_t, int n_r, double a, double b, double m) {
  ChannelSpec s;
  s.kind = ChannelKind::ostbc_shadowed_rician;
  s.params = {{"n_t", n_t}, {"n_r", n_r}, {"a", a}, {"b", b}, {"m", m}};
  return s;
}

ChannelSpec ChannelSpec::posynomial(PosynomialMGF mgf) {
  ChannelSpec s;
  s.kind = ChannelKind::posynomial;
  s.coefficients = std::move(mgf);
  return s;
}

std::pair<double, double> eta_mu_hH(int format, double eta) {
  if (format == 1) return {(2.0 + 1.0 / eta + eta) / 4.0, (1.0 / eta - eta) / 4.0};
  return {1.0 / (1.0 - eta * eta), eta / (1.0 - eta * eta)};
}

void check_spec(const ChannelSpec& spec) {
  const std::string name(to_string(spec.kind));
  if (is_link_kind(spec.kind)) {
    require(spec.avg_snr.has_value(), name + " requires a mean SNR (avg_snr or avg_snr_db)");
    require(std::isfinite(*spec.avg_snr) && *spec.avg_snr > 0.0,
            name + " requires avg_snr > 0 (a zero mean SNR has no density)");
  }

  switch (spec.kind) {
    case ChannelKind::rayleigh:
      break;
    case ChannelKind::hoyt: {
      const double q = spec.param("q");
      require(q > 0.0 && q <= 1.0, "hoyt requires 0 < q <= 1");
      break;
    }
    case ChannelKind::nakagami_m: {
      const double m = spec.param("m");
      require(std::isfinite(m) && m >= 0.5, "nakagami_m requires m >= 1/2");
      break;
    }
    case ChannelKind::rician_shadowed: {
      const double K = spec.param("K");
      const double m = spec.param("m");
      require(std::isfinite(K) && K >= 0.0, "rician_shadowed requires K >= 0");
      require(std::isfinite(m) && m > 0.0, "rician_shadowed requires m > 0");
      break;
    }
    case ChannelKind::eta_mu: {
      const double format = spec.param("format");
      const double eta = spec.param("eta");
      const double n = spec.param("n");
      require(format == 1.0 || format == 2.0, "eta_mu requires format 1 or 2");
      require(is_positive_integer(n), "eta_mu requires n = 1, 2, ...");
      if (format == 1.0)
        require(std::isfinite(eta) && eta > 0.0, "eta_mu format 1 requires 0 < eta < inf");
      else
        require(eta > -1.0 && eta < 1.0, "eta_mu format 2 requires -1 < eta < 1");
      break;
    }
    case ChannelKind::mrc:
      require(!spec.components.empty(), "mrc requires at least one branch");
      for (const auto& branch : spec.components) {
        require(branch.kind != ChannelKind::mrc, "mrc branches must not be mrc channels");
        check_spec(branch);
      }
      break;
    case ChannelKind::mixture: {
      require(!spec.components.empty(), "mixture requires at least one scenario");
      require(spec.probs.size() == spec.components.size(), "mixture requires one probability per scenario");
      for (double p : spec.probs) require(p >= 0.0, "mixture probabilities must be nonnegative");
      const double total = std::accumulate(spec.probs.begin(), spec.probs.end(), 0.0);
      require(std::abs(total - 1.0) <= kWeightSumTolerance, "mixture probabilities must sum to 1");
      for (const auto& scenario : spec.components) check_spec(scenario);
      break;
    }
    case ChannelKind::ostbc_shadowed_rician: {
      require(is_positive_integer(spec.param("n_t")), "ostbc_shadowed_rician requires integer n_t >= 1");
      require(is_positive_integer(spec.param("n_r")), "ostbc_shadowed_rician requires integer n_r >= 1");
      require(spec.param("a") > 0.0, "ostbc_shadowed_rician requires a > 0");
      require(spec.param("b") >= 0.0, "ostbc_shadowed_rician requires b >= 0");
      require(spec.param("m") > 0.0, "ostbc_shadowed_rician requires m > 0");
      break;
    }
    case ChannelKind::posynomial: {
      require(spec.coefficients.has_value(), "posynomial requires characteristic coefficients");
      const auto report = validate(*spec.coefficients);
      if (!report.ok) throw SpecError("posynomial coefficients: " + report.violations.front().detail);
      break;
    }
  }
}

PosynomialMGF to_mgf(const ChannelSpec& spec) {
  check_spec(spec);
  const double g = spec.avg_snr.value_or(1.0);

  switch (spec.kind) {
    case ChannelKind::rayleigh:
      return monomial({real_factor(1.0 / g, 1.0)});
    case ChannelKind::hoyt: {
      const double q2 = spec.param("q") * spec.param("q");
      return simplify(monomial({real_factor((1.0 + q2) / (2.0 * q2 * g), 0.5),
                                real_factor((1.0 + q2) / (2.0 * g), 0.5)}));
    }
    case ChannelKind::nakagami_m: {
      const double m = spec.param("m");
      return monomial({real_factor(m / g, m)});
    }
    case ChannelKind::rician_shadowed: {
      const double K = spec.param("K");
      const double m = spec.param("m");
      return simplify(monomial({real_factor((1.0 + K) / g, -(m - 1.0)),
                                real_factor((1.0 + K) / ((1.0 + K / m) * g), m)}));
    }
    case ChannelKind::eta_mu: {
      const auto [h, H] = eta_mu_hH(static_cast<int>(spec.param("format")), spec.param("eta"));
      const double n = spec.param("n");
      return simplify(monomial({real_factor(n * (h + H) / g, n / 2.0), real_factor(n * (h - H) / g, n / 2.0)}));
    }
    case ChannelKind::mrc: {
      PosynomialMGF acc = to_mgf(spec.components.front());
      for (std::size_t i = 1; i < spec.components.size(); ++i) acc = product(acc, to_mgf(spec.components[i]));
      return simplify(acc);
    }
    case ChannelKind::mixture: {
      std::vector<PosynomialMGF> parts;
      parts.reserve(spec.components.size());
      for (const auto& s : spec.components) parts.push_back(to_mgf(s));
      return simplify(fadinglab::mixture(spec.probs, parts));
    }
    case ChannelKind::ostbc_shadowed_rician: {
      const double antennas = spec.param("n_t") * spec.param("n_r");
      const double a = spec.param("a");
      const double b = spec.param("b");
      const double m = spec.param("m");
      return simplify(monomial({real_factor(1.0 / a, antennas), real_factor(1.0 / (a + b), m * antennas),
                                real_factor(1.0 / a, -m * antennas)}));
    }
    case ChannelKind::posynomial:
      return simplify(*spec.coefficients);
  }
  throw SpecError("unhandled channel kind");
}

}  // namespace fadinglab
