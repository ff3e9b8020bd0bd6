#include "fadinglab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "fadinglab/error.hpp"

namespace fadinglab {
namespace {

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Roots of P_n by Newton iteration on the three-term recurrence.
Rule gauss_legendre_rule(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double apply_rule(const Rule& rule, const Integrand& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

}  // namespace

void QuadratureConfig::check() const {
  if (!(tolerance > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (nodes < 8) throw DomainError("quadrature node count must be at least 8");
  if (max_levels < 1) throw DomainError("quadrature refinement levels must be positive");
}

QuadratureResult integrate(const Integrand& f, double lo, double hi, const QuadratureConfig& cfg,
                           double abs_floor) {
  if (cfg.method == QuadratureConfig::Method::tanh_sinh) return integrate_tanh_sinh(f, lo, hi, cfg, abs_floor);
  return integrate_gauss_legendre(f, lo, hi, cfg, abs_floor);
}

QuadratureResult integrate_gauss_legendre(const Integrand& f, double lo, double hi,
                                          const QuadratureConfig& cfg, double abs_floor) {
  cfg.check();
  const Rule coarse = gauss_legendre_rule(cfg.nodes);
  const Rule fine = gauss_legendre_rule(2 * cfg.nodes);
  const int evals_per_panel = 3 * cfg.nodes;
  const std::size_t max_panels = std::size_t{1} << std::min(cfg.max_levels, 12);

  QuadratureResult result;
  auto make_panel = [&](double a, double b) {
    const double g1 = apply_rule(coarse, f, a, b);
    const double g2 = apply_rule(fine, f, a, b);
    result.evaluations += evals_per_panel;
    return Panel{a, b, g2, std::abs(g2 - g1)};
  };

  std::priority_queue<Panel> panels;
  panels.push(make_panel(lo, hi));
  double value = panels.top().value;
  double error = panels.top().error;

  while (error > std::max(abs_floor, cfg.tolerance * std::abs(value))) {
    if (panels.size() >= max_panels) {
      result.converged = false;
      break;
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Panel width at machine resolution; nothing left to refine.
      panels.push(worst);
      result.converged = false;
      break;
    }
    const Panel left = make_panel(worst.lo, mid);
    const Panel right = make_panel(mid, worst.hi);
    panels.push(left);
    panels.push(right);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
  }

  // Re-sum to shed drift from the incremental updates.
  result.value = 0.0;
  result.error = 0.0;
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
  for (const auto& p : all) {
    result.value += p.value;
    result.error += p.error;
  }
  return result;
}

QuadratureResult integrate_tanh_sinh(const Integrand& f, double lo, double hi, const QuadratureConfig& cfg,
                                     double abs_floor) {
  cfg.check();
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  constexpr double kMaxT = 3.5;
  const double width = hi - lo;
  QuadratureResult result;

  // Contribution of abscissa t >= 0 and its mirror -t, scaled to [lo, hi].
  auto pair_sum = [&](double t) {
    const double u = kHalfPi * std::sinh(t);
    const double cu = std::cosh(u);
    const double w = kHalfPi * std::cosh(t) / (cu * cu);
    const double d = 1.0 / (1.0 + std::exp(2.0 * u));  // distance to the nearer endpoint on [0,1]
    const double offset = width * d;
    if (!(offset > 0.0) || w == 0.0) return 0.0;
    result.evaluations += 2;
    return w * (f(lo + offset) + f(hi - offset));
  };

  double h = 1.0;
  double sum = kHalfPi * f(0.5 * (lo + hi));
  result.evaluations = 1;
  for (double t = h; t <= kMaxT; t += h) sum += pair_sum(t);
  double estimate = 0.5 * width * h * sum;

  for (int level = 1; level <= cfg.max_levels; ++level) {
    h *= 0.5;
    for (double t = h; t <= kMaxT; t += 2.0 * h) sum += pair_sum(t);
    const double next = 0.5 * width * h * sum;
    result.error = std::abs(next - estimate);
    estimate = next;
    if (level >= 3 && result.error <= std::max(abs_floor, cfg.tolerance * std::abs(estimate))) {
      result.value = estimate;
      return result;
    }
  }
  result.value = estimate;
  result.converged = false;
  return result;
}

}  // namespace fadinglab
