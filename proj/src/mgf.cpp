#include "fadinglab/mgf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <limits>
#include <tuple>

#include "fadinglab/error.hpp"

namespace fadinglab {
namespace {

constexpr double kPoleMergeTolerance = 1e-12;
constexpr double kZeroExponent = 1e-14;

bool same_pole(Complex x, Complex y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return std::abs(x - y) <= kPoleMergeTolerance * scale;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double weight_sum(const PosynomialMGF& mgf) {
  double sum = 0.0;
  for (const auto& t : mgf.terms()) sum += t.c;
  return sum;
}

}  // namespace

double MonomialTerm::exponent_sum() const {
  double sum = 0.0;
  for (const auto& f : factors) sum += f.b;
  return sum;
}

PosynomialMGF::PosynomialMGF(std::vector<MonomialTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw SpecError("posynomial MGF needs at least one term");
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    if (t.factors.empty())
      throw SpecError("term " + std::to_string(k) + " has no factors");
    if (!std::isfinite(t.c)) throw SpecError("term " + std::to_string(k) + " has a non-finite weight");
    for (const auto& f : t.factors) {
      if (!std::isfinite(f.a.real()) || !std::isfinite(f.a.imag()) || !std::isfinite(f.b))
        throw SpecError("term " + std::to_string(k) + " has a non-finite factor");
    }
  }
}

PosynomialMGF monomial(std::vector<MonomialFactor> factors) {
  return PosynomialMGF({MonomialTerm{1.0, std::move(factors)}});
}

ValidationReport validate(const PosynomialMGF& mgf) {
  ValidationReport report;
  auto fail = [&](const char* id, std::string detail) {
    report.violations.push_back({id, std::move(detail)});
  };

  for (std::size_t k = 0; k < mgf.size(); ++k) {
    const auto& term = mgf.terms()[k];
    const std::string where = " in term " + std::to_string(k);

    for (std::size_t i = 0; i < term.factors.size(); ++i) {
      const auto& f = term.factors[i];
      if (!(f.a.real() > 0.0)) {
        fail(condition::kPolePositive, "Re[a]>0 fails (" + format_number(f.a.real()) +
                                           ") for factor " + std::to_string(i) + where);
      }
    }

    const double bsum = term.exponent_sum();
    if (!(bsum > 0.0))
      fail(condition::kExponentSum, "sum(b)>0 fails (" + format_number(bsum) + ")" + where);

    // Complex poles must come in conjugate pairs carrying the same exponent.
    std::vector<bool> used(term.factors.size(), false);
    for (std::size_t i = 0; i < term.factors.size(); ++i) {
      const auto& f = term.factors[i];
      if (used[i] || f.a.imag() == 0.0) continue;
      used[i] = true;
      bool matched = false;
      for (std::size_t j = i + 1; j < term.factors.size(); ++j) {
        const auto& g = term.factors[j];
        if (used[j] || g.a.imag() == 0.0) continue;
        if (same_pole(std::conj(f.a), g.a) && std::abs(f.b - g.b) <= kPoleMergeTolerance * std::abs(f.b)) {
          used[j] = true;
          matched = true;
          break;
        }
      }
      if (!matched) {
        fail(condition::kConjugatePairs, "complex pole (" + format_number(f.a.real()) + "," +
                                             format_number(f.a.imag()) + ") has no conjugate partner" +
                                             where);
      }
    }

    if (term.c < 0.0) {
      report.warnings.push_back("negative weight c=" + format_number(term.c) + where +
                                "; terms cannot be read as mixture probabilities");
    }
  }

  const double csum = weight_sum(mgf);
  if (!(std::abs(csum - 1.0) <= kWeightSumTolerance))
    fail(condition::kWeightSum, "sum(c)=1 fails (" + format_number(csum) + ")");

  report.ok = report.violations.empty();
  return report;
}

Complex mgf_eval(const PosynomialMGF& mgf, Complex s) {
  if (s == Complex{0.0, 0.0}) {
    // M(0) = 1 for every compatible coefficient set.
    const double csum = weight_sum(mgf);
    return std::abs(csum - 1.0) <= kWeightSumTolerance ? Complex{1.0, 0.0} : Complex{csum, 0.0};
  }

  Complex total{0.0, 0.0};
  for (const auto& term : mgf.terms()) {
    Complex log_value{0.0, 0.0};
    bool vanishes = false;
    for (const auto& f : term.factors) {
      const Complex z = 1.0 - s / f.a;
      if (std::abs(z) <= 4.0 * std::numeric_limits<double>::epsilon()) {
        if (f.b > 0.0) throw PoleError("mgf_eval: s coincides with a pole of the MGF");
        if (f.b < 0.0) vanishes = true;
        continue;
      }
      log_value -= f.b * std::log(z);
    }
    if (!vanishes) total += term.c * std::exp(log_value);
  }
  return total;
}

PosynomialMGF product(const PosynomialMGF& left, const PosynomialMGF& right) {
  std::vector<MonomialTerm> terms;
  terms.reserve(left.size() * right.size());
  for (const auto& l : left.terms()) {
    for (const auto& r : right.terms()) {
      MonomialTerm t{l.c * r.c, l.factors};
      t.factors.insert(t.factors.end(), r.factors.begin(), r.factors.end());
      terms.push_back(std::move(t));
    }
  }
  return PosynomialMGF(std::move(terms));
}

PosynomialMGF mixture(std::span<const double> weights, std::span<const PosynomialMGF> components) {
  if (weights.size() != components.size())
    throw SpecError("mixture: " + std::to_string(weights.size()) + " weights for " +
                    std::to_string(components.size()) + " components");
  if (weights.empty()) throw SpecError("mixture: no components");
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(std::abs(wsum - 1.0) <= kWeightSumTolerance))
    throw SpecError("mixture: weights sum to " + format_number(wsum) + ", expected 1");

  std::vector<MonomialTerm> terms;
  for (std::size_t l = 0; l < components.size(); ++l) {
    for (const auto& t : components[l].terms()) terms.push_back(MonomialTerm{weights[l] * t.c, t.factors});
  }
  return PosynomialMGF(std::move(terms));
}

PosynomialMGF simplify(const PosynomialMGF& mgf) {
  std::vector<MonomialTerm> terms;
  terms.reserve(mgf.size());
  for (const auto& term : mgf.terms()) {
    std::vector<MonomialFactor> merged;
    for (const auto& f : term.factors) {
      auto it = std::find_if(merged.begin(), merged.end(),
                             [&](const MonomialFactor& g) { return same_pole(g.a, f.a); });
      if (it == merged.end())
        merged.push_back(f);
      else
        it->b += f.b;
    }
    std::erase_if(merged, [](const MonomialFactor& f) { return std::abs(f.b) <= kZeroExponent; });
    if (merged.empty()) throw SpecError("simplify: a term reduces to a constant (all exponents cancel)");
    std::sort(merged.begin(), merged.end(), [](const MonomialFactor& x, const MonomialFactor& y) {
      return std::tuple(x.a.real(), x.a.imag(), x.b) < std::tuple(y.a.real(), y.a.imag(), y.b);
    });
    terms.push_back(MonomialTerm{term.c, std::move(merged)});
  }
  return PosynomialMGF(std::move(terms));
}

}  // namespace fadinglab
