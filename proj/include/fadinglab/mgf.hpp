#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace fadinglab {

using Complex = std::complex<double>;

/// One factor (1 - s/a)^(-b) of a monomial MGF term.
struct MonomialFactor {
  Complex a;
  double b = 0.0;

  friend bool operator==(const MonomialFactor&, const MonomialFactor&) = default;
};

/// c * prod_i (1 - s/a_i)^(-b_i).
struct MonomialTerm {
  double c = 1.0;
  std::vector<MonomialFactor> factors;

  /// Sum of the exponents b_i; the term decays as |s|^(-exponent_sum()).
  double exponent_sum() const;

  friend bool operator==(const MonomialTerm&, const MonomialTerm&) = default;
};

/// Weighted sum of monomial terms: the full statistical description of an
/// SNR whose MGF has posynomial form. Immutable after construction.
///
/// Construction only checks structure (at least one term, every term with
/// at least one factor, finite numbers). The compatibility conditions are
/// checked by validate(), which reports rather than throws.
class PosynomialMGF {
 public:
  explicit PosynomialMGF(std::vector<MonomialTerm> terms);

  const std::vector<MonomialTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_monomial() const { return terms_.size() == 1; }

  friend bool operator==(const PosynomialMGF&, const PosynomialMGF&) = default;

 private:
  std::vector<MonomialTerm> terms_;
};

/// Convenience for the common single-term case.
PosynomialMGF monomial(std::vector<MonomialFactor> factors);

struct Violation {
  std::string condition;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  /// Non-fatal remarks, e.g. negative weights that spoil the mixture reading.
  std::vector<std::string> warnings;
};

namespace condition {
inline constexpr const char* kPolePositive = "re_a_positive";
inline constexpr const char* kExponentSum = "exponent_sum_positive";
inline constexpr const char* kWeightSum = "weights_sum_to_one";
inline constexpr const char* kConjugatePairs = "conjugate_pairs";
}  // namespace condition

inline constexpr double kWeightSumTolerance = 1e-9;

ValidationReport validate(const PosynomialMGF& mgf);

/// Sum_k c_k prod_i (1 - s/a_ki)^(-b_ki) on the principal branch.
/// Throws PoleError when s sits on a pole with positive exponent.
Complex mgf_eval(const PosynomialMGF& mgf, Complex s);

/// MGF of the sum of two independent variates (distributive product).
PosynomialMGF product(const PosynomialMGF& left, const PosynomialMGF& right);

/// Probability mixture; weights must sum to one. Throws SpecError otherwise.
PosynomialMGF mixture(std::span<const double> weights,
                      std::span<const PosynomialMGF> components);

/// Canonical form: merges equal poles (relative tolerance 1e-12), drops
/// factors whose exponent vanishes, and orders factors by (Re a, Im a, b).
PosynomialMGF simplify(const PosynomialMGF& mgf);

}  // namespace fadinglab
