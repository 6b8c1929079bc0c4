#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "freediv/error.hpp"
#include "freediv/families.hpp"
#include "freediv/graded.hpp"
#include "freediv/saito.hpp"

namespace freediv {

// ------------------------------------------------------------- the ideal (x_i f_i)

/// (x_1 f_1, ..., x_n f_n). Throws PreconditionError unless f is homogeneous of degree >= 1.
std::vector<Polynomial> xifi_generators(const Polynomial& f);
/// fhat_i = x_i f_i + f.
std::vector<Polynomial> xifi_hat_generators(const Polynomial& f);

/// Both generating sets, each element of one written in the other.
struct XifiIdealComparison {
  std::vector<Polynomial> xifi, hat;
  /// hat_in_xifi[i] expresses fhat_i in the x_j f_j; xifi_in_hat the reverse.
  std::vector<std::vector<Polynomial>> hat_in_xifi, xifi_in_hat;
  bool same_ideal = false;
};
XifiIdealComparison compare_xifi_ideals(const Polynomial& f);

/// Whether every listed homogeneous polynomial lies in the ideal of `gens`.
bool generates_within(const std::vector<Polynomial>& elements, const std::vector<Polynomial>& gens);

// --------------------------------------------------------------- memberships

struct ScalarMembership {
  std::size_t k = 0, n = 0;
  /// x_1 ... x_v with v = min(k, n).
  Polynomial target{VarContext()};
  bool member = false;
  /// Degree count settled it (k > n): no element of the ideal has degree below k.
  bool by_degree = false;
  /// lambda with sum lambda_i x_i f_i = target.
  std::optional<QVector> lambda;
  /// A functional on the degree-k piece vanishing on every x_i f_i but not on the target.
  std::optional<MembershipWitness> inconsistency;
};

/// Decides x_1...x_k in span_K {x_i f_i} for k <= n; k > n is decided by degree.
ScalarMembership scalar_membership_obstruction(const Polynomial& f);

/// x_A in (x_i f_i), decided at degree |A|. Indices are 0-based.
bool monomial_graded_membership(const std::set<std::size_t>& A, const Polynomial& f);

// ------------------------------------------------------- exponent independence

/// The support of f has no x_i^{k-1} x_j for the reported axis i.
class SmoothnessRefuted : public PreconditionError {
 public:
  explicit SmoothnessRefuted(std::size_t axis, const std::string& name);
  std::size_t axis() const noexcept { return axis_; }

 private:
  std::size_t axis_;
};

struct ExponentIndependence {
  std::size_t k = 0;
  /// j(i): smallest j with x_i^{k-1} x_j in supp f.
  std::vector<std::size_t> j_map;
  /// det(-tI + h) at t = -(k - 1).
  Rational det_value;
  /// Rank of the exponent vectors of the x_i^{k-1} x_{j(i)}.
  std::size_t rank = 0;
  bool independent = false;
};

/// Requires homogeneous f of degree k >= 2. Throws SmoothnessRefuted when some
/// axis has no admissible j, and CrossCheckError when the determinant and the
/// rank disagree.
ExponentIndependence exponent_independence(const Polynomial& f);

/// Characteristic value det(-tI + h) of the 0/1 map h(e_i) = e_{j(i)}.
Rational char_value_of_map(const std::vector<std::size_t>& j_map, const Rational& t);

// ------------------------------------------------------------------- reports

enum class Conclusion { NotFree, FreeCertificate, Inconclusive };
const char* to_string(Conclusion c);

/// Mathematical ground for a NotFree conclusion.
enum class Justification { None, Euler3Criterion, BinomialNecessity, XifiChain };
const char* to_string(Justification j);

struct ObstructionCheck {
  std::string name;
  /// "violated", "holds", "confirmed", "failed", "not_applicable", "refuted",
  /// "asserted" or "not_asserted".
  std::string verdict;
  nlohmann::json witness;
};

struct ObstructionReport {
  Polynomial candidate;
  std::vector<ObstructionCheck> checks;
  Conclusion conclusion = Conclusion::Inconclusive;
  Justification justification = Justification::None;
  std::optional<SaitoCertificate> certificate;

  const ObstructionCheck* find(const std::string& name) const;
};

/// g = l_1 ... l_n f. The coordinate change l_i -> x_i is applied exactly;
/// the membership and exponent checks then run on the transformed form.
/// NotFree only when smoothness is asserted, the degree/variable hypotheses
/// hold, the membership fails and the exponents are independent. Throws
/// PreconditionError for non-homogeneous f, non-linear or dependent forms.
ObstructionReport smooth_times_nc_verdict(const Polynomial& f, const std::vector<Polynomial>& ells,
                                          bool smooth_asserted);

/// g = x_1...x_n f certified through saito_from_xifi with syzygies found up to
/// `bound`. FreeCertificate on success, Inconclusive otherwise.
ObstructionReport xifi_certificate_report(const Polynomial& f, std::uint32_t bound);

/// Binomial classification as a report: NotFree cites binomial necessity.
ObstructionReport binomial_report(const Polynomial& F);

/// Three-variable Euler criterion as a report: NotFree cites it.
ObstructionReport euler3_report(const Polynomial& f, const EulerField& e);

/// Throws CrossCheckError unless the report's invariants hold: NotFree needs a
/// justification and a violated check; FreeCertificate needs a certificate.
void check_report_invariants(const ObstructionReport& r);

}  // namespace freediv
