#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freediv/error.hpp"
#include "freediv/graded.hpp"
#include "freediv/saito.hpp"

namespace freediv {

/// A verified Saito certificate together with the factorization it was built
/// from. Triangular chains carry this shape: their columns are logarithmic for
/// every factor but need not split into Euler-type and annihilating fields.
struct FactoredDivisor {
  std::vector<Polynomial> factors;
  SaitoCertificate certificate;

  const Polynomial& product() const noexcept { return certificate.divisor; }
  const PolyMatrix& matrix() const noexcept { return certificate.matrix; }
};

/// Verifies `matrix` against the product of `factors`.
FactoredDivisor make_factored(std::vector<Polynomial> factors, const PolyMatrix& matrix, const std::string& what);
FactoredDivisor to_factored(const FramedDivisor& fd);

// ------------------------------------------------------------------ binomials

/// F = x_1...x_n y^u z^t (x^a y^alpha + x^b z^beta) over x1..xn, y, z.
struct BinomialSpec {
  std::size_t n = 0;
  std::vector<std::uint32_t> a, b;
  std::uint32_t alpha = 1, beta = 1;
  std::uint32_t u = 0, t = 0;
};

/// Context x1, ..., xn, y, z.
VarContext binomial_context(std::size_t n);
Polynomial binomial_polynomial(const BinomialSpec& spec);
/// The (n+2)x(n+2) matrix with the diagonal x block, the column (beta y, alpha z),
/// bottom-row entries v_i z with v_i = (a_i - b_i)/beta, and last column
/// (-F_z, F_y)/(x_1...x_n). Verified; det_scalar = beta alpha + u beta + t alpha.
SaitoCertificate binomial_divisor(const BinomialSpec& spec);

enum class BinomialVerdict { Free, NotFree, Unknown };
const char* to_string(BinomialVerdict v);

/// F = c L (M + lambda N) read off a two-term polynomial.
struct BinomialShape {
  Exponents L, M, N;
  Rational coeff_m, coeff_n;
};

struct BinomialClassification {
  BinomialVerdict verdict = BinomialVerdict::Unknown;
  BinomialShape shape;
  /// Variables of M (resp. N) that are missing from L.
  std::vector<std::size_t> missing_m, missing_n;
  bool homogeneous = false;
  /// The spec in the variable roles chosen for the certificate (Free only).
  std::optional<BinomialSpec> normal_form;
  std::optional<SaitoCertificate> certificate;
  std::string reason;
};

/// Reads F as L(M+N) and applies the at-most-one-missing-variable conditions.
/// Free comes with a certificate over F's own context; NotFree only for
/// homogeneous F; Unknown otherwise. Throws PreconditionError when F is not a
/// monomial times a binomial or is not squarefree.
BinomialClassification is_free_binomial(const Polynomial& F);

// ----------------------------------------------------------- three variables

enum class Euler3Verdict { Free, NotFree, Suspension };
const char* to_string(Euler3Verdict v);

struct Euler3Result {
  Euler3Verdict verdict = Euler3Verdict::Free;
  std::optional<HilbertBurch> hilbert_burch;
  std::optional<SaitoCertificate> certificate;
  std::string reason;
};

/// Reduced f in three variables killed by the Euler field e, with f in its
/// Jacobian ideal. All of e nonzero: the (deg+2)^-1 Hilbert-Burch matrix.
/// One zero coordinate: free iff f_x lies in (y, z) for that coordinate x,
/// provided f is singular at the origin. A constant partial derivative gets a
/// direct certificate; any other gradient that is nonzero at the origin throws.
/// Two zeros: f is a suspended plane curve (certified when it is weighted
/// homogeneous in the remaining variables).
Euler3Result euler3_divisor(const Polynomial& f, const EulerField& e);

struct ConeFamilyResult {
  Polynomial f;
  EulerField field;
  Euler3Result result;
};

/// f = x^g1 y^g2 z^g3 prod_i (x^a - alpha_i y^b z^c) with the annihilator
/// deg_v(f) w - deg_w(f) v, v = (0, c, -b), w = (b, a, 0). The outcome is
/// checked against the expected verdict: free iff g2 + g3 > 0, except for the
/// smooth single factor x - alpha y^b z^c (a = 1, gamma = 0), which is free.
ConeFamilyResult cone_family(const std::vector<std::uint32_t>& gamma, std::uint32_t a, std::uint32_t b,
                             std::uint32_t c, const std::vector<Rational>& alphas,
                             const VarContext& ctx = VarContext({"x", "y", "z"}));

// ---------------------------------------------------------------- triangular

/// Columns (w_1 x, w_2 y) and (-f_y, f_x)/d for a w-homogeneous plane curve of
/// degree d != 0; det = f.
FactoredDivisor plane_curve_seed(const Polynomial& f, const Weight& w);

struct TriangularStep {
  std::uint32_t a = 1, b = 1;
  Rational alpha = 1, beta = 1;
  std::string new_var;
};

/// F_i = alpha x_i^a + beta F_{i-1}^b, with F_{i-1} the last factor of g.
/// Every column D gains the entry (b c_D / a) x_i with D(F_{i-1}) = c_D F_{i-1};
/// the new column is F_i d/dx_i.
FactoredDivisor triangular_extend(const FactoredDivisor& g, const TriangularStep& step);

/// The multiplier D(F)/F of every column of a factored divisor.
std::vector<Polynomial> column_multipliers(const FactoredDivisor& g, const Polynomial& factor);

/// G_2 ... G_i with G_j = x_1^t_1 + ... + x_j^t_j over x1..xi. The seed is the
/// plane-curve matrix of G_2 for the weight w_j = L / t_j, L = lcm(t_1, t_2).
FactoredDivisor brieskorn_chain(const std::vector<std::uint32_t>& t);

/// Frame of a single-factor divisor with a weight (euler_frame).
FramedDivisor frame_single(const FactoredDivisor& g, const Weight& w);

// --------------------------------------------------------------- chain rule

/// Factors x_1, ..., x_n of the normal crossing divisor, matrix diag(x).
FramedDivisor normal_crossing_frame(const VarContext& ctx);

/// Substitution data for H(f_1, ..., f_k).
struct ComposeCheck {
  Polynomial substituted;     // H(f_1, ..., f_k)
  Polynomial h1_substituted;  // H_1(f_1, ..., f_k), H = y_1...y_k H_1
  Polynomial common;          // normalized gcd(f, H_1(f_1, ..., f_k))
};

/// gcd(f, H_1(f)) is not constant: the substitution is not reduced.
class CommonFactorError : public PreconditionError {
 public:
  CommonFactorError(Polynomial common, Polynomial substituted);
  const Polynomial& common() const noexcept { return common_; }
  const Polynomial& substituted() const noexcept { return substituted_; }

 private:
  Polynomial common_;
  Polynomial substituted_;
};

/// Checks the common-factor hypothesis on raw factors. No frame is needed, so
/// this also runs on inputs whose frame is in doubt. Throws CommonFactorError.
ComposeCheck compose_precheck(const std::vector<Polynomial>& factors, const Polynomial& H);

/// H(f_1, ..., f_k) with Saito matrix C blockdiag(B~, I), where C is the frame
/// of fd and diag(y) B is the Saito matrix of H.
SaitoCertificate compose(const FramedDivisor& fd, const SaitoCertificate& H);

/// Single-factor frame of the product: columns (sum E_j)/k, E_j - E_1 (j >= 2), D.
FramedDivisor merge_factors(const FramedDivisor& fd);

/// The Saito matrix [[y1, y1^2], [y2, -y2^2]] of y1 y2 (y1 + y2).
SaitoCertificate sum_compose_template(const VarContext& ctx);

/// f g (f + g) for frames over disjoint variable sets.
SaitoCertificate sum_compose(const FramedDivisor& f, const FramedDivisor& g);

// ------------------------------------------------------------ tangent bundle

/// Hilbert-Burch matrix of a single w-homogeneous divisor from any Saito matrix.
HilbertBurch hilbert_burch_of(const SaitoCertificate& cert, const Weight& w);

/// f f* over x and the fresh y. Uniform weights use the block matrix
/// [[B, wx, 0, 0], [B*, 0, B, wy]]; other weights use [[B, wx, 0, 0], [B*, wy, B, y]].
SaitoCertificate tangent_extend(const Polynomial& f, const HilbertBurch& hb, const Weight& w,
                                const std::vector<std::string>& fresh);

/// f prod_j f^{*j}; fresh[j] names the n variables y_{.j}. m = fresh.size().
SaitoCertificate multi_jet_extend(const Polynomial& f, const HilbertBurch& hb, const Weight& w,
                                  const std::vector<std::vector<std::string>>& fresh);

/// F_0 = seed, F_{i+1} = F_i F_i*, re-deriving the Hilbert-Burch matrix at each
/// step; fresh[i] holds the 2^i n names introduced by step i + 1.
std::vector<SaitoCertificate> iterate_tangent(const SaitoCertificate& seed, const Weight& w,
                                              const std::vector<std::vector<std::string>>& fresh);

/// Names prefix1..prefixN.
std::vector<std::string> indexed_names(const std::string& prefix, std::size_t count);

/// True iff every entry has total degree <= 1.
bool is_linear(const PolyMatrix& m);

}  // namespace freediv
