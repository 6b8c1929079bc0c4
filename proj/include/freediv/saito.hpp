#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "freediv/poly_matrix.hpp"
#include "freediv/polynomial.hpp"

namespace freediv {

/// Everything needed to re-check Saito's criterion for `divisor`:
/// det(matrix) = det_scalar * divisor and (grad f . matrix)_i = log_quotients[i] * f.
struct SaitoCertificate {
  Polynomial divisor;
  PolyMatrix matrix;
  Rational det_scalar;
  std::vector<Polynomial> log_quotients;
  /// Normalized gcd(f, f_1, ..., f_n); a constant for a reduced divisor.
  Polynomial squarefree_witness;
};

enum class SaitoFailureKind { NotSquarefree, DetMismatch, NotLogarithmic };

struct SaitoFailure {
  SaitoFailureKind kind;
  /// Offending column for NotLogarithmic.
  std::optional<std::size_t> column;
  std::string detail;
};

using SaitoResult = std::variant<SaitoCertificate, SaitoFailure>;

/// Checks squarefreeness, det A = c f with c a nonzero rational, and that every
/// column of A is logarithmic along f. Stops at the first violated condition.
/// Throws PreconditionError when A is not n x n for the n variables of f.
SaitoResult verify_saito(const Polynomial& f, const PolyMatrix& A);

/// verify_saito, throwing VerificationError with the failure detail.
SaitoCertificate require_saito(const Polynomial& f, const PolyMatrix& A, const std::string& what);

std::string describe(const SaitoFailure& failure);
const char* to_string(SaitoFailureKind kind);

/// Raw frame data before verification. The first `factors.size()` columns of
/// `saito` are Euler-type (column j scales factor j and kills the others); the
/// remaining columns annihilate every factor.
struct FrameData {
  std::vector<Polynomial> factors;
  PolyMatrix saito;
  std::optional<Weight> weight;
};

struct FrameDiagnostics {
  bool ok = true;
  std::vector<std::string> messages;
};

/// Exhaustive frame check: E_j(f_i) = delta_ij f_i, D(f_i) = 0, and the Saito
/// certificate of the product.
FrameDiagnostics verify_frame(const FrameData& data);

/// A divisor with a verified frame. Construction runs verify_frame and throws
/// VerificationError on any violation, so instances are always valid.
class FramedDivisor {
 public:
  static FramedDivisor make(FrameData data);

  const std::vector<Polynomial>& factors() const noexcept { return data_.factors; }
  const Polynomial& product() const noexcept { return certificate_.divisor; }
  const PolyMatrix& saito() const noexcept { return data_.saito; }
  const std::optional<Weight>& weight() const noexcept { return data_.weight; }
  const SaitoCertificate& certificate() const noexcept { return certificate_; }
  const FrameData& data() const noexcept { return data_; }
  const VarContext& context() const noexcept { return data_.saito.context(); }

 private:
  FramedDivisor(FrameData data, SaitoCertificate cert) : data_(std::move(data)), certificate_(std::move(cert)) {}

  FrameData data_;
  SaitoCertificate certificate_;
};

/// Re-runs the checks on an existing frame.
FrameDiagnostics verify_frame(const FramedDivisor& fd);

/// Single-factor frame from a verified Saito matrix of a w-homogeneous f with
/// deg_w f != 0. The Euler field E_w/d is written in the columns of A by
/// Cramer's rule; when one coefficient is a nonzero scalar, E_w/d replaces
/// that column. Otherwise a column D_j with D_j(f) = c_j f, c_j a nonzero
/// scalar, becomes the Euler-type column D_j/c_j. The other columns are
/// reduced to annihilators by subtracting multiples of the Euler-type column.
/// Throws VerificationError when neither option exists.
FramedDivisor euler_frame(const Polynomial& f, const Weight& w, const PolyMatrix& A);

/// Hilbert-Burch matrix B (n x (n-1)) with signed_maximal_minors(B) = scalar * grad f.
struct HilbertBurch {
  PolyMatrix matrix;
  Rational scalar;
};

/// Finds lambda with minors(B) = lambda grad f (all coordinates checked) and
/// rescales the first column so lambda becomes 1 when B has a column.
/// Throws VerificationError with the failing coordinate otherwise.
HilbertBurch normalize_hilbert_burch(const Polynomial& f, const PolyMatrix& B);

/// The annihilator columns of a single-factor frame, normalized.
HilbertBurch hilbert_burch_from_framed(const FramedDivisor& fd);

/// Saito matrix of g = x_1...x_n f from syzygies S (columns) of (x_i f_i).
/// Each column s is first converted to a syzygy t of fhat_i = x_i f_i + f by
/// t = s - (sum s)/(k + n) (k = deg f); the columns diag(x) t together with
/// the Euler column x are then verified as a Saito matrix of g. Throws
/// PreconditionError when a column of S is not a syzygy or f is not homogeneous.
SaitoResult saito_from_xifi(const Polynomial& f, const PolyMatrix& S);

/// Converts syzygies of (x_i f_i) into the logarithmic fields of g (the
/// non-Euler columns used by saito_from_xifi).
PolyMatrix xifi_syzygies_to_fields(const Polynomial& f, const PolyMatrix& S);

/// Minimal syzygies of (x_i f_i) up to the bound when there are exactly n-1 of
/// them, as the columns of an n x (n-1) matrix.
std::optional<PolyMatrix> xifi_syzygy_candidate(const Polynomial& f, std::uint32_t bound);

}  // namespace freediv
