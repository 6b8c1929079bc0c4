#include "freediv/saito.hpp"

#include <future>
#include <numeric>

#include "freediv/error.hpp"
#include "freediv/graded.hpp"
#include "freediv/parse.hpp"

namespace freediv {

namespace {

// c with p = c q for a nonzero rational c, if any.
std::optional<Rational> scalar_ratio(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return std::nullopt;
  Rational c = p.leading_coefficient() / q.leading_coefficient();
  if (!(p == q * c)) return std::nullopt;
  return c;
}

// Column j of A applied to f as a derivation: sum_i f_i A_ij.
Polynomial column_derivation(const std::vector<Polynomial>& grad, const PolyMatrix& A, std::size_t j) {
  Polynomial out(A.context());
  for (std::size_t i = 0; i < grad.size(); ++i)
    if (!A(i, j).is_zero() && !grad[i].is_zero()) out += grad[i] * A(i, j);
  return out;
}

}  // namespace

const char* to_string(SaitoFailureKind kind) {
  switch (kind) {
    case SaitoFailureKind::NotSquarefree: return "NotSquarefree";
    case SaitoFailureKind::DetMismatch: return "DetMismatch";
    case SaitoFailureKind::NotLogarithmic: return "NotLogarithmic";
  }
  return "?";
}

std::string describe(const SaitoFailure& failure) {
  std::string s = to_string(failure.kind);
  if (failure.column) s += " (column " + std::to_string(*failure.column) + ")";
  if (!failure.detail.empty()) s += ": " + failure.detail;
  return s;
}

SaitoResult verify_saito(const Polynomial& f, const PolyMatrix& A) {
  const std::size_t n = f.num_vars();
  if (A.rows() != n || A.cols() != n) throw PreconditionError("Saito matrix must be n x n for n variables");
  if (!(A.context() == f.context())) throw PreconditionError("Saito matrix context differs from the divisor");
  if (f.is_zero()) throw PreconditionError("the zero polynomial defines no divisor");

  SquarefreeReport sq = squarefree_report(f);
  if (!sq.squarefree)
    return SaitoFailure{SaitoFailureKind::NotSquarefree, std::nullopt, "gcd(f, grad f) = " + to_string(sq.witness)};

  Polynomial det = determinant(A);
  auto c = scalar_ratio(det, f);
  if (!c) return SaitoFailure{SaitoFailureKind::DetMismatch, std::nullopt, "det = " + to_string(det)};

  const auto grad = gradient(f);
  std::vector<std::future<std::optional<Polynomial>>> checks;
  for (std::size_t j = 0; j < n; ++j)
    checks.push_back(std::async(n >= 4 ? std::launch::async : std::launch::deferred,
                                [&, j] { return divide_exact(column_derivation(grad, A, j), f); }));
  SaitoCertificate cert{f, A, *c, {}, sq.witness};
  std::optional<SaitoFailure> failure;
  for (std::size_t j = 0; j < n; ++j) {
    auto q = checks[j].get();
    if (!q && !failure)
      failure = SaitoFailure{SaitoFailureKind::NotLogarithmic, j, "column is not tangent to the divisor"};
    if (q) cert.log_quotients.push_back(std::move(*q));
  }
  if (failure) return *failure;
  return cert;
}

SaitoCertificate require_saito(const Polynomial& f, const PolyMatrix& A, const std::string& what) {
  auto r = verify_saito(f, A);
  if (auto* fail = std::get_if<SaitoFailure>(&r)) throw VerificationError(what + ": " + describe(*fail));
  return std::get<SaitoCertificate>(std::move(r));
}

// ------------------------------------------------------------------ frames

FrameDiagnostics verify_frame(const FrameData& data) {
  FrameDiagnostics d;
  auto fail = [&](std::string msg) {
    d.ok = false;
    d.messages.push_back(std::move(msg));
  };
  const PolyMatrix& A = data.saito;
  const std::size_t k = data.factors.size();
  if (k == 0) {
    fail("frame has no factors");
    return d;
  }
  if (!A.is_square() || A.rows() != A.context().size()) {
    fail("Saito matrix must be n x n");
    return d;
  }
  if (k > A.cols()) {
    fail("more factors than columns");
    return d;
  }
  for (const auto& fi : data.factors)
    if (!(fi.context() == A.context())) {
      fail("factor context differs from the matrix");
      return d;
    }
  if (data.weight && data.weight->entries.size() != A.rows()) fail("weight length differs from the context");

  for (std::size_t i = 0; i < k; ++i) {
    const auto grad = gradient(data.factors[i]);
    for (std::size_t j = 0; j < A.cols(); ++j) {
      Polynomial v = column_derivation(grad, A, j);
      if (j < k) {
        const Polynomial expect = i == j ? data.factors[i] : Polynomial(A.context());
        if (!(v == expect))
          fail("Euler column " + std::to_string(j) + " applied to factor " + std::to_string(i) + " gives " +
               to_string(v));
      } else if (!v.is_zero()) {
        fail("column " + std::to_string(j) + " does not annihilate factor " + std::to_string(i) + ": " +
             to_string(v));
      }
    }
  }
  Polynomial product = Polynomial::constant(A.context(), 1);
  for (const auto& fi : data.factors) product *= fi;
  auto r = verify_saito(product, A);
  if (auto* f = std::get_if<SaitoFailure>(&r)) fail("product certificate: " + describe(*f));
  return d;
}

FrameDiagnostics verify_frame(const FramedDivisor& fd) { return verify_frame(fd.data()); }

FramedDivisor FramedDivisor::make(FrameData data) {
  FrameDiagnostics diag = verify_frame(data);
  if (!diag.ok) {
    std::string msg = "frame verification failed";
    for (const auto& m : diag.messages) msg += "; " + m;
    throw VerificationError(msg);
  }
  Polynomial product = Polynomial::constant(data.saito.context(), 1);
  for (const auto& fi : data.factors) product *= fi;
  SaitoCertificate cert = std::get<SaitoCertificate>(verify_saito(product, data.saito));
  return FramedDivisor(std::move(data), std::move(cert));
}

FramedDivisor euler_frame(const Polynomial& f, const Weight& w, const PolyMatrix& A) {
  const std::size_t n = f.num_vars();
  auto deg = weighted_degree(f, w);
  if (!deg || *deg == 0) throw PreconditionError("euler_frame needs f weighted homogeneous of nonzero degree");
  if (w.entries.size() != n) throw PreconditionError("weight length differs from the context");
  const SaitoCertificate cert = require_saito(f, A, "euler_frame input");
  const VarContext& ctx = f.context();

  std::vector<Polynomial> euler;
  for (std::size_t i = 0; i < n; ++i)
    euler.push_back(Polynomial::variable(ctx, i) * make_rational(w.entries[i], *deg));

  // E = sum_j e_j A_j; Cramer gives e_j = det(A with column j -> E) / det A.
  const Polynomial detA = f * cert.det_scalar;
  std::optional<std::size_t> pivot;
  for (std::size_t j = 0; j < n && !pivot; ++j) {
    PolyMatrix replaced = A;
    for (std::size_t i = 0; i < n; ++i) replaced.set(i, j, euler[i]);
    auto e = divide_exact(determinant(replaced), detA);
    if (!e) throw CrossCheckError("Euler field is not a combination of Saito columns");
    if (e->is_constant() && !e->is_zero()) pivot = j;
  }

  std::vector<Polynomial> first = euler;
  std::size_t skip;
  if (pivot) {
    skip = *pivot;
  } else {
    std::optional<std::size_t> unit_col;
    for (std::size_t j = 0; j < n && !unit_col; ++j)
      if (cert.log_quotients[j].is_constant() && !cert.log_quotients[j].is_zero()) unit_col = j;
    if (!unit_col) throw VerificationError("euler_frame: no Euler-type column can be placed in this Saito matrix");
    skip = *unit_col;
    const Rational inv = 1 / cert.log_quotients[skip].constant_value();
    first = A.column(skip);
    for (auto& e : first) e *= inv;
  }

  std::vector<std::vector<Polynomial>> cols{first};
  for (std::size_t j = 0; j < n; ++j) {
    if (j == skip) continue;
    std::vector<Polynomial> col = A.column(j);
    // first(f) = f, so subtracting c_j * first kills f
    for (std::size_t i = 0; i < n; ++i) col[i] -= cert.log_quotients[j] * first[i];
    cols.push_back(std::move(col));
  }
  return FramedDivisor::make(FrameData{{f}, PolyMatrix::from_columns(ctx, n, cols), w});
}

HilbertBurch normalize_hilbert_burch(const Polynomial& f, const PolyMatrix& B) {
  const auto grad = gradient(f);
  auto minors = signed_maximal_minors(B);
  std::optional<Rational> lambda;
  for (std::size_t i = 0; i < grad.size() && !lambda; ++i)
    if (!grad[i].is_zero()) {
      if (minors[i].is_zero()) throw VerificationError("Hilbert-Burch minors vanish at coordinate " + std::to_string(i));
      lambda = minors[i].leading_coefficient() / grad[i].leading_coefficient();
    }
  if (!lambda) throw PreconditionError("constant polynomial has no Hilbert-Burch matrix");
  for (std::size_t i = 0; i < grad.size(); ++i)
    if (!(minors[i] == grad[i] * *lambda))
      throw VerificationError("Hilbert-Burch minors not proportional to the gradient at coordinate " +
                              std::to_string(i));
  if (B.cols() == 0) return {B, *lambda};
  PolyMatrix scaled = B.scaled_column(0, Polynomial::constant(B.context(), 1 / *lambda));
  return {scaled, Rational(1)};
}

HilbertBurch hilbert_burch_from_framed(const FramedDivisor& fd) {
  if (fd.factors().size() != 1) throw PreconditionError("Hilbert-Burch extraction needs a single-factor frame");
  const std::size_t n = fd.saito().cols();
  std::vector<std::size_t> rest(n - 1);
  std::iota(rest.begin(), rest.end(), std::size_t{1});
  return normalize_hilbert_burch(fd.product(), fd.saito().select_columns(rest));
}

// ------------------------------------------------------- (x_i f_i) lifting

PolyMatrix xifi_syzygies_to_fields(const Polynomial& f, const PolyMatrix& S) {
  const std::size_t n = f.num_vars();
  if (S.rows() != n) throw PreconditionError("syzygy matrix must have one row per variable");
  auto k = homogeneous_degree(f);
  if (!k || *k < 1) throw PreconditionError("f must be homogeneous of positive degree");
  const VarContext& ctx = f.context();
  const auto grad = gradient(f);
  PolyMatrix out(ctx, n, S.cols());
  for (std::size_t j = 0; j < S.cols(); ++j) {
    Polynomial check(ctx), total(ctx);
    for (std::size_t i = 0; i < n; ++i) {
      check += Polynomial::variable(ctx, i) * grad[i] * S(i, j);
      total += S(i, j);
    }
    if (!check.is_zero()) throw PreconditionError("column " + std::to_string(j) + " is not a syzygy of (x_i f_i)");
    const Polynomial shift = total * make_rational(1, *k + static_cast<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i) out.set(i, j, Polynomial::variable(ctx, i) * (S(i, j) - shift));
  }
  return out;
}

SaitoResult saito_from_xifi(const Polynomial& f, const PolyMatrix& S) {
  const std::size_t n = f.num_vars();
  const VarContext& ctx = f.context();
  if (S.cols() + 1 != n) throw PreconditionError("need n-1 syzygy columns");
  PolyMatrix fields = xifi_syzygies_to_fields(f, S);
  std::vector<Polynomial> x;
  Polynomial g = f;
  for (std::size_t i = 0; i < n; ++i) {
    x.push_back(Polynomial::variable(ctx, i));
    g *= x.back();
  }
  return verify_saito(g, fields.with_column_prepended(x));
}

std::optional<PolyMatrix> xifi_syzygy_candidate(const Polynomial& f, std::uint32_t bound) {
  const std::size_t n = f.num_vars();
  const auto grad = gradient(f);
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(Polynomial::variable(f.context(), i) * grad[i]);
  for (const auto& g : gens)
    if (g.is_zero()) return std::nullopt;
  auto syz = minimal_syzygies(gens, bound);
  if (syz.size() + 1 != n) return std::nullopt;
  return PolyMatrix::from_columns(f.context(), n, syz);
}

}  // namespace freediv
