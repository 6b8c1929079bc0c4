#include "freediv/families.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "freediv/parse.hpp"

namespace freediv {
namespace {

Polynomial var(const VarContext& ctx, std::size_t i) { return Polynomial::variable(ctx, i); }

Polynomial product_of(const std::vector<Polynomial>& fs) {
  if (fs.empty()) throw PreconditionError("empty factor list");
  Polynomial p = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) p *= fs[i];
  return p;
}

Polynomial must_divide(const Polynomial& a, const Polynomial& b, const std::string& what) {
  auto q = divide_exact(a, b);
  if (!q) throw PreconditionError(what);
  return *q;
}

Polynomial monomial_of(const VarContext& ctx, const Exponents& e) { return Polynomial::monomial(ctx, e); }

// Matrix of the binomial construction placed on F's own variables: the x
// columns sit at their own indices, the (beta y, alpha z) column at y, the
// (-F_z, F_y)/X column at z, and every unused variable gets a unit column.
PolyMatrix binomial_matrix(const Polynomial& F, const std::vector<std::size_t>& xs, std::size_t y, std::size_t z,
                           const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                           std::uint32_t alpha, std::uint32_t beta) {
  const VarContext& ctx = F.context();
  const std::size_t n = ctx.size();
  PolyMatrix A(ctx, n, n);
  std::vector<bool> used(n, false);
  Polynomial X = Polynomial::constant(ctx, 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::size_t xi = xs[i];
    used[xi] = true;
    X *= var(ctx, xi);
    A.set(xi, xi, var(ctx, xi));
    const Rational v = make_rational(static_cast<long>(a[i]) - static_cast<long>(b[i]), static_cast<long>(beta));
    A.set(z, xi, var(ctx, z) * v);
  }
  used[y] = used[z] = true;
  A.set(y, y, var(ctx, y) * Rational(beta));
  A.set(z, y, var(ctx, z) * Rational(alpha));
  A.set(y, z, -must_divide(partial_derivative(F, z), X, "binomial: F_z not divisible by the x block"));
  A.set(z, z, must_divide(partial_derivative(F, y), X, "binomial: F_y not divisible by the x block"));
  for (std::size_t i = 0; i < n; ++i)
    if (!used[i]) A.set(i, i, Polynomial::constant(ctx, 1));
  return A;
}

std::vector<Polynomial> unit_vector_field(const Polynomial& f) {
  const VarContext& ctx = f.context();
  const AnnihilatorSpace space = euler_annihilators(f);
  std::vector<Polynomial> out;
  if (space.unit_field) {
    for (std::size_t i = 0; i < f.num_vars(); ++i) out.push_back(var(ctx, i) * space.unit_field->coefficients[i]);
    return out;
  }
  SyzygySearch s = bounded_syzygy_solve(gradient(f), f, default_syzygy_bound(f));
  if (!s.found) throw PreconditionError("f is not in its Jacobian ideal up to the degree bound");
  return s.solutions.front();
}

// Index of a constant nonzero partial. A partial that merely has a nonzero
// constant term puts f outside the singular setting of the necessity argument.
std::optional<std::size_t> smooth_at_origin(const Polynomial& f, const std::vector<Polynomial>& grad) {
  for (std::size_t i = 0; i < grad.size(); ++i)
    if (!grad[i].is_zero() && grad[i].is_constant()) return i;
  for (std::size_t i = 0; i < grad.size(); ++i)
    if (sgn(grad[i].constant_value()) != 0)
      throw PreconditionError("f is smooth at the origin (f_" + f.context().name(i) +
                              " has a constant term); the non-freeness criterion does not apply");
  return std::nullopt;
}

// Columns d_j - (f_j / c) d_i for j != i and (f / c) d_i, where f_i = c.
SaitoCertificate constant_partial_certificate(const Polynomial& f, const std::vector<Polynomial>& grad, std::size_t i) {
  const VarContext& ctx = f.context();
  const std::size_t n = f.num_vars();
  const Rational c = grad[i].constant_value();
  PolyMatrix A(ctx, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) {
      A.set(i, j, f * (1 / c));
    } else {
      A.set(j, j, Polynomial::constant(ctx, 1));
      A.set(i, j, grad[j] * (-1 / c));
    }
  }
  return require_saito(f, A, "smooth at the origin");
}

SaitoCertificate saito_with_unit(const Polynomial& f, const HilbertBurch& hb, const std::string& what) {
  const auto unit = unit_vector_field(f);
  return require_saito(f, hb.matrix.with_column_prepended(unit), what);
}

bool uniform(const Weight& w) {
  return std::adjacent_find(w.entries.begin(), w.entries.end(), std::not_equal_to<>()) == w.entries.end();
}

void check_hilbert_burch(const Polynomial& f, const HilbertBurch& hb) {
  const std::size_t n = f.num_vars();
  if (hb.matrix.rows() != n || hb.matrix.cols() + 1 != n)
    throw PreconditionError("Hilbert-Burch matrix must be n x (n-1)");
  const auto minors = signed_maximal_minors(hb.matrix);
  const auto grad = gradient(f);
  for (std::size_t i = 0; i < n; ++i)
    if (!(minors[i] == grad[i] * hb.scalar))
      throw PreconditionError("Hilbert-Burch minors differ from the scaled gradient at coordinate " +
                              std::to_string(i));
}

std::vector<Polynomial> weighted_vars(const VarContext& ctx, const Weight& w, std::size_t offset, bool weighted) {
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < w.entries.size(); ++i) {
    Polynomial v = var(ctx, offset + i);
    out.push_back(weighted ? v * Rational(w.entries[i]) : v);
  }
  return out;
}

std::vector<std::size_t> direction(std::size_t offset, std::size_t n) {
  std::vector<std::size_t> d(n);
  std::iota(d.begin(), d.end(), offset);
  return d;
}

}  // namespace

FactoredDivisor make_factored(std::vector<Polynomial> factors, const PolyMatrix& matrix, const std::string& what) {
  for (auto& f : factors) f = f.embed(matrix.context());
  const Polynomial p = product_of(factors);
  return FactoredDivisor{std::move(factors), require_saito(p, matrix, what)};
}

FactoredDivisor to_factored(const FramedDivisor& fd) { return FactoredDivisor{fd.factors(), fd.certificate()}; }

// ------------------------------------------------------------------ binomials

VarContext binomial_context(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  names.push_back("y");
  names.push_back("z");
  return VarContext(std::move(names));
}

namespace {

void check_spec(const BinomialSpec& s) {
  if (s.a.size() != s.n || s.b.size() != s.n) throw PreconditionError("binomial: exponent vectors must have length n");
  for (std::size_t i = 0; i < s.n; ++i)
    if (std::min(s.a[i], s.b[i]) != 0) throw PreconditionError("binomial: min(a_i, b_i) must be 0");
  if (s.alpha == 0 || s.beta == 0) throw PreconditionError("binomial: alpha and beta must be positive");
  if (s.u > 1 || s.t > 1) throw PreconditionError("binomial: u and t must be 0 or 1");
}

}  // namespace

Polynomial binomial_polynomial(const BinomialSpec& s) {
  check_spec(s);
  const VarContext ctx = binomial_context(s.n);
  Exponents m(s.n + 2, 0), nn(s.n + 2, 0), l(s.n + 2, 0);
  for (std::size_t i = 0; i < s.n; ++i) {
    m[i] = s.a[i];
    nn[i] = s.b[i];
    l[i] = 1;
  }
  m[s.n] = s.alpha;
  nn[s.n + 1] = s.beta;
  l[s.n] = s.u;
  l[s.n + 1] = s.t;
  return monomial_of(ctx, l) * (monomial_of(ctx, m) + monomial_of(ctx, nn));
}

SaitoCertificate binomial_divisor(const BinomialSpec& s) {
  const Polynomial F = binomial_polynomial(s);
  std::vector<std::size_t> xs(s.n);
  std::iota(xs.begin(), xs.end(), std::size_t{0});
  PolyMatrix A = binomial_matrix(F, xs, s.n, s.n + 1, s.a, s.b, s.alpha, s.beta);
  SaitoCertificate cert = require_saito(F, A, "binomial_divisor");
  const Rational expected = Rational(s.beta * s.alpha + s.u * s.beta + s.t * s.alpha);
  if (cert.det_scalar != expected)
    throw CrossCheckError("binomial_divisor: det scalar " + cert.det_scalar.get_str() + ", expected " +
                          expected.get_str());
  return cert;
}

const char* to_string(BinomialVerdict v) {
  switch (v) {
    case BinomialVerdict::Free: return "free";
    case BinomialVerdict::NotFree: return "not_free";
    case BinomialVerdict::Unknown: return "unknown";
  }
  return "?";
}

BinomialClassification is_free_binomial(const Polynomial& F) {
  if (F.size() != 2) throw PreconditionError("is_free_binomial: expected exactly two terms");
  const std::size_t n = F.num_vars();
  auto it = F.terms().begin();
  const auto& [e1, c1] = *it++;
  const auto& [e2, c2] = *it;

  BinomialClassification out;
  BinomialShape& sh = out.shape;
  sh.L.assign(n, 0);
  sh.M = e1;
  sh.N = e2;
  for (std::size_t i = 0; i < n; ++i) {
    sh.L[i] = std::min(e1[i], e2[i]);
    sh.M[i] -= sh.L[i];
    sh.N[i] -= sh.L[i];
    if (sh.L[i] > 1) throw PreconditionError("is_free_binomial: not squarefree (repeated variable " + F.context().name(i) + ")");
  }
  sh.coeff_m = c1;
  sh.coeff_n = c2;
  if (!is_squarefree(F)) throw PreconditionError("is_free_binomial: not squarefree");

  const auto deg_m = total_degree(sh.M), deg_n = total_degree(sh.N);
  out.homogeneous = deg_m == deg_n;
  if (deg_m == 0 || deg_n == 0) {
    out.reason = "one binomial term is a unit; outside the classified shape";
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (sh.M[i] > 0 && sh.L[i] == 0) out.missing_m.push_back(i);
    if (sh.N[i] > 0 && sh.L[i] == 0) out.missing_n.push_back(i);
  }
  if (out.missing_m.size() > 1 || out.missing_n.size() > 1) {
    const std::string which = out.missing_m.size() > 1 ? "first" : "second";
    if (out.homogeneous) {
      out.verdict = BinomialVerdict::NotFree;
      out.reason = "homogeneous binomial with two variables of the " + which + " term missing from the monomial factor";
    } else {
      out.reason = "sufficient conditions fail, and necessity is only known for homogeneous binomials";
    }
    return out;
  }

  auto first_var = [n](const Exponents& e) {
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] > 0) return i;
    return n;
  };
  const std::size_t y = out.missing_m.empty() ? first_var(sh.M) : out.missing_m.front();
  const std::size_t z = out.missing_n.empty() ? first_var(sh.N) : out.missing_n.front();

  BinomialSpec spec;
  std::vector<std::size_t> xs;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == y || i == z) continue;
    if (sh.L[i] + sh.M[i] + sh.N[i] == 0) continue;
    xs.push_back(i);
    spec.a.push_back(sh.M[i]);
    spec.b.push_back(sh.N[i]);
  }
  spec.n = xs.size();
  spec.alpha = sh.M[y];
  spec.beta = sh.N[z];
  spec.u = sh.L[y];
  spec.t = sh.L[z];

  PolyMatrix A = binomial_matrix(F, xs, y, z, spec.a, spec.b, spec.alpha, spec.beta);
  out.certificate = require_saito(F, A, "is_free_binomial");
  out.normal_form = spec;
  out.verdict = BinomialVerdict::Free;
  out.reason = "at most one variable of each term is missing from the monomial factor";
  return out;
}

// ----------------------------------------------------------- three variables

const char* to_string(Euler3Verdict v) {
  switch (v) {
    case Euler3Verdict::Free: return "free";
    case Euler3Verdict::NotFree: return "not_free";
    case Euler3Verdict::Suspension: return "suspension";
  }
  return "?";
}

Euler3Result euler3_divisor(const Polynomial& f, const EulerField& e) {
  if (f.num_vars() != 3 || e.coefficients.size() != 3)
    throw PreconditionError("euler3_divisor needs three variables");
  if (e.is_zero()) throw PreconditionError("euler3_divisor: zero Euler field");
  if (!euler_apply(f, e).is_zero()) throw PreconditionError("euler3_divisor: the Euler field does not annihilate f");
  const SquarefreeReport sq = squarefree_report(f);
  if (!sq.squarefree) throw PreconditionError("euler3_divisor: f is not squarefree, gcd " + to_string(sq.witness));

  const VarContext& ctx = f.context();
  const auto& c = e.coefficients;
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < 3; ++i)
    if (c[i] == 0) zeros.push_back(i);

  Euler3Result out;
  if (zeros.size() == 2) {
    out.verdict = Euler3Verdict::Suspension;
    std::size_t live = 0;
    while (c[live] == 0) ++live;
    out.reason = "f does not involve " + ctx.name(live) + "; it is a suspended plane curve";
    // A weighted homogeneous plane curve also gets an explicit certificate.
    const AnnihilatorSpace space = euler_annihilators(f);
    if (space.unit_field) {
      const std::size_t p = zeros[0], q = zeros[1];
      PolyMatrix A(ctx, 3, 3);
      A.set(p, p, var(ctx, p) * space.unit_field->coefficients[p]);
      A.set(q, p, var(ctx, q) * space.unit_field->coefficients[q]);
      A.set(p, q, -partial_derivative(f, q));
      A.set(q, q, partial_derivative(f, p));
      A.set(live, live, Polynomial::constant(ctx, 1));
      out.certificate = require_saito(f, A, "suspended plane curve");
    }
    return out;
  }

  const auto grad = gradient(f);
  PolyMatrix B(ctx, 3, 2);
  for (std::size_t i = 0; i < 3; ++i) B.set(i, 0, var(ctx, i) * c[i]);

  if (zeros.empty()) {
    const Rational a = c[0], b = c[1], cc = c[2];
    const auto second = [&](std::size_t i, std::size_t j) {
      return deg_shift_inverse(partial_derivative(grad[i], j), 2);
    };
    B.set(0, 1, second(1, 2) * (1 / cc - 1 / b));
    B.set(1, 1, second(0, 2) * (1 / a - 1 / cc));
    B.set(2, 1, second(0, 1) * (1 / b - 1 / a));
    out.reason = "all Euler coefficients nonzero";
  } else {
    const std::size_t x = zeros[0];
    const std::size_t y = x == 0 ? 1 : 0;
    const std::size_t z = x == 2 ? 1 : 2;
    const Polynomial& fx = grad[x];
    Polynomial g(ctx), h(ctx);
    Exponents ey(3, 0), ez(3, 0);
    ey[y] = 1;
    ez[z] = 1;
    for (const auto& [ex, cf] : fx.terms()) {
      Exponents r = ex;
      if (ex[y] > 0) {
        --r[y];
        g.add_term(r, cf);
      } else if (ex[z] > 0) {
        --r[z];
        h.add_term(r, cf);
      } else {
        unit_vector_field(f);  // throws unless f lies in its Jacobian ideal
        if (auto smooth = smooth_at_origin(f, grad)) {
          out.reason = "f is smooth at the origin: f_" + ctx.name(*smooth) + " is a nonzero constant";
          out.certificate = constant_partial_certificate(f, grad, *smooth);
          return out;
        }
        out.verdict = Euler3Verdict::NotFree;
        out.reason = "f_" + ctx.name(x) + " has the term " + to_string(Polynomial::monomial(ctx, ex, cf)) +
                     " outside (" + ctx.name(y) + ", " + ctx.name(z) + ")";
        return out;
      }
    }
    const Rational b = c[y], cc = c[z];
    const Polynomial fy_cz = must_divide(grad[y], var(ctx, z) * cc, "euler3_divisor: f_y not divisible by z");
    B.set(x, 1, fy_cz);
    B.set(y, 1, h * (-1 / cc));
    B.set(z, 1, g * (1 / b));
    out.reason = "f_" + ctx.name(x) + " lies in (" + ctx.name(y) + ", " + ctx.name(z) + ")";
  }
  out.hilbert_burch = normalize_hilbert_burch(f, B);
  out.certificate = saito_with_unit(f, *out.hilbert_burch, "euler3_divisor");
  out.verdict = Euler3Verdict::Free;
  return out;
}

ConeFamilyResult cone_family(const std::vector<std::uint32_t>& gamma, std::uint32_t a, std::uint32_t b,
                             std::uint32_t c, const std::vector<Rational>& alphas, const VarContext& ctx) {
  if (ctx.size() != 3) throw PreconditionError("cone_family needs three variables");
  if (gamma.size() != 3 || std::any_of(gamma.begin(), gamma.end(), [](auto g) { return g > 1; }))
    throw PreconditionError("cone_family: gamma entries must be 0 or 1");
  if (a == 0 || b == 0 || c == 0) throw PreconditionError("cone_family: a, b, c must be positive");
  if (alphas.empty()) throw PreconditionError("cone_family: no plane factors");
  std::set<Rational> seen;
  for (const auto& al : alphas) {
    if (al == 0) throw PreconditionError("cone_family: alpha_i must be nonzero");
    if (!seen.insert(al).second) throw PreconditionError("cone_family: repeated alpha_i gives a non-reduced divisor");
  }

  const Exponents prefix{gamma[0], gamma[1], gamma[2]};
  Polynomial f = Polynomial::monomial(ctx, prefix);
  for (const auto& al : alphas)
    f *= Polynomial::monomial(ctx, {a, 0, 0}) - Polynomial::monomial(ctx, {0, b, c}, al);

  const Weight w{{static_cast<std::int64_t>(b), static_cast<std::int64_t>(a), 0}};
  const Weight v{{0, static_cast<std::int64_t>(c), -static_cast<std::int64_t>(b)}};
  EulerField field = two_weight_annihilator(f, w, v);
  Euler3Result r = euler3_divisor(f, field);

  // x - alpha y^b z^c alone is smooth, hence free, outside the family's dichotomy
  const bool smooth = a == 1 && alphas.size() == 1 && gamma[0] + gamma[1] + gamma[2] == 0;
  const bool expect_free = gamma[1] + gamma[2] > 0 || smooth;
  if (expect_free != (r.verdict == Euler3Verdict::Free))
    throw CrossCheckError(std::string("cone_family: constructive outcome ") + to_string(r.verdict) +
                          " contradicts the expected verdict");
  return {std::move(f), std::move(field), std::move(r)};
}

// ---------------------------------------------------------------- triangular

FactoredDivisor plane_curve_seed(const Polynomial& f, const Weight& w) {
  if (f.num_vars() != 2 || w.entries.size() != 2) throw PreconditionError("plane_curve_seed needs two variables");
  auto d = weighted_degree(f, w);
  if (!d || *d == 0) throw PreconditionError("plane_curve_seed: f must be weighted homogeneous of nonzero degree");
  const VarContext& ctx = f.context();
  const Rational inv(1, *d);
  PolyMatrix A(ctx, 2, 2);
  A.set(0, 0, var(ctx, 0) * Rational(w.entries[0]));
  A.set(1, 0, var(ctx, 1) * Rational(w.entries[1]));
  A.set(0, 1, -partial_derivative(f, 1) * inv);
  A.set(1, 1, partial_derivative(f, 0) * inv);
  return make_factored({f}, A, "plane_curve_seed");
}

std::vector<Polynomial> column_multipliers(const FactoredDivisor& g, const Polynomial& factor) {
  std::vector<Polynomial> out;
  const PolyMatrix& A = g.matrix();
  for (std::size_t j = 0; j < A.cols(); ++j) {
    const auto col = A.column(j);
    auto q = divide_exact(apply_field(col, factor), factor);
    if (!q) throw PreconditionError("column " + std::to_string(j) + " is not logarithmic for " + to_string(factor));
    out.push_back(std::move(*q));
  }
  return out;
}

FactoredDivisor triangular_extend(const FactoredDivisor& g, const TriangularStep& step) {
  if (step.a == 0 || step.b == 0) throw PreconditionError("triangular step needs a, b >= 1");
  if (step.alpha == 0) throw PreconditionError("triangular step needs alpha != 0");
  const VarContext& old = g.product().context();
  const VarContext ctx = old.extended(std::vector<std::string>{step.new_var});
  const std::size_t n = old.size();
  const Polynomial& prev = g.factors.back();
  const auto mult = column_multipliers(g, prev);

  const Polynomial xi = var(ctx, n);
  const Polynomial Fi = xi.pow(step.a) * step.alpha + prev.embed(ctx).pow(step.b) * step.beta;
  PolyMatrix A(ctx, n + 1, n + 1);
  const PolyMatrix& old_matrix = g.matrix();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) A.set(i, j, old_matrix(i, j).embed(ctx));
    A.set(n, j, mult[j].embed(ctx) * xi * make_rational(step.b, step.a));
  }
  A.set(n, n, Fi);

  std::vector<Polynomial> factors = g.factors;
  factors.push_back(Fi);
  return make_factored(std::move(factors), A, "triangular_extend");
}

FactoredDivisor brieskorn_chain(const std::vector<std::uint32_t>& t) {
  if (t.size() < 2) throw PreconditionError("brieskorn_chain needs at least two exponents");
  if (std::find(t.begin(), t.end(), 0u) != t.end()) throw PreconditionError("brieskorn exponents must be positive");
  const VarContext seed_ctx({"x1", "x2"});
  const Polynomial G2 = var(seed_ctx, 0).pow(t[0]) + var(seed_ctx, 1).pow(t[1]);
  const std::int64_t L = std::lcm<std::int64_t>(t[0], t[1]);
  FactoredDivisor g = plane_curve_seed(G2, Weight{{L / t[0], L / t[1]}});
  for (std::size_t j = 2; j < t.size(); ++j)
    g = triangular_extend(g, TriangularStep{t[j], 1, 1, 1, "x" + std::to_string(j + 1)});
  return g;
}

FramedDivisor frame_single(const FactoredDivisor& g, const Weight& w) {
  if (g.factors.size() != 1) throw PreconditionError("frame_single needs a single factor");
  return euler_frame(g.product(), w, g.matrix());
}

// --------------------------------------------------------------- chain rule

FramedDivisor normal_crossing_frame(const VarContext& ctx) {
  std::vector<Polynomial> xs;
  for (std::size_t i = 0; i < ctx.size(); ++i) xs.push_back(var(ctx, i));
  return FramedDivisor::make(FrameData{xs, PolyMatrix::diagonal(xs), Weight::standard(ctx.size())});
}

CommonFactorError::CommonFactorError(Polynomial common, Polynomial substituted)
    : PreconditionError("common factor " + to_string(common) + " between f and H_1(f_1, ..., f_k)"),
      common_(std::move(common)),
      substituted_(std::move(substituted)) {}

ComposeCheck compose_precheck(const std::vector<Polynomial>& factors, const Polynomial& H) {
  const std::size_t k = factors.size();
  if (H.num_vars() != k) throw PreconditionError("H must have one variable per factor");
  const VarContext& hctx = H.context();
  Polynomial ys = Polynomial::constant(hctx, 1);
  for (std::size_t r = 0; r < k; ++r) ys *= var(hctx, r);
  const Polynomial H1 = must_divide(H, ys, "H is not divisible by y_1...y_k");

  ComposeCheck out{substitute(H, factors), substitute(H1, factors), Polynomial::constant(factors.front().context(), 1)};
  if (!out.h1_substituted.is_constant())
    for (const auto& fi : factors) out.common *= gcd(fi, out.h1_substituted);
  out.common = normalize(out.common);
  if (!out.common.is_constant()) throw CommonFactorError(out.common, out.substituted);
  return out;
}

SaitoCertificate compose(const FramedDivisor& fd, const SaitoCertificate& H) {
  const std::size_t k = fd.factors().size();
  const std::size_t n = fd.context().size();
  if (H.matrix.rows() != k) throw PreconditionError("H must live in one variable per factor");
  if (fd.saito().cols() < k) throw PreconditionError("frame has fewer Euler columns than factors");
  ComposeCheck check = compose_precheck(fd.factors(), H.divisor);

  const VarContext& hctx = H.divisor.context();
  PolyMatrix Bt = PolyMatrix::identity(fd.context(), n);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t s = 0; s < k; ++s) {
      const Polynomial b = must_divide(H.matrix(r, s), var(hctx, r),
                                       "row " + std::to_string(r) + " of H's Saito matrix is not divisible by y_r");
      Bt.set(r, s, substitute(b, fd.factors()));
    }
  return require_saito(check.substituted, fd.saito() * Bt, "compose");
}

FramedDivisor merge_factors(const FramedDivisor& fd) {
  const std::size_t k = fd.factors().size();
  if (k == 1) return fd;
  const PolyMatrix& C = fd.saito();
  const std::size_t n = C.rows();
  std::vector<std::vector<Polynomial>> cols;
  std::vector<Polynomial> sum = C.column(0);
  for (std::size_t j = 1; j < k; ++j) {
    const auto col = C.column(j);
    for (std::size_t i = 0; i < n; ++i) sum[i] += col[i];
  }
  // each E_j acts as the identity on the product
  for (auto& e : sum) e *= make_rational(1, static_cast<long>(k));
  cols.push_back(std::move(sum));
  const auto e1 = C.column(0);
  for (std::size_t j = 1; j < k; ++j) {
    auto col = C.column(j);
    for (std::size_t i = 0; i < n; ++i) col[i] -= e1[i];
    cols.push_back(std::move(col));
  }
  for (std::size_t j = k; j < C.cols(); ++j) cols.push_back(C.column(j));
  return FramedDivisor::make(FrameData{{fd.product()}, PolyMatrix::from_columns(fd.context(), n, cols), fd.weight()});
}

SaitoCertificate sum_compose_template(const VarContext& ctx) {
  if (ctx.size() != 2) throw PreconditionError("the sum template has two variables");
  const Polynomial y1 = var(ctx, 0), y2 = var(ctx, 1);
  const PolyMatrix A = PolyMatrix::from_rows(ctx, {{y1, y1 * y1}, {y2, -(y2 * y2)}});
  return require_saito(y1 * y2 * (y1 + y2), A, "sum template");
}

SaitoCertificate sum_compose(const FramedDivisor& f, const FramedDivisor& g) {
  const FramedDivisor mf = merge_factors(f), mg = merge_factors(g);
  const VarContext ctx = mf.context().merged(mg.context());
  const std::size_t nf = mf.context().size(), ng = mg.context().size();
  if (ctx.size() != nf + ng) throw PreconditionError("sum_compose needs disjoint variable sets");

  const PolyMatrix Cf = mf.saito().embed(ctx), Cg = mg.saito().embed(ctx);
  const Polynomial zero(ctx);
  auto lift = [&](const PolyMatrix& M, std::size_t j, std::size_t offset, std::size_t len) {
    std::vector<Polynomial> col(nf + ng, zero);
    for (std::size_t i = 0; i < len; ++i) col[offset + i] = M(i, j);
    return col;
  };
  std::vector<std::vector<Polynomial>> cols{lift(Cf, 0, 0, nf), lift(Cg, 0, nf, ng)};
  for (std::size_t j = 1; j < nf; ++j) cols.push_back(lift(Cf, j, 0, nf));
  for (std::size_t j = 1; j < ng; ++j) cols.push_back(lift(Cg, j, nf, ng));

  const FramedDivisor both = FramedDivisor::make(FrameData{
      {mf.product().embed(ctx), mg.product().embed(ctx)}, PolyMatrix::from_columns(ctx, nf + ng, cols), std::nullopt});
  return compose(both, sum_compose_template(VarContext({"s1", "s2"})));
}

// ------------------------------------------------------------ tangent bundle

HilbertBurch hilbert_burch_of(const SaitoCertificate& cert, const Weight& w) {
  return hilbert_burch_from_framed(euler_frame(cert.divisor, w, cert.matrix));
}

SaitoCertificate tangent_extend(const Polynomial& f, const HilbertBurch& hb, const Weight& w,
                                const std::vector<std::string>& fresh) {
  const std::size_t n = f.num_vars();
  if (fresh.size() != n) throw PreconditionError("tangent_extend needs one fresh name per variable");
  if (w.entries.size() != n) throw PreconditionError("weight length differs from the context");
  auto d = weighted_degree(f, w);
  if (!d || *d == 0) throw PreconditionError("tangent_extend: f must be weighted homogeneous of nonzero degree");
  check_hilbert_burch(f, hb);

  const VarContext ctx = f.context().extended(fresh);
  const bool flat = uniform(w);
  const PolyMatrix B = hb.matrix.embed(ctx);
  const PolyMatrix Bs = star_entrywise_into(hb.matrix, ctx, direction(n, n));
  const auto wx = weighted_vars(ctx, w, 0, true);
  const auto wy = weighted_vars(ctx, w, n, true);
  const auto y = weighted_vars(ctx, w, n, false);
  const PolyMatrix zero_col(ctx, n, 1);

  const std::vector<std::size_t> sizes{n - 1, 1, n - 1, 1};
  const std::vector<std::size_t> heights{n, n};
  BlockGrid grid{{B, column_matrix(wx), std::nullopt, std::nullopt},
                 {Bs, flat ? zero_col : column_matrix(wy), B, column_matrix(flat ? wy : y)}};
  const PolyMatrix A = block_assemble(ctx, grid, heights, sizes);
  const Polynomial F = f.embed(ctx) * star_into(f, ctx, direction(n, n));
  return require_saito(F, A, "tangent_extend");
}

SaitoCertificate multi_jet_extend(const Polynomial& f, const HilbertBurch& hb, const Weight& w,
                                  const std::vector<std::vector<std::string>>& fresh) {
  const std::size_t n = f.num_vars();
  const std::size_t m = fresh.size();
  if (m == 0) throw PreconditionError("multi_jet_extend needs m >= 1");
  if (w.entries.size() != n) throw PreconditionError("weight length differs from the context");
  auto d = weighted_degree(f, w);
  if (!d || *d == 0) throw PreconditionError("multi_jet_extend: f must be weighted homogeneous of nonzero degree");
  check_hilbert_burch(f, hb);

  std::vector<std::string> names;
  for (const auto& group : fresh) {
    if (group.size() != n) throw PreconditionError("each jet group needs one name per variable");
    names.insert(names.end(), group.begin(), group.end());
  }
  const VarContext ctx = f.context().extended(names);
  const bool flat = uniform(w);
  const PolyMatrix B = hb.matrix.embed(ctx);
  const PolyMatrix zero_col(ctx, n, 1);

  BlockGrid grid(m + 1, std::vector<std::optional<PolyMatrix>>(2 * (m + 1)));
  grid[0][0] = B;
  grid[0][1] = column_matrix(weighted_vars(ctx, w, 0, true));
  Polynomial F = f.embed(ctx);
  for (std::size_t j = 1; j <= m; ++j) {
    const auto dir = direction(j * n, n);
    const auto wy = weighted_vars(ctx, w, j * n, true);
    grid[j][0] = star_entrywise_into(hb.matrix, ctx, dir);
    grid[j][1] = flat ? zero_col : column_matrix(wy);
    grid[j][2 * j] = B;
    grid[j][2 * j + 1] = column_matrix(flat ? wy : weighted_vars(ctx, w, j * n, false));
    F *= star_into(f, ctx, dir);
  }
  std::vector<std::size_t> heights(m + 1, n), widths;
  for (std::size_t j = 0; j <= m; ++j) {
    widths.push_back(n - 1);
    widths.push_back(1);
  }
  return require_saito(F, block_assemble(ctx, grid, heights, widths), "multi_jet_extend");
}

std::vector<SaitoCertificate> iterate_tangent(const SaitoCertificate& seed, const Weight& w,
                                              const std::vector<std::vector<std::string>>& fresh) {
  std::vector<SaitoCertificate> out{seed};
  Weight wi = w;
  const std::uint64_t deg0 = seed.divisor.total_degree();
  const std::size_t n0 = seed.divisor.num_vars();
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    const SaitoCertificate& cur = out.back();
    const HilbertBurch hb = hilbert_burch_of(cur, wi);
    SaitoCertificate next = tangent_extend(cur.divisor, hb, wi, fresh[i]);
    const std::size_t step = i + 1;
    if (next.divisor.num_vars() != (n0 << step) || next.divisor.total_degree() != (deg0 << step))
      throw CrossCheckError("iterate_tangent: step " + std::to_string(step) + " has " +
                            std::to_string(next.divisor.num_vars()) + " variables and degree " +
                            std::to_string(next.divisor.total_degree()));
    std::vector<std::int64_t> doubled = wi.entries;
    doubled.insert(doubled.end(), wi.entries.begin(), wi.entries.end());
    wi = Weight{doubled};
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<std::string> indexed_names(const std::string& prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

bool is_linear(const PolyMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && m(i, j).total_degree() > 1) return false;
  return true;
}

}  // namespace freediv
