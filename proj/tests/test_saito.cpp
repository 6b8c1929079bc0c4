#include "doctest.h"
#include "support.hpp"

#include "freediv/error.hpp"
#include "freediv/graded.hpp"
#include "freediv/saito.hpp"

using namespace testing;

namespace {

VarContext xs(std::size_t n, const std::string& stem = "x") {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return VarContext(names);
}

std::vector<Polynomial> variables(const VarContext& c) {
  std::vector<Polynomial> v;
  for (std::size_t i = 0; i < c.size(); ++i) v.push_back(Polynomial::variable(c, i));
  return v;
}

Polynomial product(const std::vector<Polynomial>& v) {
  Polynomial p = Polynomial::constant(v[0].context(), 1);
  for (const auto& x : v) p *= x;
  return p;
}

}  // namespace

TEST_CASE("normal crossing certificates") {
  for (std::size_t n = 1; n <= 5; ++n) {
    VarContext c = xs(n);
    auto v = variables(c);
    auto r = verify_saito(product(v), PolyMatrix::diagonal(v));
    REQUIRE(std::holds_alternative<SaitoCertificate>(r));
    const auto& cert = std::get<SaitoCertificate>(r);
    CHECK(cert.det_scalar == 1);
    // x_j d_j (x_1...x_n) = x_1...x_n: every quotient is 1
    for (const auto& q : cert.log_quotients) CHECK(q == Polynomial::constant(c, 1));
    CHECK(cert.squarefree_witness.is_constant());
  }
}

TEST_CASE("saito failures") {
  VarContext c = ctx({"x", "y"});
  auto r = verify_saito(P(c, "x^2*y"), PolyMatrix::diagonal(variables(c)));
  REQUIRE(std::holds_alternative<SaitoFailure>(r));
  CHECK(std::get<SaitoFailure>(r).kind == SaitoFailureKind::NotSquarefree);

  auto d = verify_saito(P(c, "x*y*(x+y)"), PolyMatrix::diagonal(variables(c)));
  REQUIRE(std::holds_alternative<SaitoFailure>(d));
  CHECK(std::get<SaitoFailure>(d).kind == SaitoFailureKind::DetMismatch);

  // det matches but the second column y^2 d_y is not tangent to x y - 1... use x*y with (x, y^2)-style column
  PolyMatrix bad = PolyMatrix::from_rows(c, {{P(c, "x"), P(c, "0")}, {P(c, "0"), P(c, "y")}});
  bad.set(0, 1, P(c, "1"));
  bad.set(1, 1, P(c, "y"));
  // det = x y, column 1 is d_x + y d_y: applied to xy gives y + xy, not divisible by xy
  auto nl = verify_saito(P(c, "x*y"), bad);
  REQUIRE(std::holds_alternative<SaitoFailure>(nl));
  CHECK(std::get<SaitoFailure>(nl).kind == SaitoFailureKind::NotLogarithmic);
  CHECK(std::get<SaitoFailure>(nl).column == std::size_t{1});

  CHECK_THROWS_AS(verify_saito(P(c, "x*y"), PolyMatrix(c, 3, 3)), PreconditionError);
  CHECK_THROWS_AS(require_saito(P(c, "x^2*y"), PolyMatrix::diagonal(variables(c)), "test"), VerificationError);
}

TEST_CASE("certificate soundness: re-verification reproduces every field") {
  VarContext c = ctx({"x", "y"});
  // f = x y (x + y) with columns E and x(x+y)... a standard arrangement basis
  Polynomial f = P(c, "x*y*(x+y)");
  PolyMatrix A = PolyMatrix::from_rows(c, {{P(c, "x"), P(c, "x^2")}, {P(c, "y"), P(c, "-y^2")}});
  auto cert = require_saito(f, A, "arrangement");
  auto again = std::get<SaitoCertificate>(verify_saito(cert.divisor, cert.matrix));
  CHECK(again.det_scalar == cert.det_scalar);
  CHECK(again.log_quotients == cert.log_quotients);
  CHECK(cert.det_scalar == -1);
}

TEST_CASE("frame verification") {
  VarContext c = xs(3);
  auto v = variables(c);
  auto fd = FramedDivisor::make(FrameData{v, PolyMatrix::diagonal(v), Weight::standard(3)});
  CHECK(verify_frame(fd).ok);
  CHECK(fd.product() == product(v));

  // one factor x1 x2 x3, but the diagonal columns scale it instead of killing it
  FrameData broken{{product(v)}, PolyMatrix::diagonal(v), std::nullopt};
  auto diag = verify_frame(broken);
  CHECK_FALSE(diag.ok);
  CHECK_FALSE(diag.messages.empty());
  CHECK_THROWS_AS(FramedDivisor::make(broken), VerificationError);
}

TEST_CASE("euler framing") {
  VarContext c = xs(3);
  auto v = variables(c);
  Polynomial f = product(v);
  auto fd = euler_frame(f, Weight::standard(3), PolyMatrix::diagonal(v));
  for (std::size_t i = 0; i < 3; ++i) CHECK(fd.saito()(i, 0) == v[i] * make_rational(1, 3));
  const auto grad = gradient(f);
  for (std::size_t j = 1; j < 3; ++j) {
    Polynomial applied(c);
    for (std::size_t i = 0; i < 3; ++i) applied += grad[i] * fd.saito()(i, j);
    CHECK(applied.is_zero());
  }

  VarContext one = ctx({"x"});
  auto single = euler_frame(P(one, "x"), Weight::standard(1), PolyMatrix::diagonal(variables(one)));
  CHECK(single.saito()(0, 0) == P(one, "x"));

  CHECK_THROWS_AS(euler_frame(f, Weight{{1, -1, 0}}, PolyMatrix::diagonal(v)), PreconditionError);
}

TEST_CASE("hilbert-burch extraction") {
  VarContext c = xs(3);
  auto v = variables(c);
  Polynomial f = product(v);
  auto fd = euler_frame(f, Weight::standard(3), PolyMatrix::diagonal(v));
  HilbertBurch hb = hilbert_burch_from_framed(fd);
  CHECK(hb.scalar == 1);
  CHECK(signed_maximal_minors(hb.matrix) == gradient(f));
  // Euler relation: det(B | w x) = d f for the standard weight
  CHECK(determinant(hb.matrix.with_column_appended(v)) == f * Rational(3) * Rational(1));

  VarContext q = ctx({"x", "y"});
  HilbertBurch quad = normalize_hilbert_burch(P(q, "x^2+y^2"),
                                              PolyMatrix::from_rows(q, {{P(q, "y")}, {P(q, "-x")}}));
  CHECK(signed_maximal_minors(quad.matrix) == gradient(P(q, "x^2+y^2")));

  CHECK_THROWS_AS(normalize_hilbert_burch(P(q, "x*y"), PolyMatrix::from_rows(q, {{P(q, "y")}, {P(q, "x")}})),
                  VerificationError);
}

TEST_CASE("lifting syzygies of (x_i f_i)") {
  VarContext c = ctx({"x", "y", "z"});
  Polynomial cayley = P(c, "x*y+x*z+y*z");
  auto S = xifi_syzygy_candidate(cayley, default_syzygy_bound(cayley));
  REQUIRE(S);
  auto r = saito_from_xifi(cayley, *S);
  REQUIRE(std::holds_alternative<SaitoCertificate>(r));
  CHECK(std::get<SaitoCertificate>(r).divisor == P(c, "x*y*z*(x*y+x*z+y*z)"));

  // every converted column is an exact syzygy of grad g
  Polynomial g = P(c, "x*y*z*(x*y+x*z+y*z)");
  PolyMatrix fields = xifi_syzygies_to_fields(cayley, *S);
  const auto gg = gradient(g);
  for (std::size_t j = 0; j < fields.cols(); ++j) {
    Polynomial sum(c);
    for (std::size_t i = 0; i < 3; ++i) sum += gg[i] * fields(i, j);
    CHECK(sum.is_zero());
  }

  // Fermat quadric: three Koszul syzygies; any two of them fail
  Polynomial fermat = P(c, "x^2+y^2+z^2");
  CHECK_FALSE(xifi_syzygy_candidate(fermat, 4));
  std::vector<Polynomial> gens{P(c, "2*x^2"), P(c, "2*y^2"), P(c, "2*z^2")};
  auto all = minimal_syzygies(gens, 4);
  REQUIRE(all.size() == 3);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a + 1; b < 3; ++b) {
      auto pair = PolyMatrix::from_columns(c, 3, {all[a], all[b]});
      CHECK(std::holds_alternative<SaitoFailure>(saito_from_xifi(fermat, pair)));
    }

  VarContext one = ctx({"x1"});
  auto deg = saito_from_xifi(P(one, "x1"), PolyMatrix(one, 1, 0));
  REQUIRE(std::holds_alternative<SaitoFailure>(deg));
  CHECK(std::get<SaitoFailure>(deg).kind == SaitoFailureKind::NotSquarefree);

  PolyMatrix not_syz = PolyMatrix::from_columns(c, 3, {{P(c, "1"), P(c, "0"), P(c, "0")}, {P(c, "0"), P(c, "1"), P(c, "0")}});
  CHECK_THROWS_AS(saito_from_xifi(cayley, not_syz), PreconditionError);
}
