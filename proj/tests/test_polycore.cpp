#include "doctest.h"
#include "support.hpp"

#include "freediv/error.hpp"

using namespace testing;

namespace {
const VarContext XYZ = ctx({"x", "y", "z"});
Polynomial p(const std::string& s) { return P(XYZ, s); }
}  // namespace

TEST_CASE("ring arithmetic") {
  CHECK(p("x+y") + p("x-y") == p("2*x"));
  CHECK(p("x-y") * p("x+y") == p("x^2-y^2"));
  CHECK((p("x^3*y+7") * Polynomial(XYZ)).is_zero());
  CHECK(p("(x+1)^3") == p("x^3+3*x^2+3*x+1"));
  CHECK_THROWS_AS(p("x") + P(ctx({"x", "w"}), "x"), PreconditionError);
}

TEST_CASE("term count bound for products") {
  Gen g(kSeed + 1);
  for (int i = 0; i < 200; ++i) {
    Polynomial a = g.poly(XYZ), b = g.poly(XYZ);
    CHECK((a * b).size() <= a.size() * b.size());
  }
}

TEST_CASE("derivatives") {
  CHECK(partial_derivative(p("x^2*y+y^3"), 0) == p("2*x*y"));
  CHECK(partial_derivative(p("x^2*y"), 2).is_zero());
  CHECK_THROWS_AS(partial_derivative(p("x"), 3), PreconditionError);

  // term-by-term oracle: d/dv of c*x^e is c*e_v*x^(e - 1_v)
  auto grad = gradient(p("x^2*y-y^2*z"));
  REQUIRE(grad.size() == 3);
  CHECK(grad[0] == p("2*x*y"));
  CHECK(grad[1] == p("x^2-2*y*z"));
  CHECK(grad[2] == p("-y^2"));
}

TEST_CASE("weighted degree and euler operator") {
  CHECK(weighted_degree(p("x^2*y-y^2*z"), Weight::standard(3)) == 3);
  CHECK_FALSE(weighted_degree(P(ctx({"x", "y"}), "x+y^2"), Weight::standard(2)).has_value());
  CHECK_THROWS_AS(weighted_degree(Polynomial(XYZ), Weight::standard(3)), PreconditionError);
  CHECK_THROWS_AS(Polynomial(XYZ).total_degree(), PreconditionError);

  EulerField a{{1, -2, 4}};
  CHECK(euler_apply(p("x^2*y-y^2*z"), a).is_zero());
  CHECK(euler_apply(p("x^2*y"), EulerField{{1, 1, 0}}) == p("3*x^2*y"));
}

TEST_CASE("substitution") {
  const VarContext Y = ctx({"y1", "y2"});
  const VarContext XY = ctx({"x", "y"});
  std::vector<Polynomial> gs{P(XY, "x"), P(XY, "y")};
  CHECK(substitute(P(Y, "y1*y2*(y1+y2)"), gs) == P(XY, "x*y*(x+y)"));
  std::vector<Polynomial> cancel{P(XY, "x^2"), P(XY, "-x^2")};
  CHECK(substitute(P(Y, "y1+y2"), cancel).is_zero());
  std::vector<Polynomial> short_list{P(XY, "x")};
  CHECK_THROWS_AS(substitute(P(Y, "y1"), short_list), PreconditionError);
}

TEST_CASE("exact division") {
  auto q = divide_exact(p("x^2-y^2"), p("x-y"));
  REQUIRE(q);
  CHECK(*q == p("x+y"));
  CHECK_FALSE(divide_exact(p("x^2+y^2"), p("x-y")));
  CHECK_THROWS_AS(divide_exact(p("x"), Polynomial(XYZ)), PreconditionError);

  // det A = (beta*alpha + u*beta + t*alpha) F for a binomial F
  const VarContext B = ctx({"x", "y", "z"});
  Polynomial F = P(B, "x*(x^2*y+z^3)");
  auto r = divide_exact(Polynomial::constant(B, 3) * F, F);
  REQUIRE(r);
  CHECK(*r == Polynomial::constant(B, 3));
}

TEST_CASE("gcd") {
  Polynomial g = gcd(p("x^2-y^2"), p("x^2-x*y"));
  CHECK(g == p("x-y"));
  // oracle: quotients coprime
  auto q1 = divide_exact(p("x^2-y^2"), g), q2 = divide_exact(p("x^2-x*y"), g);
  REQUIRE(q1);
  REQUIRE(q2);
  CHECK(gcd(*q1, *q2).is_constant());

  CHECK(gcd(p("-2*x*y+4*z"), Polynomial(XYZ)) == p("x*y-2*z"));
  CHECK(gcd(p("x^3"), p("y^3")) == Polynomial::constant(XYZ, 1));
  CHECK_THROWS_AS(gcd(Polynomial(XYZ), Polynomial(XYZ)), PreconditionError);

  CHECK(gcd(p("(x+y+z)^2*(x-z)"), p("(x+y+z)*(y^2-3*z)")) == p("x+y+z"));
  CHECK(gcd(p("(x^2*y+z^3)^2*(x-1)"), p("(x^2*y+z^3)*(x-1)^2*y")) == p("x^3*y-x^2*y+x*z^3-z^3"));
}

TEST_CASE("squarefree") {
  CHECK_FALSE(is_squarefree(p("x^2*y")));
  CHECK(is_squarefree(p("x*y*(x+y)")));
  CHECK_THROWS_AS(is_squarefree(Polynomial(XYZ)), PreconditionError);
  CHECK(squarefree_report(p("x*(y+z)^2")).witness == p("y+z"));
}

TEST_CASE("shifted degree inverse") {
  CHECK(deg_shift_inverse(p("x^2*y"), 2) == p("1/5*x^2*y"));
  CHECK(deg_shift_inverse(p("-2*y"), 2) == p("-2/3*y"));
  const std::size_t only_y[] = {1};
  CHECK(deg_shift_inverse(p("x^2*y"), 1, only_y) == p("1/2*x^2*y"));
}

TEST_CASE("star derivation") {
  const VarContext XY = ctx({"x", "y"});
  const std::string uv[] = {"u", "v"};
  Polynomial s = star(P(XY, "x*y"), uv);
  CHECK(s == P(s.context(), "y*u+x*v"));

  const VarContext X3 = ctx({"x1", "x2", "x3"});
  const std::string ys[] = {"y1", "y2", "y3"};
  Polynomial s3 = star(P(X3, "x1*x2*x3"), ys);
  CHECK(s3 == P(s3.context(), "x2*x3*y1+x1*x3*y2+x1*x2*y3"));

  CHECK(star(Polynomial::constant(XY, 7), uv).is_zero());
  const std::string clash[] = {"x", "w"};
  CHECK_THROWS_AS(star(P(XY, "x"), clash), PreconditionError);
}

TEST_CASE("parser") {
  const VarContext F = ctx({"x", "y", "z"});
  Polynomial h = P(F, "y*z*(x^2-5*y*z)*(x^2-1/2*y*z)*(x^2+y*z)");
  CHECK(h == P(F, "y*z*(x^2-5*y*z)") * P(F, "(x^2-1/2*y*z)") * P(F, "x^2+y*z"));
  CHECK(P(F, " x^2 - y^2 ") == P(F, "x*x-y*y"));
  CHECK(to_string(P(F, "x^2 - y^2")) == "x^2 - y^2");
  CHECK(to_string(Polynomial(F)) == "0");
  try {
    P(F, "x**2");
    FAIL("accepted x**2");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_AS(P(F, "2x"), ParseError);
  CHECK_THROWS_AS(P(F, "w+1"), ParseError);
  CHECK_THROWS_AS(P(F, "x^-1"), ParseError);
  CHECK_THROWS_AS(P(F, "(x+1"), ParseError);
  CHECK_THROWS_AS(P(F, "1/0"), ParseError);

  Polynomial inferred = parse_polynomial("b*a+c");
  CHECK(inferred.context().names() == std::vector<std::string>{"b", "a", "c"});
}

// ---------------------------------------------------------------- properties

TEST_CASE("property: ring axioms") {
  Gen g;
  for (int i = 0; i < 1000; ++i) {
    Polynomial a = g.poly(XYZ), b = g.poly(XYZ), c = g.poly(XYZ);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a * b == b * a);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a - a == Polynomial(XYZ));
  }
}

TEST_CASE("property: parse-print round trip") {
  Gen g(kSeed + 2);
  for (int i = 0; i < 1000; ++i) {
    Polynomial a = g.poly(XYZ);
    REQUIRE(P(XYZ, to_string(a)) == a);
  }
}

TEST_CASE("property: exact division round trip") {
  Gen g(kSeed + 3);
  for (int i = 0; i < 1000; ++i) {
    Polynomial f = g.nonzero_poly(XYZ), q = g.poly(XYZ);
    auto r = divide_exact(f * q, f);
    REQUIRE(r);
    REQUIRE(*r == q);
  }
}

TEST_CASE("property: gcd divides both, cofactors coprime") {
  Gen g(kSeed + 4);
  for (int i = 0; i < 1000; ++i) {
    Polynomial common = g.nonzero_poly(XYZ, 3, 2);
    Polynomial a = g.nonzero_poly(XYZ, 3, 2) * common, b = g.nonzero_poly(XYZ, 3, 2) * common;
    Polynomial d = gcd(a, b);
    auto qa = divide_exact(a, d), qb = divide_exact(b, d);
    REQUIRE(qa);
    REQUIRE(qb);
    REQUIRE(gcd(*qa, *qb).is_constant());
    REQUIRE(divide_exact(d, normalize(common)));
  }
}

TEST_CASE("property: star is a derivation") {
  Gen g(kSeed + 5);
  const std::string fresh[] = {"u", "v", "w"};
  for (int i = 0; i < 1000; ++i) {
    Polynomial a = g.poly(XYZ), b = g.poly(XYZ);
    Polynomial sa = star(a, fresh), sb = star(b, fresh);
    const VarContext& big = sa.context();
    REQUIRE(star(a * b, fresh) == sa * b.embed(big) + a.embed(big) * sb);
  }
}

TEST_CASE("property: euler identity on weighted homogeneous input") {
  Gen g(kSeed + 6);
  for (int i = 0; i < 1000; ++i) {
    Weight w{{g.uniform(1, 3), g.uniform(1, 3), g.uniform(1, 3)}};
    Polynomial f = g.weighted_homogeneous(XYZ, w, g.uniform(1, 7));
    if (f.is_zero()) continue;
    auto d = weighted_degree(f, w);
    REQUIRE(d);
    REQUIRE(euler_apply(f, w) == f * Rational(*d));
  }
}

TEST_CASE("property: shifted degree inverse linearity and eigenvalues") {
  Gen g(kSeed + 7);
  for (int i = 0; i < 1000; ++i) {
    const std::uint32_t d = static_cast<std::uint32_t>(g.uniform(1, 4));
    Polynomial a = g.poly(XYZ), b = g.poly(XYZ);
    Rational s = g.rational();
    REQUIRE(deg_shift_inverse(a * s + b, d) == deg_shift_inverse(a, d) * s + deg_shift_inverse(b, d));
    const int deg = g.uniform(0, 5);
    Polynomial h = g.weighted_homogeneous(XYZ, Weight::standard(3), deg);
    REQUIRE(deg_shift_inverse(h, d) == h * make_rational(1, deg + static_cast<int>(d)));
  }
}
