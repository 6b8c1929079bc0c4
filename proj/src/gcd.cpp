// Multivariate gcd over Q: content/primitive-part recursion on the most
// frequent variable, with a subresultant remainder sequence in that variable.

#include <algorithm>
#include <map>

#include "freediv/error.hpp"
#include "freediv/polynomial.hpp"

namespace freediv {
namespace {

using CoeffMap = std::map<std::uint32_t, Polynomial>;

// Coefficients of p viewed in K[others][v]; each coefficient has v-degree 0.
CoeffMap coefficients_in(const Polynomial& p, std::size_t v) {
  CoeffMap out;
  for (const auto& [e, c] : p.terms()) {
    Exponents ne = e;
    ne[v] = 0;
    auto [it, inserted] = out.try_emplace(e[v], p.context());
    it->second.add_term(ne, c);
  }
  return out;
}

Polynomial lead_coeff_in(const Polynomial& p, std::size_t v) {
  const std::uint32_t d = p.degree_in(v);
  Polynomial out(p.context());
  for (const auto& [e, c] : p.terms()) {
    if (e[v] != d) continue;
    Exponents ne = e;
    ne[v] = 0;
    out.add_term(ne, c);
  }
  return out;
}

Polynomial must_divide(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw CrossCheckError("gcd: expected exact division failed");
  return *q;
}

Polynomial monomial_gcd(const Polynomial& m, const Polynomial& q) {
  Exponents e = m.leading_exponents();
  for (const auto& [qe, qc] : q.terms())
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], qe[i]);
  return Polynomial::monomial(m.context(), e);
}

Polynomial gcd_rec(const Polynomial& p, const Polynomial& q);

Polynomial gcd_many(Polynomial g, const CoeffMap& coeffs) {
  for (const auto& [d, c] : coeffs) {
    if (g.is_constant()) break;
    g = gcd_rec(g, c);
  }
  return g;
}

Polynomial content_in(const Polynomial& p, std::size_t v) {
  CoeffMap cs = coefficients_in(p, v);
  auto it = cs.begin();
  Polynomial g = it->second;
  cs.erase(it);
  return gcd_many(std::move(g), cs);
}

// lc(B)^(deg A - deg B + 1) * A  mod  B, in the variable v.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t v) {
  const std::uint32_t db = b.degree_in(v);
  const Polynomial lb = lead_coeff_in(b, v);
  Polynomial r = a;
  int e = static_cast<int>(a.degree_in(v)) - static_cast<int>(db) + 1;
  Exponents shift(a.num_vars(), 0);
  while (!r.is_zero() && r.degree_in(v) >= db) {
    const std::uint32_t dr = r.degree_in(v);
    Polynomial s = lead_coeff_in(r, v);
    shift[v] = dr - db;
    Polynomial sb(r.context());
    for (const auto& [se, sc] : s.terms()) {
      Exponents total = se;
      total[v] += shift[v];
      sb.add_scaled(b, total, sc);
    }
    r = lb * r - sb;
    --e;
  }
  if (e > 0) r *= lb.pow(static_cast<unsigned>(e));
  return r;
}

Polynomial primitive_in(const Polynomial& p, std::size_t v) { return must_divide(p, content_in(p, v)); }

// gcd of two polynomials that are primitive in v and both involve v.
Polynomial subresultant_gcd(Polynomial a, Polynomial b, std::size_t v) {
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  const VarContext& ctx = a.context();
  Polynomial g = Polynomial::constant(ctx, 1);
  Polynomial h = Polynomial::constant(ctx, 1);
  for (;;) {
    const unsigned delta = a.degree_in(v) - b.degree_in(v);
    Polynomial r = pseudo_remainder(a, b, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) return Polynomial::constant(ctx, 1);
    a = std::move(b);
    b = must_divide(r, g * h.pow(delta));
    g = lead_coeff_in(a, v);
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = must_divide(g.pow(delta), h.pow(delta - 1));
    }
  }
  return primitive_in(b, v);
}

Polynomial gcd_rec(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  const VarContext& ctx = p.context();
  if (p.is_constant() || q.is_constant()) return Polynomial::constant(ctx, 1);
  if (p.size() == 1) return monomial_gcd(p, q);
  if (q.size() == 1) return monomial_gcd(q, p);
  if (p.total_degree() <= 2 && divide_exact(q, p)) return p;
  if (q.total_degree() <= 2 && divide_exact(p, q)) return q;

  const auto vp = p.support_variables();
  const auto vq = q.support_variables();
  for (auto v : vp)
    if (!std::binary_search(vq.begin(), vq.end(), v)) return gcd_many(q, coefficients_in(p, v));
  for (auto v : vq)
    if (!std::binary_search(vp.begin(), vp.end(), v)) return gcd_many(p, coefficients_in(q, v));

  // Both involve the same variables: recurse on the one occurring in most terms.
  std::size_t best = vp.front();
  std::size_t best_count = 0;
  for (auto v : vp) {
    std::size_t count = 0;
    for (const auto& [e, c] : p.terms()) count += e[v] > 0;
    for (const auto& [e, c] : q.terms()) count += e[v] > 0;
    if (count > best_count) {
      best = v;
      best_count = count;
    }
  }
  const Polynomial cp = content_in(p, best);
  const Polynomial cq = content_in(q, best);
  const Polynomial c = gcd_rec(cp, cq);
  const Polynomial pp = must_divide(p, cp);
  const Polynomial pq = must_divide(q, cq);
  return c * subresultant_gcd(pp, pq, best);
}

// Dense univariate polynomials over Q, lowest degree first, no trailing zeros.
using Dense = std::vector<Rational>;

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Dense dense_mul(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) return {};
  Dense out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// a mod b for b nonzero.
Dense dense_rem(Dense a, const Dense& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const Rational q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    trim(a);
  }
  return a;
}

Dense dense_gcd(Dense a, Dense b) {
  while (!b.empty()) {
    Dense r = dense_rem(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
    // keep b monic so coefficients stay small
    if (!b.empty()) {
      const Rational lead = b.back();
      for (auto& c : b) c /= lead;
    }
  }
  return a;
}

// f(p + t v) as a dense polynomial in t.
Dense restrict_to_line(const Polynomial& f, const std::vector<long>& p, const std::vector<long>& v) {
  const std::size_t n = f.num_vars();
  std::vector<std::vector<Dense>> powers(n);
  Dense out;
  for (const auto& [e, c] : f.terms()) {
    Dense term{c};
    for (std::size_t i = 0; i < n && !term.empty(); ++i) {
      if (e[i] == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(Dense{Rational(1)});
      Dense lin{Rational(p[i]), Rational(v[i])};
      trim(lin);
      while (cache.size() <= e[i]) cache.push_back(dense_mul(cache.back(), lin));
      term = dense_mul(term, cache[e[i]]);
    }
    if (out.size() < term.size()) out.resize(term.size(), Rational(0));
    for (std::size_t k = 0; k < term.size(); ++k) out[k] += term[k];
  }
  trim(out);
  return out;
}

// A restriction to a line that keeps the total degree and is squarefree
// proves f squarefree: a repeated factor of f would restrict to a repeated
// nonconstant factor.
bool squarefree_on_some_line(const Polynomial& f) {
  const std::size_t n = f.num_vars();
  const std::uint64_t deg = f.total_degree();
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  auto next = [&state](long span) {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<long>(state % static_cast<std::uint64_t>(2 * span + 1)) - span;
  };
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<long> p(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = next(7);
      v[i] = next(5);
    }
    const Dense u = restrict_to_line(f, p, v);
    if (u.size() != deg + 1) continue;
    Dense du;
    for (std::size_t k = 1; k < u.size(); ++k) du.push_back(u[k] * Rational(static_cast<long>(k)));
    if (dense_gcd(u, du).size() == 1) return true;
  }
  return false;
}

}  // namespace

Polynomial normalize(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den = 1;
  Integer num = 0;
  for (const auto& [e, c] : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
  }
  Rational scale(den, num);
  scale.canonicalize();
  if (sgn(p.leading_coefficient()) < 0) scale = -scale;
  return p * scale;
}

Polynomial gcd(const Polynomial& p, const Polynomial& q) {
  require_same_context(p, q, "gcd");
  if (p.is_zero() && q.is_zero()) throw PreconditionError("gcd of two zero polynomials");
  // One argument often divides the other (factor lists, derivatives of products).
  if (!p.is_zero() && !q.is_zero()) {
    const bool p_small = p.size() <= q.size();
    const Polynomial& small = p_small ? p : q;
    const Polynomial& large = p_small ? q : p;
    if (small.total_degree() <= large.total_degree() && divide_exact(large, small)) return normalize(small);
  }
  return normalize(gcd_rec(p, q));
}

SquarefreeReport squarefree_report(const Polynomial& f) {
  if (f.is_zero()) throw PreconditionError("squarefreeness of the zero polynomial");
  if (!f.is_constant() && squarefree_on_some_line(f)) return {true, Polynomial::constant(f.context(), 1)};
  Polynomial g = normalize(f);
  for (std::size_t i = 0; i < f.num_vars() && !g.is_constant(); ++i) {
    Polynomial d = partial_derivative(f, i);
    if (!d.is_zero()) g = gcd(g, d);
  }
  return {g.is_constant(), g};
}

bool is_squarefree(const Polynomial& f) { return squarefree_report(f).squarefree; }

}  // namespace freediv
