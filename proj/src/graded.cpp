#include "freediv/graded.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <map>
#include <set>
#include <string>

#include "freediv/error.hpp"

namespace freediv {

namespace {

void enumerate(std::size_t n, std::uint32_t left, std::size_t i, Exponents& cur, std::vector<Exponents>& out) {
  if (i + 1 == n) {
    cur[i] = left;
    out.push_back(cur);
    return;
  }
  for (std::uint32_t k = left + 1; k-- > 0;) {
    cur[i] = k;
    enumerate(n, left - k, i + 1, cur, out);
  }
  cur[i] = 0;
}

Exponents add(const Exponents& a, const Exponents& b) {
  Exponents e = a;
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b[i];
  return e;
}

std::vector<Polynomial> nonzero_context_check(const std::vector<Polynomial>& gens) {
  if (gens.empty()) throw PreconditionError("empty generator list");
  for (const auto& g : gens) require_same_context(gens[0], g, "generator list");
  return gens;
}

// Unknowns are coefficients of (generator i, multiplier monomial m); each
// column is the coefficient vector of m * g_i over an indexed monomial basis.
struct ProductSystem {
  std::vector<std::pair<std::size_t, Exponents>> unknowns;
  std::map<Exponents, std::size_t, GrevlexGreater> rows;
  std::vector<SparseRow> equations;

  std::size_t row_of(const Exponents& e) {
    auto [it, inserted] = rows.try_emplace(e, rows.size());
    if (inserted) equations.emplace_back();
    return it->second;
  }

  void add_unknown(std::size_t gen, const Exponents& m, const Polynomial& g) {
    const std::size_t col = unknowns.size();
    unknowns.emplace_back(gen, m);
    for (const auto& [e, c] : g.terms()) equations[row_of(add(e, m))].emplace_back(col, c);
  }

  QVector rhs_for(const Polynomial& target) {
    for (const auto& [e, c] : target.terms()) row_of(e);
    QVector b(equations.size(), 0);
    for (const auto& [e, c] : target.terms()) b[rows.at(e)] = c;
    return b;
  }

  std::vector<Polynomial> to_multipliers(const QVector& x, const VarContext& ctx, std::size_t ngens) const {
    std::vector<Polynomial> h(ngens, Polynomial(ctx));
    for (std::size_t k = 0; k < unknowns.size(); ++k)
      if (sgn(x[k]) != 0) h[unknowns[k].first].add_term(unknowns[k].second, x[k]);
    return h;
  }
};

// Products m * g_i with deg m = degree - deg g_i and 0 <= deg m <= cap.
ProductSystem graded_system(const std::vector<Polynomial>& gens, std::int64_t degree, std::int64_t cap) {
  ProductSystem s;
  const std::size_t n = gens[0].num_vars();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    const std::int64_t md = degree - static_cast<std::int64_t>(gens[i].total_degree());
    if (md < 0 || md > cap) continue;
    for (const auto& m : monomials_of_degree(n, static_cast<std::uint32_t>(md))) s.add_unknown(i, m, gens[i]);
  }
  return s;
}

std::int64_t require_homogeneous(const Polynomial& p, const char* what) {
  auto d = homogeneous_degree(p);
  if (!d) throw PreconditionError(std::string(what) + " is not homogeneous");
  return *d;
}

bool all_homogeneous(const std::vector<Polynomial>& gens) {
  for (const auto& g : gens)
    if (!g.is_zero() && !homogeneous_degree(g)) return false;
  return true;
}

}  // namespace

std::vector<Exponents> monomials_of_degree(std::size_t n, std::uint32_t d) {
  std::vector<Exponents> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Exponents cur(n, 0);
  enumerate(n, d, 0, cur, out);
  std::sort(out.begin(), out.end(), GrevlexGreater{});
  return out;
}

AnnihilatorSpace euler_annihilators(const Polynomial& f) {
  if (f.is_zero()) throw PreconditionError("Euler annihilators of the zero polynomial");
  const std::size_t n = f.num_vars();
  std::vector<SparseRow> rows;
  for (const auto& [e, c] : f.terms()) {
    SparseRow r;
    for (std::size_t i = 0; i < n; ++i)
      if (e[i]) r.emplace_back(i, Rational(e[i]));
    rows.push_back(std::move(r));
  }
  AnnihilatorSpace out;
  for (auto& v : nullspace(rows, n)) out.basis.push_back(EulerField{std::move(v)});
  if (auto a = solve(rows, QVector(rows.size(), 1), n)) {
    out.admits_nonzero_degree = true;
    out.unit_field = EulerField{std::move(*a)};
  }
  for (const auto& b : out.basis)
    if (!euler_apply(f, b).is_zero()) throw CrossCheckError("annihilator basis field does not annihilate");
  return out;
}

EulerField two_weight_annihilator(const Polynomial& f, const Weight& w, const Weight& v) {
  auto dw = weighted_degree(f, w);
  auto dv = weighted_degree(f, v);
  if (!dw || !dv) throw PreconditionError("polynomial is not homogeneous for both weights");
  EulerField out;
  for (std::size_t i = 0; i < w.entries.size(); ++i)
    out.coefficients.push_back(Rational(*dv) * Rational(w.entries[i]) - Rational(*dw) * Rational(v.entries[i]));
  if (!euler_apply(f, out).is_zero()) throw CrossCheckError("two-weight field does not annihilate");
  return out;
}

std::optional<std::vector<Polynomial>> graded_membership(const Polynomial& target,
                                                         const std::vector<Polynomial>& gens) {
  nonzero_context_check(gens);
  require_same_context(target, gens[0], "graded membership");
  for (const auto& g : gens)
    if (!g.is_zero()) require_homogeneous(g, "generator");
  if (target.is_zero()) return std::vector<Polynomial>(gens.size(), Polynomial(target.context()));
  const std::int64_t d = require_homogeneous(target, "target");
  ProductSystem s = graded_system(gens, d, d);
  QVector b = s.rhs_for(target);
  auto x = solve(s.equations, b, s.unknowns.size());
  if (!x) return std::nullopt;
  auto h = s.to_multipliers(*x, target.context(), gens.size());
  Polynomial check(target.context());
  for (std::size_t i = 0; i < gens.size(); ++i) check += h[i] * gens[i];
  if (!(check == target)) throw CrossCheckError("graded membership multipliers do not reproduce the target");
  return h;
}

std::optional<MembershipWitness> graded_nonmembership_witness(const Polynomial& target,
                                                              const std::vector<Polynomial>& gens) {
  nonzero_context_check(gens);
  if (target.is_zero()) return std::nullopt;
  const std::int64_t d = require_homogeneous(target, "target");
  ProductSystem s = graded_system(gens, d, d);
  QVector b = s.rhs_for(target);
  auto y = inconsistency_witness(s.equations, b, s.unknowns.size());
  if (!y) return std::nullopt;
  MembershipWitness w;
  w.monomials.resize(s.rows.size());
  for (const auto& [e, idx] : s.rows) w.monomials[idx] = e;
  w.functional = std::move(*y);
  return w;
}

SyzygySearch bounded_syzygy_solve(const std::vector<Polynomial>& gens, const Polynomial& target,
                                  std::uint32_t bound) {
  nonzero_context_check(gens);
  require_same_context(target, gens[0], "syzygy solve");
  const VarContext& ctx = gens[0].context();
  const std::size_t n = ctx.size();
  SyzygySearch out;

  const bool graded = all_homogeneous(gens) && (target.is_zero() || homogeneous_degree(target));
  if (graded) {
    if (!target.is_zero()) {
      const std::int64_t d = *homogeneous_degree(target);
      ProductSystem s = graded_system(gens, d, bound);
      auto x = solve(s.equations, s.rhs_for(target), s.unknowns.size());
      if (x) {
        out.found = true;
        out.solutions.push_back(s.to_multipliers(*x, ctx, gens.size()));
      }
      return out;
    }
    std::int64_t lo = -1, hi = -1;
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      const auto dg = static_cast<std::int64_t>(g.total_degree());
      lo = lo < 0 ? dg : std::min(lo, dg);
      hi = std::max(hi, dg + static_cast<std::int64_t>(bound));
    }
    std::vector<std::future<std::vector<std::vector<Polynomial>>>> pieces;
    for (std::int64_t d = lo; lo >= 0 && d <= hi; ++d)
      pieces.push_back(std::async(std::launch::async, [&, d] {
        ProductSystem s = graded_system(gens, d, bound);
        std::vector<std::vector<Polynomial>> basis;
        for (const auto& v : nullspace(s.equations, s.unknowns.size()))
          basis.push_back(s.to_multipliers(v, ctx, gens.size()));
        return basis;
      }));
    out.found = true;
    for (auto& p : pieces)
      for (auto& v : p.get()) out.solutions.push_back(std::move(v));
    // zero generators contribute free syzygies e_i of degree 0
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].is_zero()) {
        std::vector<Polynomial> e(gens.size(), Polynomial(ctx));
        e[i] = Polynomial::constant(ctx, 1);
        out.solutions.push_back(std::move(e));
      }
    return out;
  }

  ProductSystem s;
  std::vector<Exponents> mons;
  for (std::uint32_t k = 0; k <= bound; ++k)
    for (auto& m : monomials_of_degree(n, k)) mons.push_back(std::move(m));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (const auto& m : mons) s.add_unknown(i, m, gens[i]);
  if (target.is_zero()) {
    out.found = true;
    for (const auto& v : nullspace(s.equations, s.unknowns.size()))
      out.solutions.push_back(s.to_multipliers(v, ctx, gens.size()));
    return out;
  }
  if (auto x = solve(s.equations, s.rhs_for(target), s.unknowns.size())) {
    out.found = true;
    out.solutions.push_back(s.to_multipliers(*x, ctx, gens.size()));
  }
  return out;
}

std::vector<std::vector<Polynomial>> minimal_syzygies(const std::vector<Polynomial>& gens, std::uint32_t bound) {
  nonzero_context_check(gens);
  for (const auto& g : gens) {
    if (g.is_zero()) throw PreconditionError("minimal syzygies need nonzero generators");
    require_homogeneous(g, "generator");
  }
  const VarContext& ctx = gens[0].context();
  const std::size_t n = ctx.size();
  std::int64_t lo = -1, hi = -1;
  for (const auto& g : gens) {
    const auto dg = static_cast<std::int64_t>(g.total_degree());
    lo = lo < 0 ? dg : std::min(lo, dg);
    hi = std::max(hi, dg + static_cast<std::int64_t>(bound));
  }
  // syzygies found so far, tagged by their degree
  std::vector<std::pair<std::int64_t, std::vector<Polynomial>>> found;
  for (std::int64_t d = lo; d <= hi; ++d) {
    ProductSystem s = graded_system(gens, d, bound);
    if (s.unknowns.empty()) continue;
    std::map<std::pair<std::size_t, Exponents>, std::size_t> col;
    for (std::size_t k = 0; k < s.unknowns.size(); ++k) col.emplace(s.unknowns[k], k);
    auto coords = [&](const std::vector<Polynomial>& syz) {
      SparseRow r;
      for (std::size_t i = 0; i < syz.size(); ++i)
        for (const auto& [e, c] : syz[i].terms()) r.emplace_back(col.at({i, e}), c);
      std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      return r;
    };
    Echelon span(s.unknowns.size());
    for (const auto& [sd, syz] : found)
      for (const auto& m : monomials_of_degree(n, static_cast<std::uint32_t>(d - sd))) {
        std::vector<Polynomial> shifted;
        for (const auto& p : syz) shifted.push_back(p * Polynomial::monomial(ctx, m));
        span.add(coords(shifted));
      }
    for (const auto& v : nullspace(s.equations, s.unknowns.size())) {
      if (span.add(to_sparse(v))) found.emplace_back(d, s.to_multipliers(v, ctx, gens.size()));
    }
  }
  std::vector<std::vector<Polynomial>> out;
  for (auto& [d, syz] : found) out.push_back(std::move(syz));
  return out;
}

std::uint32_t default_syzygy_bound(const Polynomial& f) {
  if (const char* env = std::getenv("FREEDIV_SYZYGY_BOUND")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<std::uint32_t>(v);
    throw PreconditionError("FREEDIV_SYZYGY_BOUND must be a nonnegative integer");
  }
  return static_cast<std::uint32_t>(f.total_degree() + f.num_vars());
}

std::vector<Polynomial> koszul_boundary(const PolyMatrix& p, const EulerField& a) {
  const std::size_t n = p.rows();
  const VarContext& ctx = p.context();
  std::vector<Polynomial> out(n, Polynomial(ctx));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(a.coefficients[j]) != 0 && !p(j, i).is_zero())
        out[i] += Polynomial::variable(ctx, j) * p(j, i) * a.coefficients[j];
  return out;
}

std::optional<PolyMatrix> koszul_homotopy_1cycle(const std::vector<Polynomial>& omega, const EulerField& a,
                                                 std::uint32_t d) {
  if (omega.empty()) throw PreconditionError("empty form");
  const VarContext& ctx = omega[0].context();
  const std::size_t n = ctx.size();
  if (omega.size() != n || a.coefficients.size() != n) throw PreconditionError("form length must match the context");
  if (d == 0) throw PreconditionError("homotopy degree shift must be positive");
  Polynomial cycle(ctx);
  for (std::size_t i = 0; i < n; ++i) cycle += Polynomial::variable(ctx, i) * omega[i] * a.coefficients[i];
  if (!cycle.is_zero()) throw PreconditionError("form is not a cycle for the Koszul differential");

  std::vector<std::size_t> ys;
  for (std::size_t j = 0; j < n; ++j)
    if (sgn(a.coefficients[j]) != 0) ys.push_back(j);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a.coefficients[i]) != 0) continue;
    for (const auto& [e, c] : omega[i].terms()) {
      bool in_ideal = false;
      for (auto j : ys) in_ideal = in_ideal || e[j] > 0;
      if (!in_ideal) return std::nullopt;
    }
  }

  std::vector<Polynomial> shifted;
  for (const auto& w : omega) shifted.push_back(deg_shift_inverse(w, d, ys));
  // T_ji = (1/a_j) d_j shifted_i; P = T - T^T
  PolyMatrix p(ctx, n, n);
  for (auto j : ys)
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial t = partial_derivative(shifted[i], j) * (1 / a.coefficients[j]);
      if (t.is_zero()) continue;
      p.set(j, i, p(j, i) + t);
      p.set(i, j, p(i, j) - t);
    }
  if (koszul_boundary(p, a) != omega) return std::nullopt;
  return p;
}

}  // namespace freediv
