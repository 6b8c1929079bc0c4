#include "freediv/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "freediv/error.hpp"

namespace freediv {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw PreconditionError("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw PreconditionError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::vector<Rational> primitive_integer_vector(std::vector<Rational> v) {
  Integer den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
  Integer g = 0;
  for (auto& x : v) {
    x *= den;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num().get_mpz_t());
  }
  if (g == 0) return v;
  int sign = 0;
  for (const auto& x : v) {
    if (sgn(x) != 0) {
      sign = sgn(x);
      break;
    }
  }
  for (auto& x : v) {
    x /= Rational(g);
    if (sign < 0) x = -x;
  }
  return v;
}

// ---------------------------------------------------------------- VarContext

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!alpha(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

VarContext::VarContext() : names_(std::make_shared<const std::vector<std::string>>()) {}

VarContext::VarContext(std::vector<std::string> names) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    if (!is_identifier(n)) throw PreconditionError("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw PreconditionError("duplicate variable name '" + n + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> VarContext::index_of(std::string_view name) const {
  const auto& v = *names_;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == name) return i;
  return std::nullopt;
}

VarContext VarContext::extended(std::span<const std::string> fresh) const {
  std::vector<std::string> all = *names_;
  for (const auto& n : fresh) {
    if (index_of(n)) throw PreconditionError("fresh variable '" + n + "' collides with the context");
    all.push_back(n);
  }
  return VarContext(std::move(all));
}

VarContext VarContext::merged(const VarContext& other) const {
  std::vector<std::string> all = *names_;
  for (const auto& n : other.names())
    if (!index_of(n)) all.push_back(n);
  return VarContext(std::move(all));
}

// ------------------------------------------------------------------ ordering

std::uint64_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

bool GrevlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

EulerField EulerField::from_weight(const Weight& w) {
  EulerField e;
  for (auto x : w.entries) e.coefficients.emplace_back(static_cast<long>(x));
  return e;
}

bool EulerField::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const Rational& q) { return sgn(q) == 0; });
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(VarContext ctx) : ctx_(std::move(ctx)) {}

Polynomial Polynomial::constant(VarContext ctx, const Rational& c) {
  Polynomial p(std::move(ctx));
  p.add_term(Exponents(p.num_vars(), 0), c);
  return p;
}

Polynomial Polynomial::variable(VarContext ctx, std::size_t i) {
  if (i >= ctx.size()) throw PreconditionError("variable index out of range");
  Exponents e(ctx.size(), 0);
  e[i] = 1;
  return monomial(std::move(ctx), std::move(e));
}

Polynomial Polynomial::variable(VarContext ctx, std::string_view name) {
  auto i = ctx.index_of(name);
  if (!i) throw PreconditionError("unknown variable '" + std::string(name) + "'");
  return variable(std::move(ctx), *i);
}

Polynomial Polynomial::monomial(VarContext ctx, Exponents e, const Rational& c) {
  if (e.size() != ctx.size()) throw PreconditionError("exponent vector length does not match context");
  Polynomial p(std::move(ctx));
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const noexcept {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return freediv::total_degree(terms_.begin()->first) == 0;
}

Rational Polynomial::constant_value() const {
  auto it = terms_.find(Exponents(num_vars(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

const Exponents& Polynomial::leading_exponents() const {
  if (terms_.empty()) throw PreconditionError("zero polynomial has no leading term");
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw PreconditionError("zero polynomial has no leading term");
  return terms_.begin()->second;
}

std::uint64_t Polynomial::total_degree() const {
  if (terms_.empty()) throw PreconditionError("zero polynomial has no degree");
  return freediv::total_degree(terms_.begin()->first);
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
  return d;
}

std::vector<std::size_t> Polynomial::support_variables() const {
  std::vector<bool> used(num_vars(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) used[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (used[i]) out.push_back(i);
  return out;
}

void require_same_context(const Polynomial& a, const Polynomial& b, const char* op) {
  if (!(a.context() == b.context()))
    throw PreconditionError(std::string("context mismatch in ") + op);
}

void Polynomial::require_same_context(const Polynomial& o, const char* op) const {
  freediv::require_same_context(*this, o, op);
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Polynomial::add_scaled(const Polynomial& other, const Exponents& shift, const Rational& c) {
  if (sgn(c) == 0) return;
  Exponents e(num_vars());
  for (const auto& [oe, oc] : other.terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = oe[i] + shift[i];
    add_term(e, oc * c);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_context(o, "addition");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_context(o, "subtraction");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_context(b, "multiplication");
  Polynomial out(a.ctx_);
  const Polynomial& small = a.size() <= b.size() ? a : b;
  const Polynomial& large = a.size() <= b.size() ? b : a;
  for (const auto& [e, c] : small.terms_) out.add_scaled(large, e, c);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(ctx_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::embed(const VarContext& target) const {
  if (target == ctx_) return *this;
  std::vector<std::size_t> map(num_vars());
  for (std::size_t i = 0; i < num_vars(); ++i) {
    auto j = target.index_of(ctx_.name(i));
    if (!j) throw PreconditionError("cannot embed: variable '" + ctx_.name(i) + "' missing from target");
    map[i] = *j;
  }
  Polynomial out(target);
  for (const auto& [e, c] : terms_) {
    Exponents ne(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[map[i]] = e[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
}

// ------------------------------------------------------------- derivations

Polynomial partial_derivative(const Polynomial& f, std::size_t var) {
  if (var >= f.num_vars()) throw PreconditionError("derivative index out of range");
  Polynomial out(f.context());
  for (const auto& [e, c] : f.terms()) {
    if (e[var] == 0) continue;
    Exponents ne = e;
    ne[var] -= 1;
    out.add_term(ne, c * static_cast<unsigned long>(e[var]));
  }
  return out;
}

std::vector<Polynomial> gradient(const Polynomial& f) {
  std::vector<Polynomial> g;
  g.reserve(f.num_vars());
  for (std::size_t i = 0; i < f.num_vars(); ++i) g.push_back(partial_derivative(f, i));
  return g;
}

std::optional<std::int64_t> weighted_degree(const Polynomial& f, const Weight& w) {
  if (w.entries.size() != f.num_vars()) throw PreconditionError("weight length does not match context");
  if (f.is_zero()) throw PreconditionError("zero polynomial has no degree");
  std::optional<std::int64_t> deg;
  for (const auto& [e, c] : f.terms()) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += w.entries[i] * static_cast<std::int64_t>(e[i]);
    if (!deg) {
      deg = d;
    } else if (*deg != d) {
      return std::nullopt;
    }
  }
  return deg;
}

std::optional<std::int64_t> homogeneous_degree(const Polynomial& f) {
  return weighted_degree(f, Weight::standard(f.num_vars()));
}

Polynomial euler_apply(const Polynomial& f, const EulerField& a) {
  if (a.coefficients.size() != f.num_vars()) throw PreconditionError("Euler field length does not match context");
  Polynomial out(f.context());
  for (const auto& [e, c] : f.terms()) {
    Rational s = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) s += a.coefficients[i] * static_cast<unsigned long>(e[i]);
    out.add_term(e, s * c);
  }
  return out;
}

Polynomial euler_apply(const Polynomial& f, const Weight& w) { return euler_apply(f, EulerField::from_weight(w)); }

Polynomial apply_field(std::span<const Polynomial> field, const Polynomial& f) {
  if (field.size() != f.num_vars()) throw PreconditionError("vector field length does not match context");
  Polynomial out(f.context());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i].is_zero()) continue;
    out += field[i] * partial_derivative(f, i);
  }
  return out;
}

Polynomial substitute(const Polynomial& H, std::span<const Polynomial> gs) {
  if (gs.size() != H.num_vars()) throw PreconditionError("substitution arity mismatch");
  if (gs.empty()) throw PreconditionError("substitution needs a target context");
  for (const auto& g : gs) require_same_context(g, gs[0], "substitution");
  const VarContext& ctx = gs[0].context();
  // powers[i][k] = gs[i]^k, filled lazily
  std::vector<std::vector<Polynomial>> powers(gs.size());
  auto power = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
    auto& p = powers[i];
    if (p.empty()) p.push_back(Polynomial::constant(ctx, 1));
    while (p.size() <= k) p.push_back(p.back() * gs[i]);
    return p[k];
  };
  Polynomial out(ctx);
  for (const auto& [e, c] : H.terms()) {
    Polynomial term = Polynomial::constant(ctx, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term *= power(i, e[i]);
    out += term;
  }
  return out;
}

std::optional<Polynomial> divide_exact(const Polynomial& g, const Polynomial& f) {
  require_same_context(g, f, "division");
  if (f.is_zero()) throw PreconditionError("division by the zero polynomial");
  Polynomial q(f.context());
  Polynomial r = g;
  const Exponents& lf = f.leading_exponents();
  const Rational& lc = f.leading_coefficient();
  Exponents shift(f.num_vars());
  while (!r.is_zero()) {
    const Exponents& lr = r.leading_exponents();
    for (std::size_t i = 0; i < shift.size(); ++i) {
      if (lr[i] < lf[i]) return std::nullopt;
      shift[i] = lr[i] - lf[i];
    }
    Rational c = r.leading_coefficient() / lc;
    q.add_term(shift, c);
    r.add_scaled(f, shift, -c);
  }
  return q;
}

Polynomial deg_shift_inverse(const Polynomial& f, std::uint32_t d, std::span<const std::size_t> subset) {
  if (d == 0) throw PreconditionError("deg_shift_inverse needs d >= 1");
  for (auto i : subset)
    if (i >= f.num_vars()) throw PreconditionError("variable subset index out of range");
  Polynomial out(f.context());
  for (const auto& [e, c] : f.terms()) {
    unsigned long s = d;
    for (auto i : subset) s += e[i];
    out.add_term(e, c / Rational(s));
  }
  return out;
}

Polynomial deg_shift_inverse(const Polynomial& f, std::uint32_t d) {
  std::vector<std::size_t> all(f.num_vars());
  std::iota(all.begin(), all.end(), 0);
  return deg_shift_inverse(f, d, all);
}

Polynomial star_into(const Polynomial& f, const VarContext& target, std::span<const std::size_t> direction) {
  if (direction.size() != f.num_vars()) throw PreconditionError("star needs one direction per variable");
  Polynomial out(target);
  for (std::size_t i = 0; i < f.num_vars(); ++i) {
    if (direction[i] >= target.size()) throw PreconditionError("star direction out of range");
    Polynomial d = partial_derivative(f, i);
    if (d.is_zero()) continue;
    out += d.embed(target) * Polynomial::variable(target, direction[i]);
  }
  return out;
}

Polynomial star(const Polynomial& f, std::span<const std::string> fresh) {
  if (fresh.size() != f.num_vars()) throw PreconditionError("star needs exactly one fresh name per variable");
  VarContext target = f.context().extended(fresh);
  std::vector<std::size_t> dir(f.num_vars());
  std::iota(dir.begin(), dir.end(), f.num_vars());
  return star_into(f, target, dir);
}

}  // namespace freediv
