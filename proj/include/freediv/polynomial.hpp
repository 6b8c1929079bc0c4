#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "freediv/rational.hpp"

namespace freediv {

/// Ordered list of distinct variable names. Copies share storage; two contexts
/// compare equal when their name lists are equal.
class VarContext {
 public:
  VarContext();
  explicit VarContext(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_->size(); }
  const std::string& name(std::size_t i) const { return names_->at(i); }
  const std::vector<std::string>& names() const noexcept { return *names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Appends fresh names; throws PreconditionError on a collision.
  VarContext extended(std::span<const std::string> fresh) const;

  /// Union keeping this context's order first; shared names are merged.
  VarContext merged(const VarContext& other) const;

  friend bool operator==(const VarContext& a, const VarContext& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

bool is_identifier(std::string_view s);

using Exponents = std::vector<std::uint32_t>;

std::uint64_t total_degree(const Exponents& e);

/// Graded reverse lexicographic order, largest first: higher total degree wins;
/// ties go to the monomial whose last differing exponent is smaller.
struct GrevlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Integer grading vector, one entry per context variable.
struct Weight {
  std::vector<std::int64_t> entries;

  static Weight standard(std::size_t n) { return Weight{std::vector<std::int64_t>(n, 1)}; }
  friend bool operator==(const Weight&, const Weight&) = default;
};

/// The field sum_i a_i x_i d/dx_i.
struct EulerField {
  std::vector<Rational> coefficients;

  static EulerField from_weight(const Weight& w);
  bool is_zero() const;
  friend bool operator==(const EulerField&, const EulerField&) = default;
};

/// Sparse multivariate polynomial with rational coefficients. Terms are kept
/// in a map ordered by GrevlexGreater, so iteration starts at the leading term
/// and no zero coefficient is ever stored.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational, GrevlexGreater>;

  explicit Polynomial(VarContext ctx);

  static Polynomial constant(VarContext ctx, const Rational& c);
  static Polynomial variable(VarContext ctx, std::size_t i);
  static Polynomial variable(VarContext ctx, std::string_view name);
  static Polynomial monomial(VarContext ctx, Exponents e, const Rational& c = 1);

  const VarContext& context() const noexcept { return ctx_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t num_vars() const noexcept { return ctx_.size(); }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Constant term (zero for the zero polynomial).
  Rational constant_value() const;

  /// Leading term under grevlex; throws PreconditionError on zero.
  const Exponents& leading_exponents() const;
  const Rational& leading_coefficient() const;

  /// Throws PreconditionError on zero: the zero polynomial has no degree.
  std::uint64_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  /// Variables with a positive exponent somewhere in the support.
  std::vector<std::size_t> support_variables() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  Polynomial pow(unsigned k) const;

  /// Adds c * x^shift * other in place (the division-loop kernel).
  void add_scaled(const Polynomial& other, const Exponents& shift, const Rational& c);
  /// Adds c * x^e.
  void add_term(const Exponents& e, const Rational& c);

  /// Re-expresses over a context that contains every variable name of this one.
  Polynomial embed(const VarContext& target) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void require_same_context(const Polynomial& o, const char* op) const;

  VarContext ctx_;
  TermMap terms_;
};

/// Throws PreconditionError unless both polynomials live over equal contexts.
void require_same_context(const Polynomial& a, const Polynomial& b, const char* op);

Polynomial partial_derivative(const Polynomial& f, std::size_t var);
std::vector<Polynomial> gradient(const Polynomial& f);

/// deg_w(f) when every support monomial has the same w-degree, otherwise nullopt.
/// Throws PreconditionError for the zero polynomial.
std::optional<std::int64_t> weighted_degree(const Polynomial& f, const Weight& w);
/// Standard grading.
std::optional<std::int64_t> homogeneous_degree(const Polynomial& f);

/// sum_i a_i x_i df/dx_i, computed monomial-wise as (a . e) c x^e.
Polynomial euler_apply(const Polynomial& f, const EulerField& a);
Polynomial euler_apply(const Polynomial& f, const Weight& w);

/// Applies the vector field sum_i field[i] d/dx_i to f.
Polynomial apply_field(std::span<const Polynomial> field, const Polynomial& f);

/// Ring homomorphism sending the i-th variable of H's context to gs[i].
Polynomial substitute(const Polynomial& H, std::span<const Polynomial> gs);

/// q with g = q f, or nullopt. Single-divisor division under grevlex, so the
/// decision is exact. Throws PreconditionError when f is zero.
std::optional<Polynomial> divide_exact(const Polynomial& g, const Polynomial& f);

/// gcd normalized to integer content 1 and positive leading coefficient.
/// Throws PreconditionError when both inputs are zero.
Polynomial gcd(const Polynomial& p, const Polynomial& q);

/// Integer content 1, positive leading coefficient. Zero stays zero.
Polynomial normalize(const Polynomial& p);

struct SquarefreeReport {
  bool squarefree;
  Polynomial witness;  // normalized gcd(f, f_1, ..., f_n)
};
SquarefreeReport squarefree_report(const Polynomial& f);
bool is_squarefree(const Polynomial& f);

/// Scales every monomial x^e by 1/(|e|_y + d), where |e|_y sums the exponents of
/// the variables listed in `subset`.
Polynomial deg_shift_inverse(const Polynomial& f, std::uint32_t d, std::span<const std::size_t> subset);
/// Same operator with the subset equal to all variables.
Polynomial deg_shift_inverse(const Polynomial& f, std::uint32_t d);

/// f* = sum_i y_i df/dx_i with the y_i appended to the context under the given names.
Polynomial star(const Polynomial& f, std::span<const std::string> fresh);
/// Same derivation into an existing target context: direction[i] names the
/// target variable paired with the i-th variable of f's context.
Polynomial star_into(const Polynomial& f, const VarContext& target,
                     std::span<const std::size_t> direction);

}  // namespace freediv
