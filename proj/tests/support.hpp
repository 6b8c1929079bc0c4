// Shared helpers for the test suites: parsing shorthands and hand-rolled
// random generators. Every generator is driven by an explicit seed.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "freediv/parse.hpp"
#include "freediv/poly_matrix.hpp"
#include "freediv/polynomial.hpp"

namespace testing {

using namespace freediv;

inline VarContext ctx(std::vector<std::string> names) { return VarContext(std::move(names)); }

inline Polynomial P(const VarContext& c, const std::string& s) { return parse_polynomial(s, c); }

constexpr std::uint64_t kSeed = 20240917;

class Gen {
 public:
  explicit Gen(std::uint64_t seed = kSeed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  Rational rational(int span = 5) {
    int num = 0;
    while (num == 0) num = uniform(-span, span);
    return make_rational(num, uniform(1, 3));
  }

  Exponents exponents(std::size_t n, int max_deg) {
    Exponents e(n, 0);
    int budget = uniform(0, max_deg);
    for (int k = 0; k < budget; ++k) e[uniform(0, static_cast<int>(n) - 1)] += 1;
    return e;
  }

  Polynomial poly(const VarContext& c, int max_terms = 4, int max_deg = 3) {
    Polynomial p(c);
    int terms = uniform(0, max_terms);
    for (int t = 0; t < terms; ++t) p.add_term(exponents(c.size(), max_deg), rational());
    return p;
  }

  Polynomial nonzero_poly(const VarContext& c, int max_terms = 4, int max_deg = 3) {
    for (;;) {
      Polynomial p = poly(c, max_terms, max_deg);
      if (!p.is_zero()) return p;
    }
  }

  // Random polynomial whose monomials all have w-degree `deg` (nonnegative weights).
  Polynomial weighted_homogeneous(const VarContext& c, const Weight& w, int deg, int max_terms = 4) {
    Polynomial p(c);
    for (int t = 0; t < max_terms * 4 && static_cast<int>(p.size()) < max_terms; ++t) {
      Exponents e(c.size(), 0);
      int left = deg;
      for (int guard = 0; left > 0 && guard < 64; ++guard) {
        std::size_t i = static_cast<std::size_t>(uniform(0, static_cast<int>(c.size()) - 1));
        if (w.entries[i] > 0 && w.entries[i] <= left) {
          e[i] += 1;
          left -= static_cast<int>(w.entries[i]);
        }
      }
      if (left == 0) p.add_term(e, rational());
    }
    return p;
  }

  PolyMatrix sparse_matrix(const VarContext& c, std::size_t n, double density = 0.5) {
    PolyMatrix m(c, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (std::uniform_real_distribution<double>(0, 1)(rng_) < density) m.set(i, j, poly(c, 2, 2));
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing
