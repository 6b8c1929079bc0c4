#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "freediv/linalg.hpp"
#include "freediv/poly_matrix.hpp"
#include "freediv/polynomial.hpp"

namespace freediv {

/// All exponent vectors of total degree `d` in `n` variables, in decreasing grevlex order.
std::vector<Exponents> monomials_of_degree(std::size_t n, std::uint32_t d);

struct AnnihilatorSpace {
  std::vector<EulerField> basis;
  /// Some Euler field acts on f as the identity (so some field has E(f) = delta f, delta != 0).
  bool admits_nonzero_degree = false;
  /// A field with E(f) = f when one exists.
  std::optional<EulerField> unit_field;
};

/// Euler fields killing f: E_a(f) = sum_e c_e (a.e) x^e, so the basis is the
/// nullspace of the support exponent matrix. Throws on f = 0.
AnnihilatorSpace euler_annihilators(const Polynomial& f);

/// deg_v(f) w - deg_w(f) v. Throws PreconditionError unless f is homogeneous for
/// both weights; the result is checked to annihilate f.
EulerField two_weight_annihilator(const Polynomial& f, const Weight& w, const Weight& v);

/// Membership of a homogeneous target in the ideal of homogeneous generators,
/// decided inside the target's degree. Returns multipliers h with
/// sum h_i g_i = target, or nullopt.
std::optional<std::vector<Polynomial>> graded_membership(const Polynomial& target,
                                                         const std::vector<Polynomial>& gens);

/// Same system, reporting a dual witness on failure: coefficients y over the
/// monomials of the target degree with y.(m g_i) = 0 for all products and y.target = 1.
struct MembershipWitness {
  std::vector<Exponents> monomials;
  QVector functional;
};
std::optional<MembershipWitness> graded_nonmembership_witness(const Polynomial& target,
                                                              const std::vector<Polynomial>& gens);

struct SyzygySearch {
  /// False means NotFoundWithinBound: nothing is proved about larger degrees.
  bool found = false;
  /// One particular solution for a nonzero target; a basis of the syzygies
  /// (graded piece by graded piece) for a zero target.
  std::vector<std::vector<Polynomial>> solutions;
};

/// Solves sum h_i gens_i = target with deg h_i <= bound by linear algebra on
/// coefficient vectors. A zero target returns a syzygy basis. When every input
/// is homogeneous the system splits by degree and the pieces run concurrently.
SyzygySearch bounded_syzygy_solve(const std::vector<Polynomial>& gens, const Polynomial& target,
                                  std::uint32_t bound);

/// Minimal homogeneous syzygies of homogeneous generators up to the bound:
/// at each degree, the syzygies not generated by those of lower degree.
std::vector<std::vector<Polynomial>> minimal_syzygies(const std::vector<Polynomial>& gens, std::uint32_t bound);

/// deg f + n, unless FREEDIV_SYZYGY_BOUND is set to a nonnegative integer.
std::uint32_t default_syzygy_bound(const Polynomial& f);

/// 2-form omega' with boundary omega for the Koszul differential
/// sum_i a_i x_i d/d xi_i, as the antisymmetric matrix P with
/// omega' = sum_{j<i} P_ji xi_j ^ xi_i. Throws PreconditionError if omega is not a
/// cycle. Returns nullopt when the vanishing condition fails (some coordinate
/// with a_i = 0 has a monomial outside the ideal of the y) or the computed
/// form does not have boundary omega.
std::optional<PolyMatrix> koszul_homotopy_1cycle(const std::vector<Polynomial>& omega, const EulerField& a,
                                                 std::uint32_t d = 1);

/// (d P)_i = sum_j a_j x_j P_ji.
std::vector<Polynomial> koszul_boundary(const PolyMatrix& p, const EulerField& a);

}  // namespace freediv
