#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freediv/polynomial.hpp"

namespace freediv {

/// Dense row-major matrix of polynomials over one shared context. Zero-column
/// shapes (n x 0) are allowed; they arise as Hilbert-Burch matrices of a
/// single variable.
class PolyMatrix {
 public:
  PolyMatrix(VarContext ctx, std::size_t rows, std::size_t cols);

  static PolyMatrix from_rows(VarContext ctx, const std::vector<std::vector<Polynomial>>& rows);
  static PolyMatrix from_columns(VarContext ctx, std::size_t rows, const std::vector<std::vector<Polynomial>>& cols);
  static PolyMatrix identity(VarContext ctx, std::size_t n);
  static PolyMatrix diagonal(std::span<const Polynomial> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  const VarContext& context() const noexcept { return ctx_; }

  const Polynomial& operator()(std::size_t r, std::size_t c) const { return data_.at(r * cols_ + c); }
  /// Replaces an entry; the new value must share the context.
  void set(std::size_t r, std::size_t c, Polynomial value);

  std::vector<Polynomial> column(std::size_t c) const;
  std::vector<Polynomial> row(std::size_t r) const;

  PolyMatrix transposed() const;
  PolyMatrix without_row(std::size_t r) const;
  PolyMatrix with_column_appended(std::span<const Polynomial> col) const;
  PolyMatrix with_column_prepended(std::span<const Polynomial> col) const;
  /// Keeps the listed columns in the given order.
  PolyMatrix select_columns(std::span<const std::size_t> cols) const;
  PolyMatrix scaled_column(std::size_t c, const Polynomial& factor) const;
  PolyMatrix embed(const VarContext& target) const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

  /// Row vector times matrix: (v^T M)_j = sum_i v_i M_ij.
  std::vector<Polynomial> left_multiply(std::span<const Polynomial> v) const;

 private:
  VarContext ctx_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> data_;
};

/// Fraction-free (Bareiss) elimination; every division is exact.
Polynomial determinant_bareiss(const PolyMatrix& m);
/// Laplace expansion along the line with most zeros, memoized on row/column masks.
Polynomial determinant_cofactor(const PolyMatrix& m);
/// Cofactor determinant; when built with FREEDIV_DET_CROSSCHECK, matrices of
/// size <= 6 are also run through Bareiss and a mismatch raises CrossCheckError.
Polynomial determinant(const PolyMatrix& m);

/// For an n x (n-1) matrix M: entry i (0-based) is (-1)^i det(M without row i),
/// i.e. (-1)^(i+1) in 1-based terms. With this convention
/// det(w | M) = sum_i w_i * minor_i for any column w placed first.
std::vector<Polynomial> signed_maximal_minors(const PolyMatrix& m);

/// Block shape placeholder: a missing block is zero and takes its height from
/// the other blocks in its block row and its width from its block column.
using BlockGrid = std::vector<std::vector<std::optional<PolyMatrix>>>;
PolyMatrix block_assemble(const VarContext& ctx, const BlockGrid& grid);
/// Same, with explicit block row heights and column widths (needed when a
/// whole block row or column is zero).
PolyMatrix block_assemble(const VarContext& ctx, const BlockGrid& grid,
                          std::span<const std::size_t> heights, std::span<const std::size_t> widths);
PolyMatrix block_diagonal(std::span<const PolyMatrix> blocks);
PolyMatrix hconcat(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix vconcat(const PolyMatrix& a, const PolyMatrix& b);
/// A single column matrix.
PolyMatrix column_matrix(std::span<const Polynomial> col);

/// Entrywise star: each entry c becomes c* over the extended context.
PolyMatrix star_entrywise(const PolyMatrix& m, std::span<const std::string> fresh);
PolyMatrix star_entrywise_into(const PolyMatrix& m, const VarContext& target,
                               std::span<const std::size_t> direction);

}  // namespace freediv
