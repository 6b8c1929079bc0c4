#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "freediv/rational.hpp"

namespace freediv {

using QVector = std::vector<Rational>;
/// Sparse row: (column, nonzero value) pairs sorted by column.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Incremental reduced row echelon form over Q. Pivots are always the
/// smallest column of a row, so the pivot order follows the column order.
class Echelon {
 public:
  explicit Echelon(std::size_t cols) : cols_(cols) {}

  /// Reduces `row` against the current pivots and, when something is left,
  /// makes it a new pivot row. Returns true iff the rank grew.
  bool add(const SparseRow& row);
  /// True iff `row` lies in the row space.
  bool contains(const SparseRow& row) const;

  std::size_t cols() const noexcept { return cols_; }
  std::size_t rank() const noexcept { return pivots_.size(); }
  /// Pivot rows keyed by pivot column; each has a 1 at the pivot.
  const std::map<std::size_t, std::map<std::size_t, Rational>>& pivots() const noexcept { return pivots_; }

  /// Basis of {v : Rv = 0}, one vector per free column in increasing order,
  /// scaled to primitive integer vectors with first nonzero entry positive.
  std::vector<QVector> nullspace() const;

 private:
  std::map<std::size_t, Rational> reduce(const SparseRow& row) const;

  std::size_t cols_;
  std::map<std::size_t, std::map<std::size_t, Rational>> pivots_;
};

/// Nullspace of the matrix with the given rows.
std::vector<QVector> nullspace(const std::vector<SparseRow>& rows, std::size_t cols);

/// One solution of A x = b (free unknowns set to zero), or nullopt when inconsistent.
std::optional<QVector> solve(const std::vector<SparseRow>& rows, const QVector& rhs, std::size_t cols);

/// For an inconsistent system: y with y^T A = 0 and y^T b = 1.
std::optional<QVector> inconsistency_witness(const std::vector<SparseRow>& rows, const QVector& rhs,
                                             std::size_t cols);

SparseRow to_sparse(const QVector& dense);

/// Exact determinant of a dense rational matrix.
Rational determinant(std::vector<QVector> m);
/// Exact inverse, or nullopt when singular.
std::optional<std::vector<QVector>> inverse(const std::vector<QVector>& m);
std::size_t rank(const std::vector<QVector>& m);

}  // namespace freediv
