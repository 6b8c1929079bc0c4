#include "freediv/poly_matrix.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <numeric>

#include "freediv/error.hpp"

namespace freediv {

PolyMatrix::PolyMatrix(VarContext ctx, std::size_t rows, std::size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), data_(rows * cols, Polynomial(ctx_)) {}

PolyMatrix PolyMatrix::from_rows(VarContext ctx, const std::vector<std::vector<Polynomial>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  PolyMatrix m(std::move(ctx), rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw PreconditionError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

PolyMatrix PolyMatrix::from_columns(VarContext ctx, std::size_t rows,
                                    const std::vector<std::vector<Polynomial>>& cols) {
  PolyMatrix m(std::move(ctx), rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw PreconditionError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
  }
  return m;
}

PolyMatrix PolyMatrix::identity(VarContext ctx, std::size_t n) {
  PolyMatrix m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, Polynomial::constant(ctx, 1));
  return m;
}

PolyMatrix PolyMatrix::diagonal(std::span<const Polynomial> entries) {
  if (entries.empty()) throw PreconditionError("diagonal of an empty list");
  PolyMatrix m(entries[0].context(), entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, i, entries[i]);
  return m;
}

void PolyMatrix::set(std::size_t r, std::size_t c, Polynomial value) {
  if (r >= rows_ || c >= cols_) throw PreconditionError("matrix index out of range");
  if (!(value.context() == ctx_)) throw PreconditionError("matrix entry context mismatch");
  data_[r * cols_ + c] = std::move(value);
}

std::vector<Polynomial> PolyMatrix::column(std::size_t c) const {
  std::vector<Polynomial> out;
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

std::vector<Polynomial> PolyMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

PolyMatrix PolyMatrix::transposed() const {
  PolyMatrix t(ctx_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = (*this)(r, c);
  return t;
}

PolyMatrix PolyMatrix::without_row(std::size_t skip) const {
  if (skip >= rows_) throw PreconditionError("row index out of range");
  PolyMatrix m(ctx_, rows_ - 1, cols_);
  for (std::size_t r = 0, k = 0; r < rows_; ++r) {
    if (r == skip) continue;
    for (std::size_t c = 0; c < cols_; ++c) m.data_[k * cols_ + c] = (*this)(r, c);
    ++k;
  }
  return m;
}

PolyMatrix PolyMatrix::with_column_appended(std::span<const Polynomial> col) const {
  return hconcat(*this, column_matrix(col));
}

PolyMatrix PolyMatrix::with_column_prepended(std::span<const Polynomial> col) const {
  return hconcat(column_matrix(col), *this);
}

PolyMatrix PolyMatrix::select_columns(std::span<const std::size_t> cols) const {
  PolyMatrix m(ctx_, rows_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t r = 0; r < rows_; ++r) m.data_[r * cols.size() + j] = (*this)(r, cols[j]);
  return m;
}

PolyMatrix PolyMatrix::scaled_column(std::size_t c, const Polynomial& factor) const {
  PolyMatrix m = *this;
  for (std::size_t r = 0; r < rows_; ++r) m.set(r, c, (*this)(r, c) * factor);
  return m;
}

PolyMatrix PolyMatrix::embed(const VarContext& target) const {
  PolyMatrix m(target, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i].embed(target);
  return m;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("matrix product shape mismatch");
  if (!(a.ctx_ == b.ctx_)) throw PreconditionError("matrix product context mismatch");
  PolyMatrix m(a.ctx_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Polynomial& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) m.data_[i * b.cols_ + j] += x * b(k, j);
    }
  return m;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.ctx_ == b.ctx_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<Polynomial> PolyMatrix::left_multiply(std::span<const Polynomial> v) const {
  if (v.size() != rows_) throw PreconditionError("vector-matrix shape mismatch");
  std::vector<Polynomial> out(cols_, Polynomial(ctx_));
  for (std::size_t i = 0; i < rows_; ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(i, j).is_zero()) out[j] += v[i] * (*this)(i, j);
  }
  return out;
}

// ------------------------------------------------------------- determinants

Polynomial determinant_bareiss(const PolyMatrix& m) {
  if (!m.is_square()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  const VarContext& ctx = m.context();
  if (n == 0) return Polynomial::constant(ctx, 1);
  std::vector<std::vector<Polynomial>> a;
  for (std::size_t r = 0; r < n; ++r) a.push_back(m.row(r));
  Polynomial prev = Polynomial::constant(ctx, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a[p][k].is_zero()) ++p;
      if (p == n) return Polynomial(ctx);
      std::swap(a[k], a[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        auto q = divide_exact(num, prev);
        if (!q) throw CrossCheckError("Bareiss step produced an inexact division");
        a[i][j] = std::move(*q);
      }
      a[i][k] = Polynomial(ctx);
    }
    prev = a[k][k];
  }
  Polynomial d = a[n - 1][n - 1];
  return negate ? -d : d;
}

namespace {

class CofactorSolver {
 public:
  explicit CofactorSolver(const PolyMatrix& m) : m_(m) {}

  Polynomial det(std::uint64_t rows, std::uint64_t cols) {
    const int k = std::popcount(rows);
    if (k == 0) return Polynomial::constant(m_.context(), 1);
    if (k == 1) return m_(std::countr_zero(rows), std::countr_zero(cols));
    auto key = std::make_pair(rows, cols);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const auto row_idx = indices(rows);
    const auto col_idx = indices(cols);
    // pick the line with the most zeros
    std::size_t best_zeros = 0;
    bool along_row = true;
    std::size_t best_pos = 0;
    for (std::size_t a = 0; a < row_idx.size(); ++a) {
      std::size_t z = 0;
      for (auto c : col_idx) z += m_(row_idx[a], c).is_zero();
      if (a == 0 || z > best_zeros) {
        best_zeros = z;
        best_pos = a;
        along_row = true;
      }
    }
    for (std::size_t b = 0; b < col_idx.size(); ++b) {
      std::size_t z = 0;
      for (auto r : row_idx) z += m_(r, col_idx[b]).is_zero();
      if (z > best_zeros) {
        best_zeros = z;
        best_pos = b;
        along_row = false;
      }
    }
    Polynomial total(m_.context());
    if (best_zeros == row_idx.size()) {
      memo_.emplace(key, total);
      return total;
    }
    const std::size_t line = along_row ? row_idx[best_pos] : col_idx[best_pos];
    const auto& others = along_row ? col_idx : row_idx;
    for (std::size_t t = 0; t < others.size(); ++t) {
      const std::size_t r = along_row ? line : others[t];
      const std::size_t c = along_row ? others[t] : line;
      const Polynomial& entry = m_(r, c);
      if (entry.is_zero()) continue;
      Polynomial minor = det(rows & ~(std::uint64_t{1} << r), cols & ~(std::uint64_t{1} << c));
      if (minor.is_zero()) continue;
      Polynomial term = entry * minor;
      if ((best_pos + t) % 2 == 1) total -= term; else total += term;
    }
    memo_.emplace(key, total);
    return total;
  }

 private:
  static std::vector<std::size_t> indices(std::uint64_t mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; mask; ++i, mask >>= 1)
      if (mask & 1u) out.push_back(i);
    return out;
  }

  const PolyMatrix& m_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Polynomial> memo_;
};

std::uint64_t full_mask(std::size_t n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace

Polynomial determinant_cofactor(const PolyMatrix& m) {
  if (!m.is_square()) throw PreconditionError("determinant of a non-square matrix");
  if (m.rows() > 64) throw PreconditionError("cofactor determinant limited to 64x64");
  CofactorSolver s(m);
  return s.det(full_mask(m.rows()), full_mask(m.cols()));
}

Polynomial determinant(const PolyMatrix& m) {
  Polynomial d = determinant_cofactor(m);
#ifdef FREEDIV_DET_CROSSCHECK
  if (m.rows() <= 6 && !(determinant_bareiss(m) == d))
    throw CrossCheckError("cofactor and Bareiss determinants disagree");
#endif
  return d;
}

std::vector<Polynomial> signed_maximal_minors(const PolyMatrix& m) {
  if (m.rows() != m.cols() + 1) throw PreconditionError("signed maximal minors need an n x (n-1) matrix");
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Polynomial d = determinant(m.without_row(i));
    out.push_back(i % 2 == 0 ? d : -d);
  }
  return out;
}

// ---------------------------------------------------------------- assembly

PolyMatrix block_assemble(const VarContext& ctx, const BlockGrid& grid, std::span<const std::size_t> heights,
                          std::span<const std::size_t> widths) {
  if (grid.size() != heights.size()) throw PreconditionError("block grid height list mismatch");
  const std::size_t total_rows = std::accumulate(heights.begin(), heights.end(), std::size_t{0});
  const std::size_t total_cols = std::accumulate(widths.begin(), widths.end(), std::size_t{0});
  PolyMatrix out(ctx, total_rows, total_cols);
  std::size_t r0 = 0;
  for (std::size_t bi = 0; bi < grid.size(); ++bi) {
    if (grid[bi].size() != widths.size()) throw PreconditionError("ragged block grid");
    std::size_t c0 = 0;
    for (std::size_t bj = 0; bj < widths.size(); ++bj) {
      if (const auto& blk = grid[bi][bj]) {
        if (blk->rows() != heights[bi] || blk->cols() != widths[bj])
          throw PreconditionError("block shape conflict at (" + std::to_string(bi) + "," + std::to_string(bj) + ")");
        if (!(blk->context() == ctx)) throw PreconditionError("block context mismatch");
        for (std::size_t r = 0; r < blk->rows(); ++r)
          for (std::size_t c = 0; c < blk->cols(); ++c)
            if (!(*blk)(r, c).is_zero()) out.set(r0 + r, c0 + c, (*blk)(r, c));
      }
      c0 += widths[bj];
    }
    r0 += heights[bi];
  }
  return out;
}

PolyMatrix block_assemble(const VarContext& ctx, const BlockGrid& grid) {
  if (grid.empty()) throw PreconditionError("empty block grid");
  const std::size_t nb = grid[0].size();
  std::vector<std::optional<std::size_t>> h(grid.size()), w(nb);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].size() != nb) throw PreconditionError("ragged block grid");
    for (std::size_t j = 0; j < nb; ++j) {
      if (!grid[i][j]) continue;
      const auto& b = *grid[i][j];
      if (h[i] && *h[i] != b.rows()) throw PreconditionError("block row height conflict");
      if (w[j] && *w[j] != b.cols()) throw PreconditionError("block column width conflict");
      h[i] = b.rows();
      w[j] = b.cols();
    }
  }
  std::vector<std::size_t> hh, ww;
  for (auto& x : h) {
    if (!x) throw PreconditionError("cannot infer the height of an all-zero block row");
    hh.push_back(*x);
  }
  for (auto& x : w) {
    if (!x) throw PreconditionError("cannot infer the width of an all-zero block column");
    ww.push_back(*x);
  }
  return block_assemble(ctx, grid, hh, ww);
}

PolyMatrix block_diagonal(std::span<const PolyMatrix> blocks) {
  if (blocks.empty()) throw PreconditionError("block_diagonal of nothing");
  BlockGrid grid(blocks.size(), std::vector<std::optional<PolyMatrix>>(blocks.size()));
  std::vector<std::size_t> h, w;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    grid[i][i] = blocks[i];
    h.push_back(blocks[i].rows());
    w.push_back(blocks[i].cols());
  }
  return block_assemble(blocks[0].context(), grid, h, w);
}

PolyMatrix hconcat(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows()) throw PreconditionError("hconcat row mismatch");
  BlockGrid g{{a, b}};
  const std::size_t h[] = {a.rows()};
  const std::size_t w[] = {a.cols(), b.cols()};
  return block_assemble(a.context(), g, h, w);
}

PolyMatrix vconcat(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.cols()) throw PreconditionError("vconcat column mismatch");
  BlockGrid g{{a}, {b}};
  const std::size_t h[] = {a.rows(), b.rows()};
  const std::size_t w[] = {a.cols()};
  return block_assemble(a.context(), g, h, w);
}

PolyMatrix column_matrix(std::span<const Polynomial> col) {
  if (col.empty()) throw PreconditionError("empty column");
  PolyMatrix m(col[0].context(), col.size(), 1);
  for (std::size_t i = 0; i < col.size(); ++i) m.set(i, 0, col[i]);
  return m;
}

PolyMatrix star_entrywise_into(const PolyMatrix& m, const VarContext& target, std::span<const std::size_t> direction) {
  PolyMatrix out(target, m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.set(r, c, star_into(m(r, c), target, direction));
  return out;
}

PolyMatrix star_entrywise(const PolyMatrix& m, std::span<const std::string> fresh) {
  if (fresh.size() != m.context().size()) throw PreconditionError("star needs exactly one fresh name per variable");
  VarContext target = m.context().extended(fresh);
  std::vector<std::size_t> dir(m.context().size());
  std::iota(dir.begin(), dir.end(), m.context().size());
  return star_entrywise_into(m, target, dir);
}

}  // namespace freediv
