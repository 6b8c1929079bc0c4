#include "freediv/linalg.hpp"

#include "freediv/error.hpp"

namespace freediv {

std::map<std::size_t, Rational> Echelon::reduce(const SparseRow& row) const {
  std::map<std::size_t, Rational> r;
  for (const auto& [c, v] : row) {
    if (c >= cols_) throw PreconditionError("row entry beyond column count");
    if (sgn(v) != 0) r[c] += v;
  }
  // Pivot rows are fully reduced, so subtracting one never creates an entry
  // in another pivot column: a single pass over the original pivot hits suffices.
  std::vector<std::size_t> hits;
  for (const auto& [c, v] : r)
    if (pivots_.count(c)) hits.push_back(c);
  for (std::size_t c : hits) {
    auto it = r.find(c);
    if (it == r.end()) continue;
    const Rational coef = it->second;
    for (const auto& [pc, pv] : pivots_.at(c)) {
      Rational& slot = r[pc];
      slot -= coef * pv;
      if (sgn(slot) == 0) r.erase(pc);
    }
  }
  return r;
}

bool Echelon::add(const SparseRow& row) {
  auto r = reduce(row);
  if (r.empty()) return false;
  const std::size_t lead = r.begin()->first;
  const Rational inv = 1 / r.begin()->second;
  for (auto& [c, v] : r) v *= inv;
  for (auto& [pc, prow] : pivots_) {
    auto it = prow.find(lead);
    if (it == prow.end()) continue;
    const Rational coef = it->second;
    for (const auto& [c, v] : r) {
      Rational& slot = prow[c];
      slot -= coef * v;
      if (sgn(slot) == 0) prow.erase(c);
    }
  }
  pivots_.emplace(lead, std::move(r));
  return true;
}

bool Echelon::contains(const SparseRow& row) const { return reduce(row).empty(); }

std::vector<QVector> Echelon::nullspace() const {
  std::vector<QVector> out;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (pivots_.count(free)) continue;
    QVector v(cols_, 0);
    v[free] = 1;
    for (const auto& [pc, prow] : pivots_) {
      auto it = prow.find(free);
      if (it != prow.end()) v[pc] = -it->second;
    }
    out.push_back(primitive_integer_vector(std::move(v)));
  }
  return out;
}

std::vector<QVector> nullspace(const std::vector<SparseRow>& rows, std::size_t cols) {
  Echelon e(cols);
  for (const auto& r : rows) e.add(r);
  return e.nullspace();
}

std::optional<QVector> solve(const std::vector<SparseRow>& rows, const QVector& rhs, std::size_t cols) {
  if (rhs.size() != rows.size()) throw PreconditionError("right-hand side length mismatch");
  Echelon e(cols + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SparseRow r = rows[i];
    if (sgn(rhs[i]) != 0) r.emplace_back(cols, rhs[i]);
    e.add(r);
  }
  if (e.pivots().count(cols)) return std::nullopt;
  QVector x(cols, 0);
  for (const auto& [pc, prow] : e.pivots()) {
    auto it = prow.find(cols);
    if (it != prow.end()) x[pc] = it->second;
  }
  return x;
}

std::optional<QVector> inconsistency_witness(const std::vector<SparseRow>& rows, const QVector& rhs,
                                             std::size_t cols) {
  // Left nullspace of A: nullspace of A^T, then pick a combination pairing to 1 with b.
  std::vector<SparseRow> transposed(cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [c, v] : rows[i]) transposed[c].emplace_back(i, v);
  for (const auto& y : nullspace(transposed, rows.size())) {
    Rational pairing = 0;
    for (std::size_t i = 0; i < y.size(); ++i) pairing += y[i] * rhs[i];
    if (sgn(pairing) != 0) {
      QVector scaled = y;
      for (auto& v : scaled) v /= pairing;
      return scaled;
    }
  }
  return std::nullopt;
}

SparseRow to_sparse(const QVector& dense) {
  SparseRow out;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (sgn(dense[i]) != 0) out.emplace_back(i, dense[i]);
  return out;
}

Rational determinant(std::vector<QVector> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k].size() != n) throw PreconditionError("determinant of a non-square matrix");
    std::size_t p = k;
    while (p < n && sgn(m[p][k]) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(m[i][k]) == 0) continue;
      const Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

std::optional<std::vector<QVector>> inverse(const std::vector<QVector>& m) {
  const std::size_t n = m.size();
  Echelon e(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    SparseRow r = to_sparse(m[i]);
    r.emplace_back(n + i, Rational(1));
    e.add(r);
  }
  std::vector<QVector> inv(n, QVector(n, 0));
  for (std::size_t c = 0; c < n; ++c) {
    auto it = e.pivots().find(c);
    if (it == e.pivots().end()) return std::nullopt;
    for (const auto& [col, v] : it->second)
      if (col >= n) inv[c][col - n] = v;
  }
  return inv;
}

std::size_t rank(const std::vector<QVector>& m) {
  if (m.empty()) return 0;
  Echelon e(m[0].size());
  for (const auto& r : m) e.add(to_sparse(r));
  return e.rank();
}

}  // namespace freediv
