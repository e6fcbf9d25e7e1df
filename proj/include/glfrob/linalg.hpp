#pragma once

#include <optional>
#include <vector>

#include "glfrob/fp.hpp"

// Exact linear algebra over F_p on Eigen dense types.  All routines use
// Gaussian elimination with the FIRST nonzero entry as pivot (no magnitude
// heuristics exist over a finite field) so results are deterministic and
// bitwise reproducible regardless of call order or threading.

namespace glfrob::linalg {

// Reduced row echelon form in place; returns pivot columns in ascending order.
inline std::vector<Eigen::Index> rref_inplace(MatF& A) {
  std::vector<Eigen::Index> pivots;
  const Eigen::Index rows = A.rows(), cols = A.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index sel = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!A(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r) A.row(sel).swap(A.row(r));
    Fp inv = A(r, c).inverse();
    for (Eigen::Index j = c; j < cols; ++j) A(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || A(i, c).is_zero()) continue;
      Fp f = A(i, c);
      for (Eigen::Index j = c; j < cols; ++j) A(i, j) -= f * A(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(MatF A) { return static_cast<int>(rref_inplace(A).size()); }

// Columns span ker(A); one column per free variable, in ascending column
// order, with a 1 in the free position.
inline MatF kernel_basis(const MatF& A) {
  MatF R = A;
  std::vector<Eigen::Index> pivots = rref_inplace(R);
  const Eigen::Index cols = A.cols();
  std::vector<bool> is_pivot(cols, false);
  for (Eigen::Index c : pivots) is_pivot[c] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  MatF K = MatF::Zero(cols, static_cast<Eigen::Index>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    K(free_cols[k], static_cast<Eigen::Index>(k)) = Fp(1);
    for (size_t i = 0; i < pivots.size(); ++i)
      K(pivots[i], static_cast<Eigen::Index>(k)) =
          -R(static_cast<Eigen::Index>(i), free_cols[k]);
  }
  return K;
}

// Solves A X = B for all columns of B; throws when any column is
// inconsistent (callers use this only on systems guaranteed solvable).
// Free variables are set to zero, so the solution is deterministic.
inline MatF solve_consistent(const MatF& A, const MatF& B) {
  if (A.rows() != B.rows()) throw invariant_violation("solve: row mismatch");
  MatF aug(A.rows(), A.cols() + B.cols());
  aug << A, B;
  std::vector<Eigen::Index> pivots = rref_inplace(aug);
  MatF X = MatF::Zero(A.cols(), B.cols());
  for (size_t i = 0; i < pivots.size(); ++i) {
    Eigen::Index c = pivots[i];
    if (c >= A.cols()) throw invariant_violation("solve: inconsistent system");
    for (Eigen::Index k = 0; k < B.cols(); ++k)
      X(c, k) = aug(static_cast<Eigen::Index>(i), A.cols() + k);
  }
  return X;
}

inline std::optional<VecF> solve(const MatF& A, const VecF& b) {
  MatF aug(A.rows(), A.cols() + 1);
  aug << A, b;
  std::vector<Eigen::Index> pivots = rref_inplace(aug);
  for (Eigen::Index c : pivots)
    if (c == A.cols()) return std::nullopt;
  VecF x = VecF::Zero(A.cols());
  for (size_t i = 0; i < pivots.size(); ++i)
    x(pivots[i]) = aug(static_cast<Eigen::Index>(i), A.cols());
  return x;
}

// Incrementally maintained row space in reduced echelon form.  Insertion
// order never changes the resulting span, and the stored rows are the
// canonical reduced basis of it.
class EchelonSpan {
 public:
  explicit EchelonSpan(Eigen::Index width) : width_(width) {}

  Eigen::Index width() const { return width_; }
  int dim() const { return static_cast<int>(rows_.size()); }

  // Residual of v after reduction against the span (canonical representative
  // of v modulo the span).
  VecF reduce(VecF v) const {
    for (size_t i = 0; i < rows_.size(); ++i)
      if (!v(pivots_[i]).is_zero()) v -= v(pivots_[i]) * rows_[i];
    return v;
  }

  bool contains(const VecF& v) const {
    VecF r = reduce(v);
    for (Eigen::Index i = 0; i < r.size(); ++i)
      if (!r(i).is_zero()) return false;
    return true;
  }

  // Adds v to the span; returns true when the dimension grew.
  bool insert(VecF v) {
    v = reduce(v);
    Eigen::Index piv = -1;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (!v(i).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return false;
    v *= v(piv).inverse();
    for (size_t i = 0; i < rows_.size(); ++i)
      if (!rows_[i](piv).is_zero()) rows_[i] -= rows_[i](piv) * v;
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
    pivots_.insert(pivots_.begin() + static_cast<long>(pos), piv);
    rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
    return true;
  }

  // Canonical basis rows, ascending pivot order.
  const std::vector<VecF>& rows() const { return rows_; }
  const std::vector<Eigen::Index>& pivots() const { return pivots_; }

 private:
  Eigen::Index width_;
  std::vector<VecF> rows_;
  std::vector<Eigen::Index> pivots_;
};

}  // namespace glfrob::linalg
