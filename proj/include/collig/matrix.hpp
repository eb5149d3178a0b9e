#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "collig/error.hpp"
#include "collig/scalar.hpp"

namespace collig {

// Dense matrix over a field F (ExactScalar or Cx). All sizes here are desk
// scale, so the elimination routines favour clarity over blocking. Zero-sized
// matrices are legal everywhere (0x0 determinant is 1); the colligation layer
// relies on that for N = 0.
template <class F>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * cols, F{}) {
    if (rows < 0 || cols < 0) throw InputError("negative matrix dimension");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = scalar_from_int(F{}, 1);
    return m;
  }
  static Mat zeros(int rows, int cols) { return Mat(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  F& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const F& at(int r, int c) const {
    return a_[static_cast<size_t>(r) * cols_ + c];
  }

  // ---- arithmetic ----------------------------------------------------------

  friend Mat operator+(const Mat& x, const Mat& y) {
    x.require_same_shape(y, "matrix add");
    Mat r = x;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
    return r;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    x.require_same_shape(y, "matrix sub");
    Mat r = x;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
    return r;
  }
  friend Mat operator-(const Mat& x) {
    Mat r = x;
    for (auto& v : r.a_) v = -v;
    return r;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols_ != y.rows_)
      throw InputError("matrix product shape mismatch");
    Mat r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const F& xik = x.at(i, k);
        if (is_zero(xik)) continue;
        for (int j = 0; j < y.cols_; ++j) {
          const F& ykj = y.at(k, j);
          if (!is_zero(ykj)) r.at(i, j) += xik * ykj;
        }
      }
    return r;
  }
  friend Mat operator*(const F& s, const Mat& x) {
    Mat r = x;
    for (auto& v : r.a_) v = s * v;
    return r;
  }
  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }
  Mat adjoint() const {  // conjugate transpose
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = conj_val(at(i, j));
    return r;
  }

  F trace() const {
    if (!is_square()) throw InputError("trace needs a square matrix");
    F t{};
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  // ---- blocks --------------------------------------------------------------

  Mat block(int r0, int c0, int h, int w) const {
    if (r0 < 0 || c0 < 0 || h < 0 || w < 0 || r0 + h > rows_ ||
        c0 + w > cols_)
      throw InputError("block out of range");
    Mat r(h, w);
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < w; ++j) r.at(i, j) = at(r0 + i, c0 + j);
    return r;
  }
  void set_block(int r0, int c0, const Mat& src) {
    if (r0 < 0 || c0 < 0 || r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_)
      throw InputError("set_block out of range");
    for (int i = 0; i < src.rows_; ++i)
      for (int j = 0; j < src.cols_; ++j) at(r0 + i, c0 + j) = src.at(i, j);
  }
  Mat col(int c) const { return block(0, c, rows_, 1); }
  Mat row(int r) const { return block(r, 0, 1, cols_); }

  static Mat vstack(const Mat& top, const Mat& bottom) {
    if (top.cols_ != bottom.cols_) throw InputError("vstack width mismatch");
    Mat r(top.rows_ + bottom.rows_, top.cols_);
    r.set_block(0, 0, top);
    r.set_block(top.rows_, 0, bottom);
    return r;
  }
  static Mat hstack(const Mat& left, const Mat& right) {
    if (left.rows_ != right.rows_) throw InputError("hstack height mismatch");
    Mat r(left.rows_, left.cols_ + right.cols_);
    r.set_block(0, 0, left);
    r.set_block(0, left.cols_, right);
    return r;
  }

  static Mat kron(const Mat& x, const Mat& y) {
    Mat r(x.rows_ * y.rows_, x.cols_ * y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int j = 0; j < x.cols_; ++j) {
        if (is_zero(x.at(i, j))) continue;
        for (int p = 0; p < y.rows_; ++p)
          for (int q = 0; q < y.cols_; ++q)
            r.at(i * y.rows_ + p, j * y.cols_ + q) = x.at(i, j) * y.at(p, q);
      }
    return r;
  }

  // ---- norms / magnitudes --------------------------------------------------

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, approx_abs(v));
    return m;
  }
  double frobenius() const {
    double s = 0.0;
    for (const auto& v : a_) {
      const double a = approx_abs(v);
      s += a * a;
    }
    return std::sqrt(s);
  }

  // ---- elimination toolkit -------------------------------------------------
  // Shared by det/inverse/solve/rank/nullspace. A pivot candidate is "zero"
  // when is_zero() holds (always decisive in exact mode) or, in float mode,
  // when its magnitude is <= `threshold` (an absolute cutoff the callers
  // derive from the matrix scale; 0 disables the cutoff).

  F det() const {
    if (!is_square()) throw InputError("determinant of non-square matrix");
    Mat w = *this;
    F result = scalar_from_int(F{}, 1);
    for (int col = 0; col < cols_; ++col) {
      const int p = w.pick_pivot(col, col, 0.0);
      if (p < 0) return F{};  // singular: det = 0
      if (p != col) {
        w.swap_rows(p, col);
        result = -result;
      }
      const F piv = w.at(col, col);
      result *= piv;
      for (int r = col + 1; r < rows_; ++r) {
        if (is_zero(w.at(r, col))) continue;
        const F f = w.at(r, col) / piv;
        for (int c = col; c < cols_; ++c) w.at(r, c) -= f * w.at(col, c);
      }
    }
    return result;
  }

  // Gauss-Jordan solve of (*this) * X = rhs; throws SingularMatrixError.
  Mat solve(const Mat& rhs) const {
    if (!is_square()) throw InputError("solve needs a square matrix");
    if (rhs.rows_ != rows_) throw InputError("solve rhs height mismatch");
    Mat w = *this;
    Mat x = rhs;
    for (int col = 0; col < cols_; ++col) {
      const int p = w.pick_pivot(col, col, 0.0);
      if (p < 0) throw SingularMatrixError("singular matrix in solve");
      if (p != col) {
        w.swap_rows(p, col);
        x.swap_rows(p, col);
      }
      const F piv = w.at(col, col);
      for (int c = col; c < cols_; ++c) w.at(col, c) /= piv;
      for (int c = 0; c < x.cols_; ++c) x.at(col, c) /= piv;
      for (int r = 0; r < rows_; ++r) {
        if (r == col || is_zero(w.at(r, col))) continue;
        const F f = w.at(r, col);
        for (int c = col; c < cols_; ++c) w.at(r, c) -= f * w.at(col, c);
        for (int c = 0; c < x.cols_; ++c) x.at(r, c) -= f * x.at(col, c);
      }
    }
    return x;
  }

  Mat inverse() const { return solve(identity(rows_)); }

  // Reduced row echelon form. Returns pivot column indices.
  std::vector<int> rref_in_place(double threshold = 0.0) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      const int p = pick_pivot(row, col, threshold);
      if (p < 0) continue;
      swap_rows(p, row);
      const F piv = at(row, col);
      for (int c = col; c < cols_; ++c) at(row, c) /= piv;
      for (int r = 0; r < rows_; ++r) {
        if (r == row || is_zero(at(r, col))) continue;
        const F f = at(r, col);
        for (int c = col; c < cols_; ++c) at(r, c) -= f * at(row, c);
      }
      pivots.push_back(col);
      ++row;
    }
    // Scrub sub-threshold residue so downstream structure checks are clean.
    if (threshold > 0.0)
      for (auto& v : a_)
        if (approx_abs(v) <= threshold) v = F{};
    return pivots;
  }

  int rank(double rel_tol = 1e-12) const {
    Mat w = *this;
    return static_cast<int>(w.rref_in_place(float_threshold(rel_tol)).size());
  }

  // Basis of the right nullspace, one column per free variable, in the
  // conventional RREF parameterization (free variable set to 1).
  Mat nullspace(double rel_tol = 1e-12) const {
    Mat w = *this;
    const std::vector<int> pivots =
        w.rref_in_place(float_threshold(rel_tol));
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < cols_; ++c)
      if (!is_pivot[c]) free_cols.push_back(c);
    Mat basis(cols_, static_cast<int>(free_cols.size()));
    for (size_t j = 0; j < free_cols.size(); ++j) {
      basis.at(free_cols[j], static_cast<int>(j)) = scalar_from_int(F{}, 1);
      for (size_t pi = 0; pi < pivots.size(); ++pi)
        basis.at(pivots[pi], static_cast<int>(j)) =
            -w.at(static_cast<int>(pi), free_cols[j]);
    }
    return basis;
  }

  // Unique reduced column echelon form of the column span (RREF of the
  // transpose, transposed back). Canonical representative of a subspace.
  Mat column_reduced(double rel_tol = 1e-12) const {
    Mat t = transpose();
    const std::vector<int> pivots =
        t.rref_in_place(float_threshold(rel_tol));
    Mat r = t.block(0, 0, static_cast<int>(pivots.size()), t.cols_)
                .transpose();
    return r;
  }

  // Scale-aware absolute cutoff used by the rank-revealing routines: exact
  // mode always 0 (exact zero test), float mode rel_tol * max(1, |entries|).
  double float_threshold(double rel_tol) const {
    if constexpr (is_exact_v<F>)
      return 0.0;
    else
      return rel_tol * std::max(1.0, max_abs());
  }

 private:
  void require_same_shape(const Mat& y, const char* what) const {
    if (rows_ != y.rows_ || cols_ != y.cols_)
      throw InputError(std::string(what) + ": shape mismatch");
  }
  void swap_rows(int r1, int r2) {
    if (r1 == r2) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(r1, c), at(r2, c));
  }
  // Largest-magnitude pivot in column `col` at or below `from`; -1 if the
  // whole candidate range is (numerically) zero.
  int pick_pivot(int from, int col, double threshold) const {
    int best = -1;
    double best_mag = threshold;
    for (int r = from; r < rows_; ++r) {
      if (is_zero(at(r, col))) continue;
      const double mag = approx_abs(at(r, col));
      if (mag > best_mag) {
        best_mag = mag;
        best = r;
      }
    }
    return best;
  }

  int rows_, cols_;
  std::vector<F> a_;
};

// Entrywise comparison against a relative scale: true when
// max|x - y| <= tol * max(1, |x|, |y|).
template <class F>
bool approx_equal(const Mat<F>& x, const Mat<F>& y, double tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  const double scale = std::max({1.0, x.max_abs(), y.max_abs()});
  return (x - y).max_abs() <= tol * scale;
}

template <class F>
Mat<Cx> to_float(const Mat<F>& x) {
  Mat<Cx> r(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) r.at(i, j) = to_cx(x.at(i, j));
  return r;
}

}  // namespace collig
