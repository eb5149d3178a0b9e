#pragma once

#include <utility>

#include "collig/colligation.hpp"
#include "collig/error.hpp"
#include "collig/matrix.hpp"
#include "collig/numeric.hpp"

namespace collig {

// Characteristic function of matrix argument:
//
//   chi_g(S) = a + b S~ (1 - d S~)^{-1} c,   S~ = S tensor 1_N,
//
// an alpha x alpha matrix depending on the m x m argument S. Defined wherever
// 1 - d S~ is invertible; evaluation at a singular point raises PoleError.
// chi is invariant under inner conjugation and multiplicative under the circ
// product.

namespace detail {

// 1 - d S~ with the pole check. Exact mode: exact zero determinant; float
// mode: smallest singular value <= 1e-12 * largest.
template <class F>
Mat<F> one_minus_d_stilde(const Colligation<F>& C, const Mat<F>& S) {
  if (S.rows() != C.shape.m || S.cols() != C.shape.m)
    throw InputError("argument matrix must be m x m for this colligation");
  const Mat<F> st = inflate(S, C.shape.N);
  return Mat<F>::identity(C.shape.m * C.shape.N) - block_d_all(C) * st;
}

template <class F>
void require_regular_point(const Mat<F>& M) {
  if (M.rows() == 0) return;
  if constexpr (is_exact_v<F>) {
    if (is_zero(M.det()))
      throw PoleError("characteristic function pole: det(1 - d S~) = 0", 0.0);
  } else {
    const auto sv = singular_values(M);
    if (sv.back() <= 1e-12 * sv.front())
      throw PoleError("characteristic function pole: 1 - d S~ numerically "
                      "singular",
                      sv.back());
  }
}

}  // namespace detail

template <class F>
Mat<F> charfn_eval(const Colligation<F>& C, const Mat<F>& S) {
  const Mat<F> M = detail::one_minus_d_stilde(C, S);
  detail::require_regular_point(M);
  if (C.shape.N == 0) return block_a(C);
  const Mat<F> st = inflate(S, C.shape.N);
  return block_a(C) +
         block_b_all(C) * st * M.solve(block_c_all(C));
}

// Independent evaluation path used as an oracle: for each corner basis vector
// p, solve the defining fixed-point system
//
//   z = g (p; S~ x),   z = (q; x),
//
// i.e. (1 - g F) z = g (p; 0) with F = diag(0_alpha, S~), and read q off the
// corner coordinates. No block inverse, no closed form.
template <class F>
Mat<F> charfn_oracle(const Colligation<F>& C, const Mat<F>& S) {
  if (S.rows() != C.shape.m || S.cols() != C.shape.m)
    throw InputError("argument matrix must be m x m for this colligation");
  const int n = C.shape.total(), alpha = C.shape.alpha;
  Mat<F> fmap(n, n);
  fmap.set_block(alpha, alpha, inflate(S, C.shape.N));
  const Mat<F> lhs = Mat<F>::identity(n) - C.g * fmap;
  Mat<F> rhs(n, alpha);
  rhs.set_block(0, 0, C.g.block(0, 0, n, alpha));
  Mat<F> z;
  try {
    z = lhs.solve(rhs);
  } catch (const SingularMatrixError&) {
    throw PoleError("characteristic function pole: defining system has no "
                    "unique solution",
                    0.0);
  }
  return z.block(0, 0, alpha, alpha);
}

// chi of the j-fold amplification; S is (j m) x (j m).
template <class F>
Mat<F> charfn_eval_amplified(const Colligation<F>& C, int j,
                             const Mat<F>& S) {
  return charfn_eval(amplify(C, j), S);
}

// Conjugators for the amplified argument/value sides, copy-major flattening:
// an H in GL(j) acts on arguments as H tensor 1_m and on values as H tensor
// 1_alpha.
template <class F>
Mat<F> amplified_argument_conjugator(const Mat<F>& H, int m) {
  return Mat<F>::kron(H, Mat<F>::identity(m));
}
template <class F>
Mat<F> amplified_value_conjugator(const Mat<F>& H, int alpha) {
  return Mat<F>::kron(H, Mat<F>::identity(alpha));
}

// det chi_g(S) * det(1 - d S~) - det [[a, -b S~], [c, 1 - d S~]]. Exactly
// zero in exact mode at every regular point; float mode keeps it at rounding
// scale.
template <class F>
F det_identity_residual(const Colligation<F>& C, const Mat<F>& S) {
  const int alpha = C.shape.alpha, inner = C.shape.m * C.shape.N;
  const Mat<F> st = inflate(S, C.shape.N);
  const Mat<F> M = Mat<F>::identity(inner) - block_d_all(C) * st;
  Mat<F> big(alpha + inner, alpha + inner);
  big.set_block(0, 0, block_a(C));
  big.set_block(0, alpha, -(block_b_all(C) * st));
  big.set_block(alpha, 0, block_c_all(C));
  big.set_block(alpha, alpha, M);
  return charfn_eval(C, S).det() * M.det() - big.det();
}

// ---- subspaces and the Grassmannian form of the map -------------------------

// A linear subspace held in unique reduced-column-echelon form, so equal
// subspaces have identical basis matrices (exact mode) or entrywise-close
// ones (float mode).
template <class F>
class Subspace {
 public:
  Subspace() : ambient_(0), basis_(0, 0) {}

  static Subspace from_columns(const Mat<F>& cols, double rel_tol = 1e-9) {
    Subspace s;
    s.ambient_ = cols.rows();
    s.basis_ = cols.column_reduced(rel_tol);
    return s;
  }

  int ambient() const { return ambient_; }
  int dim() const { return basis_.cols(); }
  const Mat<F>& basis() const { return basis_; }

  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.ambient_ == y.ambient_ && x.basis_ == y.basis_;
  }

  friend bool approx_equal(const Subspace& x, const Subspace& y, double tol) {
    return x.ambient_ == y.ambient_ && x.dim() == y.dim() &&
           approx_equal(x.basis_, y.basis_, tol);
  }

 private:
  int ambient_;
  Mat<F> basis_;
};

// Subspaces of V + V hold pairs (x, y); the graph of S is {(x, S x)}.
template <class F>
Subspace<F> graph_subspace(const Mat<F>& S, double rel_tol = 1e-9) {
  return Subspace<F>::from_columns(
      Mat<F>::vstack(Mat<F>::identity(S.cols()), S), rel_tol);
}

// Value-side subspaces of C^alpha + C^alpha hold pairs (q, p); the graph of
// an operator T (q = T p) is {(T p, p)}.
template <class F>
Subspace<F> output_graph_subspace(const Mat<F>& T, double rel_tol = 1e-9) {
  return Subspace<F>::from_columns(
      Mat<F>::vstack(T, Mat<F>::identity(T.cols())), rel_tol);
}

// Chart-free form of the characteristic map: given L in the Grassmannian of
// m-dimensional subspaces of V + V, collect all (q, p) that solve
//
//   (q; x) = g (p; y)  for some (x, y) in L tensor Z_N.
//
// At L = graph(S) with 1 - d S~ invertible this is the graph of chi_g(S); at
// other points the dimension may differ, which the returned Subspace simply
// reports.
template <class F>
Subspace<F> grassmann_map(const Colligation<F>& C, const Subspace<F>& L,
                          double rel_tol = 1e-9) {
  const int m = C.shape.m, alpha = C.shape.alpha, N = C.shape.N;
  if (L.ambient() != 2 * m)
    throw InputError("grassmann_map needs a subspace of V + V (ambient 2m)");
  const Mat<F>& B = L.basis();
  const int dl = B.cols();
  const Mat<F> bx = B.block(0, 0, m, dl);
  const Mat<F> by = B.block(m, 0, m, dl);
  const Mat<F> bxt = Mat<F>::kron(bx, Mat<F>::identity(N));
  const Mat<F> byt = Mat<F>::kron(by, Mat<F>::identity(N));

  // Unknowns (p, w), w the coordinate vector in L tensor Z_N:
  //   c p + (d byt - bxt) w = 0.
  const Mat<F> constraint = Mat<F>::hstack(
      block_c_all(C), block_d_all(C) * byt - bxt);
  const Mat<F> K = constraint.nullspace(rel_tol);
  const Mat<F> P = K.block(0, 0, alpha, K.cols());
  const Mat<F> W = K.block(alpha, 0, K.rows() - alpha, K.cols());
  const Mat<F> Q = block_a(C) * P + block_b_all(C) * (byt * W);
  return Subspace<F>::from_columns(Mat<F>::vstack(Q, P), rel_tol);
}

}  // namespace collig
