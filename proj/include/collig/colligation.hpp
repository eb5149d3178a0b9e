#pragma once

#include <string>
#include <vector>

#include "collig/error.hpp"
#include "collig/matrix.hpp"
#include "collig/numeric.hpp"
#include "collig/rng.hpp"
#include "collig/scalar.hpp"

namespace collig {

// A colligation is a block matrix g of size alpha + m*N acting on
// C^alpha + (V tensor Z_N), V = C^m:
//
//       | a    b_1    b_2   ...  b_m  |      a     : alpha x alpha
//   g = | c_1  d_11   d_12  ...  d_1m |      b_beta: alpha x N
//       | ...                         |      c_gamma: N x alpha
//       | c_m  d_m1   ...        d_mm |      d_{phi,psi}: N x N
//
// considered up to conjugation by iota(u) = diag(1_alpha, u, ..., u),
// u in GL(N) (or U(N) for the unitary flavor). Block indices in the public
// API are 1-based (phi, psi, beta, gamma in 1..m; row/column selectors k, l
// in 1..alpha); raw matrix coordinates are 0-based.
//
// N = 0 is a first-class citizen (the identity-shaped neutral elements of the
// product live there).

struct Shape {
  int alpha = 0, m = 1, N = 0;
  int total() const { return alpha + m * N; }
  friend bool operator==(const Shape&, const Shape&) = default;
  std::string str() const {
    return "(alpha=" + std::to_string(alpha) + ", m=" + std::to_string(m) +
           ", N=" + std::to_string(N) + ")";
  }
};

inline void check_shape(const Shape& s) {
  if (s.alpha < 0 || s.m < 1 || s.N < 0)
    throw InputError("invalid shape " + s.str());
}

enum class Flavor { general, invertible, unitary };

inline const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::general: return "general";
    case Flavor::invertible: return "invertible";
    case Flavor::unitary: return "unitary";
  }
  return "?";
}

template <class F>
struct Colligation {
  Shape shape;
  Flavor flavor = Flavor::general;
  Mat<F> g;

  Colligation() = default;
  Colligation(Shape s, Flavor f, Mat<F> mat)
      : shape(s), flavor(f), g(std::move(mat)) {
    check_shape(shape);
    if (g.rows() != shape.total() || g.cols() != shape.total())
      throw InputError("colligation matrix size does not match shape " +
                       shape.str());
  }

  static constexpr Mode mode() { return mode_of_v<F>; }

  // 0-based offset of inner block `phi` (1-based).
  int inner_offset(int phi) const { return shape.alpha + (phi - 1) * shape.N; }
};

// ---- block accessors (1-based block indices) -------------------------------

template <class F>
Mat<F> block_a(const Colligation<F>& C) {
  return C.g.block(0, 0, C.shape.alpha, C.shape.alpha);
}

template <class F>
Mat<F> block_b(const Colligation<F>& C, int beta) {
  if (beta < 1 || beta > C.shape.m) throw InputError("b index out of range");
  return C.g.block(0, C.inner_offset(beta), C.shape.alpha, C.shape.N);
}

template <class F>
Mat<F> block_c(const Colligation<F>& C, int gamma) {
  if (gamma < 1 || gamma > C.shape.m) throw InputError("c index out of range");
  return C.g.block(C.inner_offset(gamma), 0, C.shape.N, C.shape.alpha);
}

template <class F>
Mat<F> block_d(const Colligation<F>& C, int phi, int psi) {
  if (phi < 1 || phi > C.shape.m || psi < 1 || psi > C.shape.m)
    throw InputError("d index out of range");
  return C.g.block(C.inner_offset(phi), C.inner_offset(psi), C.shape.N,
                   C.shape.N);
}

// Aggregates: b = (b_1 ... b_m), c stacked, d as the full m*N x m*N block.
template <class F>
Mat<F> block_b_all(const Colligation<F>& C) {
  return C.g.block(0, C.shape.alpha, C.shape.alpha, C.shape.m * C.shape.N);
}
template <class F>
Mat<F> block_c_all(const Colligation<F>& C) {
  return C.g.block(C.shape.alpha, 0, C.shape.m * C.shape.N, C.shape.alpha);
}
template <class F>
Mat<F> block_d_all(const Colligation<F>& C) {
  return C.g.block(C.shape.alpha, C.shape.alpha, C.shape.m * C.shape.N,
                   C.shape.m * C.shape.N);
}

// S~ = S tensor 1_N: the (phi,psi) block of the result is s_{phi,psi} * 1_N.
// Accepts any square S whose side plays the role of m (already-amplified
// arguments pass jm here).
template <class F>
Mat<F> inflate(const Mat<F>& S, int N) {
  if (!S.is_square()) throw InputError("inflate needs a square matrix");
  return Mat<F>::kron(S, Mat<F>::identity(N));
}

// ---- the inner symmetry group ----------------------------------------------

template <class F>
struct InnerGroupElement {
  enum class Kind { general_linear, unitary };
  Mat<F> u;
  Kind kind = Kind::general_linear;
};

// iota(u) = diag(1_alpha, u, ..., u) with m copies of u.
template <class F>
Mat<F> iota(const Mat<F>& u, int alpha, int m) {
  if (!u.is_square()) throw InputError("iota needs a square u");
  const int n = u.rows();
  Mat<F> r = Mat<F>::identity(alpha + m * n);
  for (int copy = 0; copy < m; ++copy)
    r.set_block(alpha + copy * n, alpha + copy * n, u);
  return r;
}

// g -> iota(u) g iota(u)^{-1}. The unitary flavor demands a unitary u (the
// class is defined under U(N) there); InputError otherwise. The inverse is
// assembled blockwise from u^{-1} so the conjugation stays exact in exact
// mode.
template <class F>
Colligation<F> conjugate(const Colligation<F>& C,
                         const InnerGroupElement<F>& elem) {
  if (elem.u.rows() != C.shape.N)
    throw InputError("inner element size != N");
  if (C.flavor == Flavor::unitary &&
      elem.kind != InnerGroupElement<F>::Kind::unitary)
    throw InputError("unitary colligation needs a unitary inner element");
  const Mat<F> ui = elem.u.inverse();
  const Mat<F> left = iota(elem.u, C.shape.alpha, C.shape.m);
  const Mat<F> right = iota(ui, C.shape.alpha, C.shape.m);
  return Colligation<F>(C.shape, C.flavor, left * C.g * right);
}

// ---- embedding N -> N+1 ----------------------------------------------------

// Pads each b with a zero column, each c with a zero row, off-diagonal d
// blocks with zeros, and diagonal d blocks with a trailing 1. Characteristic
// data is unchanged; the divisor gains one copy of its det(1-S) component.
template <class F>
Colligation<F> embed(const Colligation<F>& C) {
  const Shape ns{C.shape.alpha, C.shape.m, C.shape.N + 1};
  Mat<F> g(ns.total(), ns.total());
  const int alpha = ns.alpha, m = ns.m, N = C.shape.N;
  const F one = scalar_from_int(F{}, 1);
  g.set_block(0, 0, block_a(C));
  for (int beta = 1; beta <= m; ++beta)
    g.set_block(0, alpha + (beta - 1) * (N + 1), block_b(C, beta));
  for (int gamma = 1; gamma <= m; ++gamma)
    g.set_block(alpha + (gamma - 1) * (N + 1), 0, block_c(C, gamma));
  for (int phi = 1; phi <= m; ++phi)
    for (int psi = 1; psi <= m; ++psi) {
      const int r0 = alpha + (phi - 1) * (N + 1);
      const int c0 = alpha + (psi - 1) * (N + 1);
      g.set_block(r0, c0, block_d(C, phi, psi));
      if (phi == psi) g.at(r0 + N, c0 + N) = one;
    }
  return Colligation<F>(ns, C.flavor, std::move(g));
}

// ---- amplification ---------------------------------------------------------

// j-fold amplification, copy-major basis: the corner lists copy 1's alpha
// coordinates first, and the inner part lists (copy, block) pairs ordered
// first by copy, then by block. Shape becomes (j*alpha, j*m, N); the matrix
// is a basis permutation of the naive j-fold direct sum.
template <class F>
Colligation<F> amplify(const Colligation<F>& C, int j) {
  if (j < 1) throw InputError("amplify needs j >= 1");
  const Shape ns{j * C.shape.alpha, j * C.shape.m, C.shape.N};
  const int alpha = C.shape.alpha, m = C.shape.m, N = C.shape.N;
  Mat<F> g(ns.total(), ns.total());
  const Mat<F> a = block_a(C);
  for (int copy = 0; copy < j; ++copy) {
    g.set_block(copy * alpha, copy * alpha, a);
    for (int beta = 1; beta <= m; ++beta)
      g.set_block(copy * alpha,
                  ns.alpha + (copy * m + beta - 1) * N, block_b(C, beta));
    for (int gamma = 1; gamma <= m; ++gamma)
      g.set_block(ns.alpha + (copy * m + gamma - 1) * N, copy * alpha,
                  block_c(C, gamma));
    for (int phi = 1; phi <= m; ++phi)
      for (int psi = 1; psi <= m; ++psi)
        g.set_block(ns.alpha + (copy * m + phi - 1) * N,
                    ns.alpha + (copy * m + psi - 1) * N,
                    block_d(C, phi, psi));
  }
  return Colligation<F>(ns, C.flavor, std::move(g));
}

// ---- validation ------------------------------------------------------------

// Structural and flavor checks. Returns human-readable violations (empty =
// valid); never throws on a merely-invalid colligation.
template <class F>
std::vector<std::string> validate(const Colligation<F>& C,
                                  double tol = 1e-10) {
  std::vector<std::string> out;
  if (C.shape.alpha < 0 || C.shape.m < 1 || C.shape.N < 0)
    out.push_back("invalid shape " + C.shape.str());
  if (C.g.rows() != C.shape.total() || C.g.cols() != C.shape.total())
    out.push_back("matrix size " + std::to_string(C.g.rows()) + "x" +
                  std::to_string(C.g.cols()) + " does not match shape " +
                  C.shape.str());
  if (!out.empty()) return out;  // size-dependent checks need a sane matrix

  if (C.flavor == Flavor::invertible) {
    if constexpr (is_exact_v<F>) {
      if (is_zero(C.g.det())) out.push_back("flavor invertible but det = 0");
    } else {
      const auto sv = singular_values(C.g);
      if (!sv.empty() && sv.back() <= 1e-12 * std::max(1.0, sv.front()))
        out.push_back("flavor invertible but numerically singular");
    }
  }
  if (C.flavor == Flavor::unitary) {
    const Mat<F> gram = C.g.adjoint() * C.g;
    const Mat<F> eye = Mat<F>::identity(C.g.rows());
    if constexpr (is_exact_v<F>) {
      if (gram != eye) out.push_back("flavor unitary but g* g != 1");
    } else {
      const double defect = (gram - eye).max_abs();
      if (defect > tol)
        out.push_back("flavor unitary but ||g* g - 1|| = " +
                      std::to_string(defect));
    }
  }
  return out;
}

// ---- random generation -----------------------------------------------------

// Exact entries are small Gaussian rationals: numerators uniform in [-9, 9],
// denominators uniform in {1, 2, 3, 4}, independently for the real and
// imaginary parts. Keeps downstream polynomial coefficients readable.
inline ExactScalar random_exact_scalar(Rng& rng) {
  const Rational re(rng.uniform_int(-9, 9), rng.uniform_int(1, 4));
  const Rational im(rng.uniform_int(-9, 9), rng.uniform_int(1, 4));
  return {re, im};
}

inline Mat<ExactScalar> random_exact_matrix(int rows, int cols, Rng& rng) {
  Mat<ExactScalar> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = random_exact_scalar(rng);
  return m;
}

inline Mat<Cx> random_float_matrix(int rows, int cols, Rng& rng) {
  Mat<Cx> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = rng.complex_gaussian();
  return m;
}

inline Colligation<ExactScalar> random_colligation_exact(const Shape& shape,
                                                         Flavor flavor,
                                                         Rng& rng) {
  check_shape(shape);
  if (flavor == Flavor::unitary)
    throw InputError("exact mode supports flavors general and invertible");
  const int n = shape.total();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<ExactScalar> g = random_exact_matrix(n, n, rng);
    if (flavor == Flavor::invertible && is_zero(g.det())) continue;
    return Colligation<ExactScalar>(shape, flavor, std::move(g));
  }
  throw InputError("failed to sample an invertible exact colligation");
}

inline Colligation<Cx> random_colligation_float(const Shape& shape,
                                                Flavor flavor, Rng& rng) {
  check_shape(shape);
  const int n = shape.total();
  if (flavor == Flavor::unitary)
    return Colligation<Cx>(shape, flavor, haar_unitary(n, rng));
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<Cx> g = random_float_matrix(n, n, rng);
    if (flavor == Flavor::invertible) {
      const auto sv = singular_values(g);
      if (!sv.empty() && sv.back() <= 1e-12 * std::max(1.0, sv.front()))
        continue;
    }
    return Colligation<Cx>(shape, flavor, std::move(g));
  }
  throw InputError("failed to sample an invertible float colligation");
}

template <class F>
Colligation<F> random_colligation(const Shape& shape, Flavor flavor,
                                  Rng& rng) {
  if constexpr (is_exact_v<F>)
    return random_colligation_exact(shape, flavor, rng);
  else
    return random_colligation_float(shape, flavor, rng);
}

// Random inner group elements for conjugation tests.
inline InnerGroupElement<ExactScalar> random_inner_exact(int N, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<ExactScalar> u = random_exact_matrix(N, N, rng);
    if (N > 0 && is_zero(u.det())) continue;
    return {std::move(u), InnerGroupElement<ExactScalar>::Kind::general_linear};
  }
  throw InputError("failed to sample an invertible exact inner element");
}

inline InnerGroupElement<Cx> random_inner_unitary(int N, Rng& rng) {
  return {haar_unitary(N, rng), InnerGroupElement<Cx>::Kind::unitary};
}

inline InnerGroupElement<Cx> random_inner_float(int N, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<Cx> u = random_float_matrix(N, N, rng);
    const auto sv = singular_values(u);
    if (N > 0 && (sv.empty() || sv.back() <= 1e-10 * std::max(1.0, sv.front())))
      continue;
    return {std::move(u), InnerGroupElement<Cx>::Kind::general_linear};
  }
  throw InputError("failed to sample an invertible float inner element");
}

}  // namespace collig
