#pragma once

#include <vector>

#include "collig/colligation.hpp"

namespace collig {

namespace detail {

// Extension of g to inner size N1 + N2 acting as g on C^alpha + (V tensor
// Z_{N1}) and as the identity on V tensor Z_{N2}. Each inner block keeps the
// first factor's coordinates first (Z_{N1} then Z_{N2}).
template <class F>
Mat<F> extend_first(const Colligation<F>& g, int N2) {
  const int alpha = g.shape.alpha, m = g.shape.m, N1 = g.shape.N;
  const int N = N1 + N2;
  Mat<F> r(alpha + m * N, alpha + m * N);
  r.set_block(0, 0, block_a(g));
  for (int phi = 1; phi <= m; ++phi) {
    const int ro = alpha + (phi - 1) * N;
    r.set_block(0, ro, block_b(g, phi));
    r.set_block(ro, 0, block_c(g, phi));
    for (int k = 0; k < N2; ++k)
      r.at(ro + N1 + k, ro + N1 + k) = scalar_from_int(F{}, 1);
    for (int psi = 1; psi <= m; ++psi)
      r.set_block(ro, alpha + (psi - 1) * N, block_d(g, phi, psi));
  }
  return r;
}

// Extension of h acting as h on C^alpha + (V tensor Z_{N2}) and as the
// identity on V tensor Z_{N1}, in the same basis as extend_first.
template <class F>
Mat<F> extend_second(const Colligation<F>& h, int N1) {
  const int alpha = h.shape.alpha, m = h.shape.m, N2 = h.shape.N;
  const int N = N1 + N2;
  Mat<F> r(alpha + m * N, alpha + m * N);
  r.set_block(0, 0, block_a(h));
  for (int phi = 1; phi <= m; ++phi) {
    const int ro = alpha + (phi - 1) * N;
    r.set_block(0, ro + N1, block_b(h, phi));
    r.set_block(ro + N1, 0, block_c(h, phi));
    for (int k = 0; k < N1; ++k)
      r.at(ro + k, ro + k) = scalar_from_int(F{}, 1);
    for (int psi = 1; psi <= m; ++psi)
      r.set_block(ro + N1, alpha + (psi - 1) * N + N1,
                  block_d(h, phi, psi));
  }
  return r;
}

inline Flavor combine_flavors(Flavor x, Flavor y) {
  if (x == Flavor::unitary && y == Flavor::unitary) return Flavor::unitary;
  const bool xi = x != Flavor::general, yi = y != Flavor::general;
  return (xi && yi) ? Flavor::invertible : Flavor::general;
}

}  // namespace detail

// The product: both factors are extended by the identity on the other
// factor's inner space and multiplied as matrices. Inner coordinates of the
// result list the first factor's Z_{N1} before the second's Z_{N2} inside
// each of the m blocks; with that fixed ordering the product is associative
// at the matrix level, and the neutral elements are the N = 0 colligations
// with a = 1_alpha.
template <class F>
Colligation<F> circ(const Colligation<F>& g, const Colligation<F>& h) {
  if (g.shape.alpha != h.shape.alpha || g.shape.m != h.shape.m)
    throw InputError("circ needs matching (alpha, m): " + g.shape.str() +
                     " vs " + h.shape.str());
  const Shape ns{g.shape.alpha, g.shape.m, g.shape.N + h.shape.N};
  Mat<F> prod =
      detail::extend_first(g, h.shape.N) * detail::extend_second(h, g.shape.N);
  return Colligation<F>(ns, detail::combine_flavors(g.flavor, h.flavor),
                        std::move(prod));
}

template <class F>
Colligation<F> circ_chain(const std::vector<Colligation<F>>& factors) {
  if (factors.empty()) throw InputError("circ_chain needs >= 1 factor");
  Colligation<F> acc = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) acc = circ(acc, factors[i]);
  return acc;
}

// The neutral element of the given corner size: N = 0, a = 1_alpha.
template <class F>
Colligation<F> neutral_colligation(int alpha, int m) {
  return Colligation<F>(Shape{alpha, m, 0}, Flavor::unitary,
                        Mat<F>::identity(alpha));
}

// Identity colligation of full shape (g = 1): fixed point of embed, and the
// unit for characteristic data (char fn identically 1_alpha).
template <class F>
Colligation<F> identity_colligation(const Shape& s) {
  return Colligation<F>(s, Flavor::unitary, Mat<F>::identity(s.total()));
}

}  // namespace collig
