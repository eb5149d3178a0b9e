#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "collig/colligation.hpp"
#include "collig/poly.hpp"
#include "collig/semigroup.hpp"

namespace collig {

// Divisor data of a colligation: the polynomial p_g(S) = det(1 - d S~) in
// the matrix-argument entries, its distinguished components, and the m = 1
// reduced-denominator refinement. Exact arithmetic throughout the polynomial
// layer; evaluation helpers work in both modes.

// Canonical variable list for the entries of a (j m) x (j m) argument matrix,
// row-major over block pairs. Quadruples are named relative to the base m:
// block row rb = (mu-1) m + phi, block column cb = (nu-1) m + psi.
inline std::vector<VarId> s_var_list(int m, int j = 1) {
  std::vector<VarId> vars;
  vars.reserve(static_cast<size_t>(j * m) * (j * m));
  for (int rb = 1; rb <= j * m; ++rb)
    for (int cb = 1; cb <= j * m; ++cb)
      vars.push_back(VarId::s((rb - 1) % m + 1, (cb - 1) % m + 1,
                              (rb - 1) / m + 1, (cb - 1) / m + 1));
  return vars;
}

// Symbolic 1 - d S~ for the colligation A, with the argument matrix S kept
// symbolic only at the block pairs listed in `var_of` ((rb, cb), 1-based,
// mapping to indices into `vars`); every other S entry is zero. Entries are
// affine in the variables.
template <class F>
PolyMatrix<F> one_minus_d_stilde_poly(
    const Colligation<F>& A, std::vector<VarId> vars,
    const std::map<std::pair<int, int>, int>& var_of) {
  const int m = A.shape.m, N = A.shape.N, inner = m * N;
  PolyMatrix<F> M(inner, inner, std::move(vars));
  const int nv = static_cast<int>(M.vars().size());
  for (int i = 0; i < inner; ++i)
    M.at(i, i).add_term(Expo(nv, 0), scalar_from_int(F{}, 1));
  const Mat<F> d = block_d_all(A);
  for (const auto& [pair, vidx] : var_of) {
    const auto [tb, cb] = pair;  // S block entry s_{tb, cb} = variable vidx
    Expo e(nv, 0);
    e[vidx] = 1;
    for (int rb = 1; rb <= m; ++rb)
      for (int i = 0; i < N; ++i)
        for (int i2 = 0; i2 < N; ++i2) {
          const F& coef = d.at((rb - 1) * N + i, (tb - 1) * N + i2);
          if (is_zero(coef)) continue;
          M.at((rb - 1) * N + i, (cb - 1) * N + i2).add_term(e, -coef);
        }
  }
  return M;
}

// Full symbolic divisor polynomial of the j-fold amplification (j = 1: the
// colligation itself): det(1 - d^{[j]} S~) over all (j m)^2 argument entries.
// Total degree <= j m N, with equality generically.
inline SparsePoly<ExactScalar> p_poly(const Colligation<ExactScalar>& C,
                                      int j = 1, int cap = 12) {
  const Colligation<ExactScalar> A = (j == 1) ? C : amplify(C, j);
  const int mm = A.shape.m;
  std::map<std::pair<int, int>, int> var_of;
  for (int rb = 1; rb <= mm; ++rb)
    for (int cb = 1; cb <= mm; ++cb)
      var_of[{rb, cb}] = (rb - 1) * mm + (cb - 1);
  return poly_det(
      one_minus_d_stilde_poly(A, s_var_list(C.shape.m, j), var_of), cap);
}

// The delta component det(1 - S), over the same variable list as p_poly at
// j = 1 so quotients are well-typed.
inline SparsePoly<ExactScalar> det_one_minus_s_poly(int m, int cap = 12) {
  std::vector<VarId> vars = s_var_list(m, 1);
  PolyMatrix<ExactScalar> M(m, m, vars);
  const int nv = m * m;
  for (int phi = 1; phi <= m; ++phi) {
    M.at(phi - 1, phi - 1).add_term(Expo(nv, 0), ExactScalar(1));
    for (int psi = 1; psi <= m; ++psi) {
      Expo e(nv, 0);
      e[(phi - 1) * m + (psi - 1)] = 1;
      M.at(phi - 1, psi - 1).add_term(std::move(e), ExactScalar(-1));
    }
  }
  return poly_det(M, cap);
}

// Numeric divisor value at a concrete argument (no pole semantics: the
// polynomial is defined everywhere).
template <class F>
F p_eval(const Colligation<F>& C, const Mat<F>& S) {
  if (S.rows() != C.shape.m || S.cols() != C.shape.m)
    throw InputError("argument matrix must be m x m for this colligation");
  const Mat<F> M = Mat<F>::identity(C.shape.m * C.shape.N) -
                   block_d_all(C) * inflate(S, C.shape.N);
  return M.det();
}

// Value of the divisor equation in the Lambda chart: det(d - Lambda~). For
// invertible Lambda and S = Lambda^{-1}: det(d - Lambda~) =
// det(-Lambda~) det(1 - d S~).
template <class F>
F lambda_chart_eval(const Colligation<F>& C, const Mat<F>& Lambda) {
  if (Lambda.rows() != C.shape.m || Lambda.cols() != C.shape.m)
    throw InputError("argument matrix must be m x m for this colligation");
  return (block_d_all(C) - inflate(Lambda, C.shape.N)).det();
}

// Multiplicity of the delta component det(1 - S) = 0 in the divisor: the
// number of times det(1 - S) divides p exactly.
inline int delta_multiplicity(const Colligation<ExactScalar>& C,
                              int cap = 12) {
  SparsePoly<ExactScalar> p = p_poly(C, 1, cap);
  const SparsePoly<ExactScalar> q = det_one_minus_s_poly(C.shape.m, cap);
  int mult = 0;
  while (true) {
    auto quo = poly_divide_exact(p, q);
    if (!quo) return mult;
    p = std::move(*quo);
    ++mult;
  }
}

// Multiplicity of the det(Lambda) = 0 component read off the degree
// deficiency: deg p = m (N - l) when the component enters with multiplicity
// l. Returns nullopt ("inapplicable") when m does not divide the deficiency.
inline std::optional<int> det_lambda_multiplicity(
    const Colligation<ExactScalar>& C, int cap = 12) {
  const SparsePoly<ExactScalar> p = p_poly(C, 1, cap);
  const int deficiency = C.shape.m * C.shape.N - p.total_degree();
  if (deficiency % C.shape.m != 0) return std::nullopt;
  return deficiency / C.shape.m;
}

struct DivisorSummary {
  SparsePoly<ExactScalar> p;
  int total_degree = 0;
  int delta_mult = 0;
  std::optional<int> det_lambda_mult;
  int residual_degree = 0;  // degree after removing the delta component
};

inline DivisorSummary divisor_summary(const Colligation<ExactScalar>& C,
                                      int cap = 12) {
  DivisorSummary s;
  s.p = p_poly(C, 1, cap);
  s.total_degree = s.p.total_degree();
  s.delta_mult = delta_multiplicity(C, cap);
  s.det_lambda_mult = det_lambda_multiplicity(C, cap);
  s.residual_degree = s.total_degree - C.shape.m * s.delta_mult;
  return s;
}

// ---- m = 1: reduced denominator, inner/outer split, cocycle ----------------
// For m = 1 the argument is a single scalar s, det chi_g(s) is a rational
// function, and its reduced denominator P_g refines the divisor: p_g =
// pi_g P_g with P_g monic. Univariate gcds keep everything exact; none of
// this is attempted for m > 1.

struct RationalFunction1D {
  SparsePoly<ExactScalar> num, den;  // reduced; den monic

  static RationalFunction1D make(SparsePoly<ExactScalar> n,
                                 SparsePoly<ExactScalar> d) {
    if (d.is_zero()) throw InputError("rational function with zero denominator");
    const SparsePoly<ExactScalar> g = uni_gcd(n, d);
    if (uni_degree(g) > 0) {
      n = uni_divmod(n, g).first;
      d = uni_divmod(d, g).first;
    }
    const auto [e, lc] = d.lead();
    const ExactScalar inv_lc = ExactScalar(1) / lc;
    return {inv_lc * n, inv_lc * d};
  }

  bool is_polynomial() const { return den.is_constant_one(); }
};

struct ReducedCharDet {
  SparsePoly<ExactScalar> P;   // monic reduced denominator of det chi_g
  SparsePoly<ExactScalar> pi;  // p_g / P_g (exact quotient)
};

inline ReducedCharDet reduced_denominator_m1(const Colligation<ExactScalar>& C,
                                             int cap = 12) {
  if (C.shape.m != 1)
    throw InputError("reduced denominator is defined for m = 1 only");
  const int alpha = C.shape.alpha, N = C.shape.N;
  const std::vector<VarId> vars = s_var_list(1, 1);

  // Numerator: det [[a, -s b], [c, 1 - s d]]; denominator: p_g = det(1 - s d).
  PolyMatrix<ExactScalar> big(alpha + N, alpha + N, vars);
  const Mat<ExactScalar>& g = C.g;
  for (int r = 0; r < alpha + N; ++r)
    for (int c = 0; c < alpha + N; ++c) {
      SparsePoly<ExactScalar> entry(vars);
      if (r < alpha && c < alpha) {
        entry.add_term(Expo{0}, g.at(r, c));
      } else if (r < alpha) {
        entry.add_term(Expo{1}, -g.at(r, c));  // -s b
      } else if (c < alpha) {
        entry.add_term(Expo{0}, g.at(r, c));
      } else {
        if (r == c) entry.add_term(Expo{0}, ExactScalar(1));
        entry.add_term(Expo{1}, -g.at(r, c));  // 1 - s d
      }
      big.set(r, c, std::move(entry));
    }
  const SparsePoly<ExactScalar> num = poly_det(big, cap);
  const SparsePoly<ExactScalar> p = p_poly(C, 1, cap);

  const RationalFunction1D frac = RationalFunction1D::make(num, p);
  ReducedCharDet out;
  out.P = frac.den;
  auto [quo, rem] = uni_divmod(p, out.P);
  if (!rem.is_zero())
    throw std::logic_error("reduced denominator must divide p");
  out.pi = std::move(quo);
  return out;
}

// c_{g,h} = P_g P_h / P_{g circ h}, reduced. On cancellation pairs this is a
// nonconstant polynomial and pi_{g circ h} = pi_g pi_h c_{g,h}.
inline RationalFunction1D cocycle_m1(const Colligation<ExactScalar>& g,
                                     const Colligation<ExactScalar>& h,
                                     int cap = 12) {
  if (g.shape.m != 1 || h.shape.m != 1)
    throw InputError("cocycle is defined for m = 1 only");
  const SparsePoly<ExactScalar> pg = reduced_denominator_m1(g, cap).P;
  const SparsePoly<ExactScalar> ph = reduced_denominator_m1(h, cap).P;
  const SparsePoly<ExactScalar> pgh =
      reduced_denominator_m1(circ(g, h), cap).P;
  return RationalFunction1D::make(pg * ph, pgh);
}

}  // namespace collig
