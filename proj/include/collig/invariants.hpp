#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "collig/charfn.hpp"
#include "collig/colligation.hpp"
#include "collig/divisor.hpp"
#include "collig/matrix.hpp"
#include "collig/poly.hpp"
#include "collig/rng.hpp"
#include "collig/scalar.hpp"

namespace collig {

// Conjugation-invariant spectral data of a colligation, a fingerprint built
// from it, reconstruction of the same numbers from characteristic data alone,
// and a conjugacy oracle that searches for an explicit witness.

// A word is a sequence of d-block indices (phi, psi), 1-based.
using Word = std::vector<std::pair<int, int>>;

inline std::string word_str(const Word& w) {
  if (w.empty()) return "-";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(w[i].first) + std::to_string(w[i].second);
  }
  return s;
}

inline void check_word(const Word& w, int m) {
  for (const auto& [phi, psi] : w)
    if (phi < 1 || phi > m || psi < 1 || psi > m)
      throw InputError("word letter out of range for m = " +
                       std::to_string(m));
}

// Lexicographically smallest cyclic rotation. Traces are rotation-invariant,
// so this is the canonical representative of a cyclic class.
inline Word canonical_rotation(const Word& w) {
  Word best = w, cur = w;
  for (size_t r = 1; r < w.size(); ++r) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

// ---- direct evaluation ------------------------------------------------------

template <class F>
Mat<F> word_product(const Colligation<F>& C, const Word& w) {
  check_word(w, C.shape.m);
  Mat<F> p = Mat<F>::identity(C.shape.N);
  for (const auto& [phi, psi] : w) p = p * block_d(C, phi, psi);
  return p;
}

// tr(d_{phi_1 psi_1} ... d_{phi_n psi_n}). Conjugation replaces each factor
// by u d u^{-1}, which the trace kills.
template <class F>
F trace_word(const Colligation<F>& C, const Word& w) {
  if (w.empty()) throw InputError("trace word must be nonempty");
  return word_product(C, w).trace();
}

// Row k of b_beta times the word product times column l of c_gamma.
// Conjugation sends b to b u^{-1}, d-words to u (...) u^{-1} and c to u c,
// so the pairing is invariant (under all of GL(N), not just U(N)).
template <class F>
F cwb_invariant(const Colligation<F>& C, int gamma, int l, const Word& w,
                int beta, int k) {
  const int alpha = C.shape.alpha, m = C.shape.m;
  if (k < 1 || k > alpha || l < 1 || l > alpha)
    throw InputError("cwb row/column selector out of range");
  if (beta < 1 || beta > m || gamma < 1 || gamma > m)
    throw InputError("cwb block index out of range");
  const Mat<F> v = block_b(C, beta).row(k - 1) * word_product(C, w) *
                   block_c(C, gamma).col(l - 1);
  return v.at(0, 0);
}

struct CwbKey {
  int gamma = 1, l = 1;
  Word word;
  int beta = 1, k = 1;
  friend bool operator==(const CwbKey&, const CwbKey&) = default;
  friend auto operator<=>(const CwbKey&, const CwbKey&) = default;
};

struct PletKey {
  int side = 0;  // 0: rows of the b blocks, 1: columns of the c blocks
  std::vector<std::pair<int, int>> plet;  // ascending (block, selector) pairs
  friend bool operator==(const PletKey&, const PletKey&) = default;
  friend auto operator<=>(const PletKey&, const PletKey&) = default;
};

inline std::string plet_str(const PletKey& key) {
  std::string s = key.side == 0 ? "b:" : "c:";
  for (size_t i = 0; i < key.plet.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(key.plet[i].first) + std::to_string(key.plet[i].second);
  }
  return s;
}

namespace detail {

// Rows of all b blocks stacked beta-major: row (beta-1) alpha + (k-1) is row
// k of b_beta. Size (alpha m) x N.
template <class F>
Mat<F> stacked_b_rows(const Colligation<F>& C) {
  Mat<F> r(C.shape.alpha * C.shape.m, C.shape.N);
  for (int beta = 1; beta <= C.shape.m; ++beta)
    r.set_block((beta - 1) * C.shape.alpha, 0, block_b(C, beta));
  return r;
}

// Columns of all c blocks, gamma-major. Size N x (alpha m).
template <class F>
Mat<F> stacked_c_cols(const Colligation<F>& C) {
  Mat<F> r(C.shape.N, C.shape.alpha * C.shape.m);
  for (int gamma = 1; gamma <= C.shape.m; ++gamma)
    r.set_block(0, (gamma - 1) * C.shape.alpha, block_c(C, gamma));
  return r;
}

// Ascending index combinations of size n from {0, ..., pool-1}.
inline std::vector<std::vector<int>> combinations(int pool, int n) {
  std::vector<std::vector<int>> out;
  if (n < 0 || n > pool) return out;
  std::vector<int> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[i] == pool - n + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < n; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace detail

// N-plet determinants: dets of the N x N matrices formed by choosing N of the
// alpha m stacked b rows (resp. c columns). Empty when N > alpha m (no plet
// fits). Under conjugation the b side picks up det(u)^{-1} and the c side
// det(u), so these carry the volume data the traces and pairings miss, up to
// the one common factor that fingerprint comparison quotients out.
template <class F>
std::map<PletKey, F> sl_det_invariants(const Colligation<F>& C) {
  const int alpha = C.shape.alpha, m = C.shape.m, N = C.shape.N;
  std::map<PletKey, F> out;
  if (N > alpha * m) return out;  // no N-plet fits; nothing beyond the traces
  const Mat<F> B = detail::stacked_b_rows(C);
  const Mat<F> Cc = detail::stacked_c_cols(C);
  for (const auto& combo : detail::combinations(alpha * m, N)) {
    std::vector<std::pair<int, int>> plet;
    plet.reserve(combo.size());
    for (int idx : combo) plet.push_back({idx / alpha + 1, idx % alpha + 1});
    Mat<F> mb(N, N), mc(N, N);
    for (int t = 0; t < N; ++t) {
      mb.set_block(t, 0, B.row(combo[t]));
      mc.set_block(0, t, Cc.col(combo[t]));
    }
    out.emplace(PletKey{0, plet}, mb.det());
    out.emplace(PletKey{1, std::move(plet)}, mc.det());
  }
  return out;
}

// ---- fingerprint ------------------------------------------------------------

template <class F>
struct InvariantFingerprint {
  Shape shape;
  int max_word_len = 0;
  std::map<Word, F> trace_words;  // canonical cyclic representatives
  std::map<CwbKey, F> cwb;        // word lengths 0 .. max_word_len - 1
  Mat<F> a_entries;
  std::optional<std::map<PletKey, F>> sl_dets;  // present iff N <= alpha m
};

// Default word-length cap: N^2 (long enough in practice to separate what is
// separable at all; overridable everywhere it is consumed).
inline int default_word_cap(const Shape& s) { return s.N * s.N; }

namespace detail {

// Pre-necklace tree over the m^2 letters (phi, psi): visits, in
// lexicographic order, exactly the words that are the minimal rotation of
// their cyclic class, sharing path products along the way. a[t] is the
// 0-based letter at depth t, p the period of the prefix a[1..t-1]; a prefix
// is canonical precisely when its length divides into whole periods.
template <class F>
void trace_necklace_dfs(const std::vector<Mat<F>>& ds, int m, int max_len,
                        std::vector<int>& a, std::vector<Mat<F>>& prods,
                        int t, int p, std::vector<std::pair<Word, F>>& out) {
  if (t > max_len) return;
  const int K = m * m;
  for (int v = a[t - p]; v < K; ++v) {
    const int np = v == a[t - p] ? p : t;
    a[t] = v;
    prods[t] = prods[t - 1] * ds[v];
    if (t % np == 0) {
      Word w;
      w.reserve(t);
      for (int i = 1; i <= t; ++i)
        w.push_back({a[i] / m + 1, a[i] % m + 1});
      out.push_back({std::move(w), prods[t].trace()});
    }
    trace_necklace_dfs(ds, m, max_len, a, prods, t + 1, np, out);
  }
}

// Walks every word up to the cap (open words have no cyclic reduction),
// recording the full pairing matrix per word. Words arrive in lexicographic
// order, so consumers can assemble sorted maps with end-hinted inserts.
template <class F>
void cwb_collect(const std::vector<Mat<F>>& ds, int m, int max_wlen, Word& w,
                 const Mat<F>& running, const Mat<F>& cstack,
                 std::vector<Word>& words, std::vector<F>& vals) {
  const Mat<F> v = running * cstack;
  words.push_back(w);
  for (int r = 0; r < v.rows(); ++r)
    for (int c = 0; c < v.cols(); ++c) vals.push_back(v.at(r, c));
  if (static_cast<int>(w.size()) == max_wlen) return;
  for (int phi = 1; phi <= m; ++phi)
    for (int psi = 1; psi <= m; ++psi) {
      w.push_back({phi, psi});
      cwb_collect(ds, m, max_wlen, w, running * ds[(phi - 1) * m + psi - 1],
                  cstack, words, vals);
      w.pop_back();
    }
}

}  // namespace detail

template <class F>
InvariantFingerprint<F> fingerprint(const Colligation<F>& C,
                                    int max_word_len = -1) {
  if (max_word_len < 0)
    max_word_len = std::max(1, default_word_cap(C.shape));
  if (max_word_len < 1)
    throw InputError("fingerprint needs max word length >= 1");
  const int alpha = C.shape.alpha, m = C.shape.m, N = C.shape.N;
  InvariantFingerprint<F> fp;
  fp.shape = C.shape;
  fp.max_word_len = max_word_len;
  fp.a_entries = block_a(C);

  std::vector<Mat<F>> ds;
  ds.reserve(static_cast<size_t>(m) * m);
  for (int phi = 1; phi <= m; ++phi)
    for (int psi = 1; psi <= m; ++psi) ds.push_back(block_d(C, phi, psi));

  std::vector<int> a(max_word_len + 1, 0);
  std::vector<Mat<F>> prods(max_word_len + 1, Mat<F>::identity(N));
  std::vector<std::pair<Word, F>> traces;
  detail::trace_necklace_dfs(ds, m, max_word_len, a, prods, 1, 1, traces);
  for (auto& [w, val] : traces)
    fp.trace_words.emplace_hint(fp.trace_words.end(), std::move(w),
                                std::move(val));

  Word w;
  std::vector<Word> words;
  std::vector<F> vals;
  detail::cwb_collect(ds, m, max_word_len - 1, w, detail::stacked_b_rows(C),
                      detail::stacked_c_cols(C), words, vals);
  const size_t stride = static_cast<size_t>(alpha * m) * (alpha * m);
  for (int gamma = 1; gamma <= m; ++gamma)
    for (int l = 1; l <= alpha; ++l)
      for (size_t wi = 0; wi < words.size(); ++wi)
        for (int beta = 1; beta <= m; ++beta)
          for (int k = 1; k <= alpha; ++k)
            fp.cwb.emplace_hint(
                fp.cwb.end(), CwbKey{gamma, l, words[wi], beta, k},
                vals[wi * stride +
                     static_cast<size_t>((beta - 1) * alpha + k - 1) *
                         (alpha * m) +
                     (gamma - 1) * alpha + l - 1]);

  if (N <= alpha * m) fp.sl_dets = sl_det_invariants(C);
  return fp;
}

namespace detail {

template <class F>
bool value_close(const F& x, const F& y, double rel, double abs_floor) {
  if constexpr (is_exact_v<F>) {
    (void)rel;
    (void)abs_floor;
    return x == y;
  } else {
    return approx_abs(x - y) <=
           std::max(abs_floor, rel * std::max(approx_abs(x), approx_abs(y)));
  }
}

template <class K, class F>
bool map_close(const std::map<K, F>& x, const std::map<K, F>& y, double rel,
               double abs_floor) {
  if (x.size() != y.size()) return false;
  auto ix = x.begin();
  auto iy = y.begin();
  for (; ix != x.end(); ++ix, ++iy) {
    if (!(ix->first == iy->first)) return false;
    if (!value_close(ix->second, iy->second, rel, abs_floor)) return false;
  }
  return true;
}

// Plet determinants are invariants of the special linear group only: a
// witness u rescales every b-side det by 1/det(u) and every c-side det by
// det(u). Two det maps describe the same class when a single nonzero factor
// lambda accounts for both sides at once. Writing p = lambda q with the
// b-side stored as (x, y) and the c-side flipped to (y, x) makes that one
// proportionality check.
template <class F>
bool sl_dets_match(const std::map<PletKey, F>& x,
                   const std::map<PletKey, F>& y, double rel,
                   double abs_floor) {
  if (x.size() != y.size()) return false;
  std::vector<F> p, q;
  auto ix = x.begin();
  auto iy = y.begin();
  for (; ix != x.end(); ++ix, ++iy) {
    if (!(ix->first == iy->first)) return false;
    if (ix->first.side == 0) {
      p.push_back(ix->second);
      q.push_back(iy->second);
    } else {
      p.push_back(iy->second);
      q.push_back(ix->second);
    }
  }
  if constexpr (is_exact_v<F>) {
    (void)rel;
    (void)abs_floor;
    size_t ref = p.size();
    for (size_t i = 0; i < p.size(); ++i) {
      if (is_zero(p[i]) != is_zero(q[i])) return false;
      if (ref == p.size() && !is_zero(q[i])) ref = i;
    }
    if (ref == p.size()) return true;  // everything vanishes on both sides
    const F lambda = p[ref] / q[ref];
    for (size_t i = 0; i < p.size(); ++i)
      if (!(p[i] == lambda * q[i])) return false;
    return true;
  } else {
    // Reference index: the best-conditioned pair. If none clears the floor,
    // both maps must be zero to working precision.
    size_t ref = p.size();
    double best = abs_floor;
    for (size_t i = 0; i < p.size(); ++i) {
      const double mag = std::min(approx_abs(p[i]), approx_abs(q[i]));
      if (mag > best) {
        best = mag;
        ref = i;
      }
    }
    if (ref == p.size()) {
      for (size_t i = 0; i < p.size(); ++i)
        if (!value_close(p[i], F{}, rel, abs_floor) ||
            !value_close(q[i], F{}, rel, abs_floor))
          return false;
      return true;
    }
    const F lambda = p[ref] / q[ref];
    for (size_t i = 0; i < p.size(); ++i)
      if (!value_close(p[i], lambda * q[i], rel, abs_floor)) return false;
    return true;
  }
}

}  // namespace detail

// Exact mode compares exactly; float mode uses |x - y| <=
// max(abs_floor, rel * max(|x|, |y|)) per value. Key sets must agree. Plet
// determinants are compared up to one consistent nonzero factor (see
// sl_dets_match); everything else entry by entry.
template <class F>
bool fingerprint_equal(const InvariantFingerprint<F>& x,
                       const InvariantFingerprint<F>& y, double rel = 1e-8,
                       double abs_floor = 1e-10) {
  if (!(x.shape == y.shape) || x.max_word_len != y.max_word_len) return false;
  if (x.sl_dets.has_value() != y.sl_dets.has_value()) return false;
  if (x.a_entries.rows() != y.a_entries.rows() ||
      x.a_entries.cols() != y.a_entries.cols())
    return false;
  for (int i = 0; i < x.a_entries.rows(); ++i)
    for (int j = 0; j < x.a_entries.cols(); ++j)
      if (!detail::value_close(x.a_entries.at(i, j), y.a_entries.at(i, j),
                               rel, abs_floor))
        return false;
  if (!detail::map_close(x.trace_words, y.trace_words, rel, abs_floor))
    return false;
  if (!detail::map_close(x.cwb, y.cwb, rel, abs_floor)) return false;
  if (x.sl_dets &&
      !detail::sl_dets_match(*x.sl_dets, *y.sl_dets, rel, abs_floor))
    return false;
  return true;
}

// ---- reconstruction from characteristic data --------------------------------
// Both invariant families can be read back off the divisor polynomials and
// characteristic functions of amplifications, which is what makes the
// fingerprint a function of the characteristic data alone. Exact mode works
// with restricted symbolic divisors (all argument entries zero except the
// few that carry the word); float mode replaces coefficient extraction by
// central divided differences of the evaluated data at step h.

// tr(d-word) of length n: amplify n-fold and read the coefficient of the
// n-cycle monomial u_1 ... u_n, u_i = s_{psi_i phi_{i+1}}^{(i, i+1 cyc)}, in
// -log p. Only the n cyclic rotations of the cycle hit that monomial, and the
// 1/n of the log series cancels against them.
inline ExactScalar reconstruct_trace_word_exact(
    const Colligation<ExactScalar>& C, const Word& w, int cap = 12) {
  if (w.empty()) throw InputError("trace word must be nonempty");
  check_word(w, C.shape.m);
  const int n = static_cast<int>(w.size()), m = C.shape.m;
  const Colligation<ExactScalar> A = amplify(C, n);
  std::vector<VarId> vars;
  std::map<std::pair<int, int>, int> var_of;
  for (int i = 1; i <= n; ++i) {
    const int psi_i = w[i - 1].second;
    const int phi_next = w[i % n].first;
    const int nu = (i % n) + 1;
    vars.push_back(VarId::s(psi_i, phi_next, i, nu));
    var_of[{(i - 1) * m + psi_i, (nu - 1) * m + phi_next}] = i - 1;
  }
  const SparsePoly<ExactScalar> p = poly_det(
      one_minus_d_stilde_poly(A, std::move(vars), var_of), cap,
      /*multilinear=*/true);
  return -log_multilinear(p).coeff(Expo(n, 1));
}

inline Cx reconstruct_trace_word_float(const Colligation<Cx>& C,
                                       const Word& w, double h = 3e-3) {
  if (w.empty()) throw InputError("trace word must be nonempty");
  check_word(w, C.shape.m);
  const int n = static_cast<int>(w.size()), m = C.shape.m;
  const Colligation<Cx> A = amplify(C, n);
  std::vector<std::pair<int, int>> bps;  // 0-based (row, col) of S entries
  for (int i = 1; i <= n; ++i) {
    const int psi_i = w[i - 1].second;
    const int phi_next = w[i % n].first;
    const int nu = (i % n) + 1;
    bps.push_back({(i - 1) * m + psi_i - 1, (nu - 1) * m + phi_next - 1});
  }
  const auto diff = [&](double step) {
    Cx acc = 0;
    for (int mask = 0; mask < (1 << n); ++mask) {
      Mat<Cx> S(n * m, n * m);
      double sign = 1;
      for (int t = 0; t < n; ++t) {
        const double eps = ((mask >> t) & 1) ? 1.0 : -1.0;
        sign *= eps;
        S.at(bps[t].first, bps[t].second) = step * eps;
      }
      acc += sign * std::log(p_eval(A, S));
    }
    return -acc / std::pow(2 * step, n);
  };
  // The restricted log-divisor is analytic but not multilinear (the cycle
  // closes on itself), so a plain difference carries an O(h^2) term while
  // roundoff in the evaluations grows like eps / (2h)^n. One Richardson
  // step at a wide base keeps both well under 1e-6 through length 4.
  return (4.0 * diff(h) - diff(2.0 * h)) / 3.0;
}

template <class F>
F reconstruct_trace_word(const Colligation<F>& C, const Word& w, int cap = 12,
                         double h = 3e-3) {
  if constexpr (is_exact_v<F>)
    return reconstruct_trace_word_exact(C, w, cap);
  else {
    (void)cap;
    return reconstruct_trace_word_float(C, w, h);
  }
}

namespace detail {

// Distinct copy chain for the open-word pairing: the b row reads off copy 1,
// the c column off copy 2, the n word letters run through copies 3..n+2.
// Returns the 1-based (row block, col block) pairs of the n+1 variables.
inline std::vector<std::pair<int, int>> cwb_block_pairs(const Word& w,
                                                        int gamma, int beta,
                                                        int m) {
  const int n = static_cast<int>(w.size());
  std::vector<std::pair<int, int>> bps;
  if (n == 0) {
    bps.push_back({beta, m + gamma});
    return bps;
  }
  bps.push_back({beta, 2 * m + w[0].first});
  for (int r = 1; r <= n - 1; ++r)
    bps.push_back({(r + 1) * m + w[r - 1].second, (r + 2) * m + w[r].first});
  bps.push_back({(n + 1) * m + w[n - 1].second, m + gamma});
  return bps;
}

}  // namespace detail

// b_beta[k] d_word c_gamma[l] via the characteristic function of the
// (n+2)-fold amplification: the coefficient of u_1 ... u_{n+1} in the
// (copy-1 row k, copy-2 column l) entry. The chain of copies makes the
// contributing path unique, so the coefficient needs no normalization.
inline ExactScalar reconstruct_cwb_exact(const Colligation<ExactScalar>& C,
                                         int gamma, int l, const Word& w,
                                         int beta, int k) {
  const int alpha = C.shape.alpha, m = C.shape.m, N = C.shape.N;
  if (k < 1 || k > alpha || l < 1 || l > alpha)
    throw InputError("cwb row/column selector out of range");
  if (beta < 1 || beta > m || gamma < 1 || gamma > m)
    throw InputError("cwb block index out of range");
  check_word(w, m);
  const int n = static_cast<int>(w.size());
  const int j = n + 2;
  const Colligation<ExactScalar> A = amplify(C, j);
  const auto bps = detail::cwb_block_pairs(w, gamma, beta, m);
  const int nv = n + 1;

  std::vector<VarId> vars;
  for (int t = 0; t < nv; ++t) {
    const auto [rb, cb] = bps[t];
    vars.push_back(VarId::s((rb - 1) % m + 1, (cb - 1) % m + 1,
                            (rb - 1) / m + 1, (cb - 1) / m + 1));
  }
  PolyMatrix<ExactScalar> Sigma(j * m * N, j * m * N, vars);
  for (int t = 0; t < nv; ++t) {
    Expo e(nv, 0);
    e[t] = 1;
    for (int i = 0; i < N; ++i)
      Sigma.at((bps[t].first - 1) * N + i, (bps[t].second - 1) * N + i)
          .add_term(e, ExactScalar(1));
  }
  const auto Bp = PolyMatrix<ExactScalar>::constant(block_b_all(A), vars);
  const auto Dp = PolyMatrix<ExactScalar>::constant(block_d_all(A), vars);
  const auto Cp = PolyMatrix<ExactScalar>::constant(block_c_all(A), vars);

  // Neumann series of (1 - D Sigma)^{-1} C to word length, Horner style,
  // truncated to the multilinear quotient at every step.
  PolyMatrix<ExactScalar> acc = Cp;
  for (int t = 0; t < n; ++t)
    acc = Cp + (Dp * (Sigma * acc)).multilinear_truncate();
  const PolyMatrix<ExactScalar> X =
      (Bp * (Sigma * acc)).multilinear_truncate();
  return X.at(k - 1, alpha + l - 1).coeff(Expo(nv, 1));
}

inline Cx reconstruct_cwb_float(const Colligation<Cx>& C, int gamma, int l,
                                const Word& w, int beta, int k,
                                double h = 1e-4) {
  const int alpha = C.shape.alpha, m = C.shape.m;
  if (k < 1 || k > alpha || l < 1 || l > alpha)
    throw InputError("cwb row/column selector out of range");
  if (beta < 1 || beta > m || gamma < 1 || gamma > m)
    throw InputError("cwb block index out of range");
  check_word(w, m);
  const int n = static_cast<int>(w.size());
  const int j = n + 2;
  const Colligation<Cx> A = amplify(C, j);
  const auto bps = detail::cwb_block_pairs(w, gamma, beta, m);
  const int nv = n + 1;
  Cx acc = 0;
  for (int mask = 0; mask < (1 << nv); ++mask) {
    Mat<Cx> S(j * m, j * m);
    double sign = 1;
    for (int t = 0; t < nv; ++t) {
      const double eps = ((mask >> t) & 1) ? 1.0 : -1.0;
      sign *= eps;
      S.at(bps[t].first - 1, bps[t].second - 1) = h * eps;
    }
    const Mat<Cx> chi = charfn_eval(A, S);
    acc += sign * chi.at(k - 1, alpha + l - 1);
  }
  return acc / std::pow(2 * h, nv);
}

template <class F>
F reconstruct_cwb(const Colligation<F>& C, int gamma, int l, const Word& w,
                  int beta, int k, double h = 1e-4) {
  if constexpr (is_exact_v<F>) {
    (void)h;
    return reconstruct_cwb_exact(C, gamma, l, w, beta, k);
  } else {
    return reconstruct_cwb_float(C, gamma, l, w, beta, k, h);
  }
}

// ---- conjugacy oracle -------------------------------------------------------

enum class ConjugacyKind { conjugate, not_conjugate, inconclusive };

inline const char* conjugacy_kind_name(ConjugacyKind k) {
  switch (k) {
    case ConjugacyKind::conjugate: return "conjugate";
    case ConjugacyKind::not_conjugate: return "not-conjugate";
    case ConjugacyKind::inconclusive: return "inconclusive";
  }
  return "?";
}

template <class F>
struct ConjugacyVerdict {
  ConjugacyKind kind = ConjugacyKind::inconclusive;
  std::optional<Mat<F>> witness;  // u with iota(u) g iota(u)^{-1} = g'
};

// Decides conjugacy by brute force on the intertwining equations. The system
// iota(u) g = g' iota(u) is homogenized with a scalar t multiplying the
// constant blocks:
//
//   u c_gamma = t c'_gamma,   b'_beta u = t b_beta,   u d = d' u,
//
// after checking the hard constraint a = a'. A nullspace vector with t != 0
// and u invertible rescales to a witness. If the nullspace is zero, or t
// vanishes on all of it, the colligations are not conjugate (definitive in
// exact mode). Random integer combinations of the basis are dense enough to
// find a witness when one exists; failing all trials is inconclusive.
template <class F>
ConjugacyVerdict<F> conjugacy_oracle(const Colligation<F>& C1,
                                     const Colligation<F>& C2, int trials = 20,
                                     std::uint64_t seed = 12345) {
  if (!(C1.shape == C2.shape))
    throw InputError("conjugacy oracle needs equal shapes");
  const int alpha = C1.shape.alpha, m = C1.shape.m, N = C1.shape.N;

  bool a_match;
  if constexpr (is_exact_v<F>)
    a_match = block_a(C1) == block_a(C2);
  else
    a_match = approx_equal(block_a(C1), block_a(C2), 1e-9);
  if (!a_match) return {ConjugacyKind::not_conjugate, std::nullopt};

  const int nu = N * N + 1;  // unknowns: u row-major, then t
  const int rows = 2 * m * alpha * N + m * m * N * N;
  Mat<F> A(rows, nu);
  const auto uidx = [N](int i, int j) { return i * N + j; };
  int eq = 0;
  for (int gamma = 1; gamma <= m; ++gamma) {
    const Mat<F> c1 = block_c(C1, gamma), c2 = block_c(C2, gamma);
    for (int i = 0; i < N; ++i)
      for (int j2 = 0; j2 < alpha; ++j2) {
        for (int j = 0; j < N; ++j) A.at(eq, uidx(i, j)) += c1.at(j, j2);
        A.at(eq, N * N) -= c2.at(i, j2);
        ++eq;
      }
  }
  for (int beta = 1; beta <= m; ++beta) {
    const Mat<F> b1 = block_b(C1, beta), b2 = block_b(C2, beta);
    for (int kk = 0; kk < alpha; ++kk)
      for (int j = 0; j < N; ++j) {
        for (int i = 0; i < N; ++i) A.at(eq, uidx(i, j)) += b2.at(kk, i);
        A.at(eq, N * N) -= b1.at(kk, j);
        ++eq;
      }
  }
  for (int phi = 1; phi <= m; ++phi)
    for (int psi = 1; psi <= m; ++psi) {
      const Mat<F> d1 = block_d(C1, phi, psi), d2 = block_d(C2, phi, psi);
      for (int i = 0; i < N; ++i)
        for (int j2 = 0; j2 < N; ++j2) {
          for (int j = 0; j < N; ++j) A.at(eq, uidx(i, j)) += d1.at(j, j2);
          for (int i2 = 0; i2 < N; ++i2)
            A.at(eq, uidx(i2, j2)) -= d2.at(i, i2);
          ++eq;
        }
    }

  const Mat<F> K = A.nullspace();
  const int dim = K.cols();
  if (dim == 0) return {ConjugacyKind::not_conjugate, std::nullopt};

  bool t_reachable = false;
  for (int s = 0; s < dim && !t_reachable; ++s) {
    if constexpr (is_exact_v<F>)
      t_reachable = !is_zero(K.at(N * N, s));
    else
      t_reachable =
          approx_abs(K.at(N * N, s)) > 1e-9 * std::max(1.0, K.max_abs());
  }
  if (!t_reachable) return {ConjugacyKind::not_conjugate, std::nullopt};

  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    Mat<F> v(nu, 1);
    for (int s = 0; s < dim; ++s) {
      const F r = scalar_from_int(F{}, rng.uniform_int(-9, 9));
      for (int i = 0; i < nu; ++i) v.at(i, 0) += r * K.at(i, s);
    }
    const F t = v.at(N * N, 0);
    bool t_ok;
    if constexpr (is_exact_v<F>)
      t_ok = !is_zero(t);
    else
      t_ok = approx_abs(t) > 1e-9;
    if (!t_ok) continue;
    Mat<F> u(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) u.at(i, j) = v.at(uidx(i, j), 0) / t;
    try {
      const Mat<F> io = iota(u, alpha, m);
      const Mat<F> gg = io * C1.g * io.inverse();
      bool match;
      if constexpr (is_exact_v<F>)
        match = gg == C2.g;
      else
        match = approx_equal(gg, C2.g, 1e-8);
      if (match) return {ConjugacyKind::conjugate, std::move(u)};
    } catch (const SingularMatrixError&) {
      // u not invertible for this combination; resample
    }
  }
  return {ConjugacyKind::inconclusive, std::nullopt};
}

}  // namespace collig
