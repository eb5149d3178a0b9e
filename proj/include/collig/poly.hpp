#pragma once

#include <bit>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "collig/error.hpp"
#include "collig/matrix.hpp"
#include "collig/rng.hpp"
#include "collig/scalar.hpp"

namespace collig {

// Identifier of one polynomial variable. The matrix-entry variables carry the
// full index quadruple: s_{phi,psi} is the (phi,psi) block entry of the
// argument matrix, and (mu,nu) are copy indices once the argument has been
// amplified (both 1 when not). Generic throwaway variables use flat(i).
struct VarId {
  int phi = 0, psi = 0, mu = 1, nu = 1;

  static VarId s(int phi, int psi, int mu = 1, int nu = 1) {
    return {phi, psi, mu, nu};
  }
  static VarId flat(int i) { return {i, 0, 1, 1}; }

  friend bool operator==(const VarId&, const VarId&) = default;
  friend auto operator<=>(const VarId&, const VarId&) = default;

  std::string name() const {
    if (psi == 0) return "x" + std::to_string(phi);
    std::string n = "s" + std::to_string(phi) + std::to_string(psi);
    if (mu != 1 || nu != 1)
      n += "^" + std::to_string(mu) + std::to_string(nu);
    return n;
  }
};

using Expo = std::vector<int>;

inline int expo_degree(const Expo& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

// Graded lexicographic order on exponent vectors (total degree first, then
// lex on the variable list order). The map's largest element is the leading
// term.
struct GrlexLess {
  bool operator()(const Expo& x, const Expo& y) const {
    const int dx = expo_degree(x), dy = expo_degree(y);
    if (dx != dy) return dx < dy;
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(),
                                        y.end());
  }
};

// Sparse multivariate polynomial over the field F with a fixed, ordered
// variable list. Binary operations require identical variable lists; mixing
// is an InputError, never a silent coercion. Zero coefficients are never
// stored.
template <class F>
class SparsePoly {
 public:
  using TermMap = std::map<Expo, F, GrlexLess>;

  SparsePoly() = default;  // zero polynomial over an empty variable list
  explicit SparsePoly(std::vector<VarId> vars) : vars_(std::move(vars)) {}

  static SparsePoly constant(std::vector<VarId> vars, F c) {
    SparsePoly p(std::move(vars));
    p.add_term(Expo(p.vars_.size(), 0), std::move(c));
    return p;
  }
  static SparsePoly variable(std::vector<VarId> vars, int index) {
    SparsePoly p(std::move(vars));
    if (index < 0 || index >= static_cast<int>(p.vars_.size()))
      throw InputError("variable index out of range");
    Expo e(p.vars_.size(), 0);
    e[index] = 1;
    p.add_term(std::move(e), scalar_from_int(F{}, 1));
    return p;
  }
  static SparsePoly monomial(std::vector<VarId> vars, Expo e, F c) {
    SparsePoly p(std::move(vars));
    if (e.size() != p.vars_.size())
      throw InputError("monomial exponent length mismatch");
    p.add_term(std::move(e), std::move(c));
    return p;
  }

  const std::vector<VarId>& vars() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  // Max total degree over stored terms; -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, expo_degree(e));
    return d;
  }

  void add_term(Expo e, F c) {
    if (e.size() != vars_.size())
      throw InputError("exponent length mismatch");
    accumulate(e, std::move(c));
  }

  F coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? F{} : it->second;
  }

  std::pair<Expo, F> lead() const {
    if (terms_.empty()) throw InputError("leading term of zero polynomial");
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
  }

  bool is_constant_one() const {
    if (terms_.size() != 1) return false;
    const auto& [e, c] = *terms_.begin();
    return expo_degree(e) == 0 && c == scalar_from_int(F{}, 1);
  }

  friend SparsePoly operator+(const SparsePoly& x, const SparsePoly& y) {
    x.require_same_vars(y);
    SparsePoly r = x;
    for (const auto& [e, c] : y.terms_) r.accumulate(e, c);
    return r;
  }
  friend SparsePoly operator-(const SparsePoly& x, const SparsePoly& y) {
    x.require_same_vars(y);
    SparsePoly r = x;
    for (const auto& [e, c] : y.terms_) r.accumulate(e, -c);
    return r;
  }
  friend SparsePoly operator-(const SparsePoly& x) {
    SparsePoly r = x;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend SparsePoly operator*(const SparsePoly& x, const SparsePoly& y) {
    x.require_same_vars(y);
    SparsePoly r(x.vars_);
    Expo e(x.vars_.size());
    for (const auto& [ex, cx] : x.terms_)
      for (const auto& [ey, cy] : y.terms_) {
        for (size_t i = 0; i < e.size(); ++i) e[i] = ex[i] + ey[i];
        r.accumulate(e, cx * cy);
      }
    return r;
  }
  friend SparsePoly operator*(const F& s, const SparsePoly& x) {
    SparsePoly r(x.vars_);
    for (const auto& [e, c] : x.terms_) r.accumulate(e, s * c);
    return r;
  }
  SparsePoly& operator+=(const SparsePoly& y) { return *this = *this + y; }
  SparsePoly& operator-=(const SparsePoly& y) { return *this = *this - y; }
  SparsePoly& operator*=(const SparsePoly& y) { return *this = *this * y; }
  friend bool operator==(const SparsePoly& x, const SparsePoly& y) {
    return x.vars_ == y.vars_ && x.terms_ == y.terms_;
  }

  F eval(const std::vector<F>& point) const {
    if (point.size() != vars_.size())
      throw InputError("eval point length mismatch");
    F acc{};
    for (const auto& [e, c] : terms_) {
      F t = c;
      for (size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) t *= point[i];
      acc += t;
    }
    return acc;
  }

  // Drops every term in which some variable has exponent >= 2. Exponents only
  // add under multiplication, so working in this quotient is sound whenever
  // only multilinear coefficients of the result are consumed.
  SparsePoly multilinear_truncate() const {
    SparsePoly r(vars_);
    for (const auto& [e, c] : terms_) {
      bool keep = true;
      for (int v : e)
        if (v >= 2) {
          keep = false;
          break;
        }
      if (keep) r.terms_.emplace(e, c);
    }
    return r;
  }

  void require_same_vars(const SparsePoly& y) const {
    if (vars_ != y.vars_)
      throw InputError("polynomial variable lists differ");
  }

 private:
  void accumulate(const Expo& e, const F& c) {
    if (collig::is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (collig::is_zero(it->second)) terms_.erase(it);
    }
  }

  std::vector<VarId> vars_;
  TermMap terms_;
};

// Matrix with SparsePoly entries; all entries share one variable list.
template <class F>
class PolyMatrix {
 public:
  PolyMatrix(int rows, int cols, std::vector<VarId> vars)
      : rows_(rows), cols_(cols), vars_(std::move(vars)),
        a_(static_cast<size_t>(rows) * cols, SparsePoly<F>(vars_)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<VarId>& vars() const { return vars_; }

  SparsePoly<F>& at(int r, int c) {
    return a_[static_cast<size_t>(r) * cols_ + c];
  }
  const SparsePoly<F>& at(int r, int c) const {
    return a_[static_cast<size_t>(r) * cols_ + c];
  }

  void set(int r, int c, SparsePoly<F> p) {
    if (p.vars() != vars_)
      throw InputError("poly matrix entry variable list mismatch");
    at(r, c) = std::move(p);
  }

  // Constant matrix lifted into the polynomial ring.
  static PolyMatrix constant(const Mat<F>& m, std::vector<VarId> vars) {
    PolyMatrix r(m.rows(), m.cols(), std::move(vars));
    const Expo zero(r.vars_.size(), 0);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (!collig::is_zero(m.at(i, j))) r.at(i, j).add_term(zero, m.at(i, j));
    return r;
  }

  PolyMatrix multilinear_truncate() const {
    PolyMatrix r(rows_, cols_, vars_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        r.at(i, j) = at(i, j).multilinear_truncate();
    return r;
  }

  Mat<F> eval(const std::vector<F>& point) const {
    Mat<F> m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).eval(point);
    return m;
  }

  PolyMatrix submatrix(const std::vector<int>& rows,
                       const std::vector<int>& cols) const {
    PolyMatrix r(static_cast<int>(rows.size()),
                 static_cast<int>(cols.size()), vars_);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j)
        r.at(static_cast<int>(i), static_cast<int>(j)) =
            at(rows[i], cols[j]);
    return r;
  }

 private:
  int rows_, cols_;
  std::vector<VarId> vars_;
  std::vector<SparsePoly<F>> a_;
};

template <class F>
PolyMatrix<F> operator*(const PolyMatrix<F>& x, const PolyMatrix<F>& y) {
  if (x.cols() != y.rows())
    throw InputError("poly matrix product size mismatch");
  if (x.vars() != y.vars())
    throw InputError("poly matrix variable lists differ");
  PolyMatrix<F> r(x.rows(), y.cols(), x.vars());
  for (int i = 0; i < x.rows(); ++i)
    for (int k = 0; k < x.cols(); ++k) {
      const SparsePoly<F>& xe = x.at(i, k);
      if (xe.is_zero()) continue;
      for (int j = 0; j < y.cols(); ++j) {
        const SparsePoly<F>& ye = y.at(k, j);
        if (ye.is_zero()) continue;
        r.at(i, j) += xe * ye;
      }
    }
  return r;
}

template <class F>
PolyMatrix<F> operator+(const PolyMatrix<F>& x, const PolyMatrix<F>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw InputError("poly matrix sum size mismatch");
  if (x.vars() != y.vars())
    throw InputError("poly matrix variable lists differ");
  PolyMatrix<F> r = x;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) r.at(i, j) += y.at(i, j);
  return r;
}

namespace detail {

// Columns equal to the matching identity column contribute a factor 1 to the
// determinant (expansion along that column): strip them, iterating because a
// removal can expose new identity columns. Returns the surviving index set.
template <class F>
std::vector<int> strip_identity_columns(const PolyMatrix<F>& m,
                                        PolyMatrix<F>& out) {
  const int n = m.rows();
  std::vector<int> keep(n);
  std::iota(keep.begin(), keep.end(), 0);
  PolyMatrix<F> cur = m;
  bool changed = true;
  while (changed && !keep.empty()) {
    changed = false;
    const int k = static_cast<int>(keep.size());
    std::vector<int> survivors;
    for (int c = 0; c < k; ++c) {
      bool ident = cur.at(c, c).is_constant_one();
      for (int r = 0; ident && r < k; ++r)
        if (r != c && !cur.at(r, c).is_zero()) ident = false;
      if (!ident) survivors.push_back(c);
    }
    if (static_cast<int>(survivors.size()) != k) {
      changed = true;
      std::vector<int> new_keep;
      for (int idx : survivors) new_keep.push_back(keep[idx]);
      cur = cur.submatrix(survivors, survivors);
      keep = std::move(new_keep);
    }
  }
  out = std::move(cur);
  return keep;
}

}  // namespace detail

// Symbolic determinant by dynamic programming over column subsets (memoized
// Laplace expansion): O(2^n * n) polynomial multiply-adds on the stripped
// matrix. `cap` bounds the post-strip side. With `multilinear` set, every
// intermediate polynomial is truncated to the multilinear quotient (valid
// when only multilinear coefficients of the determinant are consumed).
template <class F>
SparsePoly<F> poly_det(const PolyMatrix<F>& m, int cap = 12,
                       bool multilinear = false) {
  if (m.rows() != m.cols())
    throw InputError("poly_det needs a square matrix");
  PolyMatrix<F> core(0, 0, m.vars());
  detail::strip_identity_columns(m, core);
  const int n = core.rows();
  if (n > cap)
    throw CapExceeded("poly_det side " + std::to_string(n) +
                      " exceeds cap " + std::to_string(cap));
  if (n == 0) return SparsePoly<F>::constant(m.vars(), scalar_from_int(F{}, 1));

  std::vector<SparsePoly<F>> dp(size_t{1} << n, SparsePoly<F>(m.vars()));
  dp[0] = SparsePoly<F>::constant(m.vars(), scalar_from_int(F{}, 1));
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const int row = std::popcount(mask) - 1;
    SparsePoly<F> acc(m.vars());
    int pos = 0;
    for (int c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      const SparsePoly<F>& entry = core.at(row, c);
      if (!entry.is_zero()) {
        SparsePoly<F> contrib = entry * dp[mask ^ (1u << c)];
        if (multilinear) contrib = contrib.multilinear_truncate();
        if ((row + pos) % 2 == 0)
          acc += contrib;
        else
          acc -= contrib;
      }
      ++pos;
    }
    dp[mask] = std::move(acc);
  }
  return dp[(size_t{1} << n) - 1];
}

// Exact multivariate division: returns the quotient iff divisor divides
// dividend exactly; non-divisibility is a distinct outcome (nullopt), not a
// failure. Works w.r.t. the graded-lex leading term; for a true factor the
// leading term stays divisible at every step.
template <class F>
std::optional<SparsePoly<F>> poly_divide_exact(const SparsePoly<F>& dividend,
                                               const SparsePoly<F>& divisor) {
  dividend.require_same_vars(divisor);
  if (divisor.is_zero()) throw InputError("division by zero polynomial");
  SparsePoly<F> q(dividend.vars());
  SparsePoly<F> r = dividend;
  const auto [de, dc] = divisor.lead();
  while (!r.is_zero()) {
    const auto [re, rc] = r.lead();
    Expo t(re.size());
    for (size_t i = 0; i < re.size(); ++i) {
      t[i] = re[i] - de[i];
      if (t[i] < 0) return std::nullopt;
    }
    SparsePoly<F> mono =
        SparsePoly<F>::monomial(dividend.vars(), std::move(t), rc / dc);
    q += mono;
    r -= mono * divisor;
  }
  return q;
}

// Probabilistic polynomial-identity test (Schwartz-Zippel): evaluates both
// sides at integer points from the box [-2B, 2B], B = max total degree (at
// least `deg_bound`, at least 1). Exact mode compares exactly; float mode
// within tol * max(1, |p|, |q|).
template <class F>
bool poly_equal_pit(const SparsePoly<F>& p, const SparsePoly<F>& q,
                    int trials, std::uint64_t seed, int deg_bound = 0,
                    double tol = 1e-9) {
  p.require_same_vars(q);
  const int b =
      std::max({p.total_degree(), q.total_degree(), deg_bound, 1});
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<F> point(p.nvars());
    for (auto& v : point)
      v = scalar_from_int(F{}, rng.uniform_int(-2 * b, 2 * b));
    const F pv = p.eval(point);
    const F qv = q.eval(point);
    if constexpr (is_exact_v<F>) {
      if (pv != qv) return false;
    } else {
      const double scale =
          std::max({1.0, approx_abs(pv), approx_abs(qv)});
      if (approx_abs(pv - qv) > tol * scale) return false;
    }
  }
  return true;
}

// log(p) in the multilinear quotient, for p with constant term exactly 1.
// Terms of the series beyond k = nvars vanish in the quotient.
template <class F>
SparsePoly<F> log_multilinear(const SparsePoly<F>& p) {
  if (p.coeff(Expo(p.nvars(), 0)) != scalar_from_int(F{}, 1))
    throw InputError("log_multilinear needs constant term 1");
  const SparsePoly<F> q =
      (p - SparsePoly<F>::constant(p.vars(), scalar_from_int(F{}, 1)))
          .multilinear_truncate();
  SparsePoly<F> acc(p.vars());
  SparsePoly<F> pw = q;
  for (int k = 1; k <= p.nvars() && !pw.is_zero(); ++k) {
    const F coef = scalar_from_int(F{}, (k % 2 == 1) ? 1 : -1) /
                   scalar_from_int(F{}, k);
    acc += coef * pw;
    pw = (pw * q).multilinear_truncate();
  }
  return acc;
}

// ---- univariate helpers (single-variable polynomials) ----------------------

template <class F>
int uni_degree(const SparsePoly<F>& p) {
  if (p.nvars() != 1) throw InputError("univariate operation on multivariate");
  return p.total_degree();
}

template <class F>
F uni_coeff(const SparsePoly<F>& p, int k) {
  return p.coeff(Expo{k});
}

template <class F>
SparsePoly<F> uni_monic(const SparsePoly<F>& p) {
  if (p.is_zero()) return p;
  const auto [e, c] = p.lead();
  return (scalar_from_int(F{}, 1) / c) * p;
}

// Quotient and remainder of univariate division.
template <class F>
std::pair<SparsePoly<F>, SparsePoly<F>> uni_divmod(const SparsePoly<F>& p,
                                                   const SparsePoly<F>& d) {
  if (uni_degree(d) < 0) throw InputError("univariate division by zero");
  SparsePoly<F> q(p.vars());
  SparsePoly<F> r = p;
  const auto [de, dc] = d.lead();
  while (!r.is_zero() && uni_degree(r) >= uni_degree(d)) {
    const auto [re, rc] = r.lead();
    SparsePoly<F> mono = SparsePoly<F>::monomial(
        p.vars(), Expo{re[0] - de[0]}, rc / dc);
    q += mono;
    r -= mono * d;
  }
  return {q, r};
}

// Monic gcd by the Euclidean algorithm (exact coefficients assumed).
template <class F>
SparsePoly<F> uni_gcd(SparsePoly<F> x, SparsePoly<F> y) {
  while (!y.is_zero()) {
    auto [q, r] = uni_divmod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return uni_monic(x);
}

}  // namespace collig
