#include "collig/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "collig/charfn.hpp"
#include "collig/colligation.hpp"
#include "collig/divisor.hpp"
#include "collig/error.hpp"
#include "collig/invariants.hpp"
#include "collig/numeric.hpp"
#include "collig/rng.hpp"
#include "collig/semigroup.hpp"

namespace collig {
namespace {

std::string case_name(const char* stem, int i) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s-%02d", stem, i + 1);
  return buf;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string shape_str(const Shape& s) {
  return "alpha=" + std::to_string(s.alpha) + " m=" + std::to_string(s.m) +
         " N=" + std::to_string(s.N);
}

double max_abs(const Mat<Cx>& m) {
  double r = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m.at(i, j)));
  return r;
}

// Worst entry of x - y over a scale floored at 1.
double rel_residual(const Mat<Cx>& x, const Mat<Cx>& y) {
  const double scale = std::max({1.0, max_abs(x), max_abs(y)});
  return max_abs(x - y) / scale;
}

double rel_residual(const Cx& x, const Cx& y) {
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) / scale;
}

template <class F>
Mat<F> rand_square(int n, Rng& rng) {
  if constexpr (is_exact_v<F>)
    return random_exact_matrix(n, n, rng);
  else
    return random_float_matrix(n, n, rng);
}

template <class F>
Mat<F> rand_invertible(int n, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<F> h = rand_square<F>(n, rng);
    try {
      (void)h.inverse();
      return h;
    } catch (const SingularMatrixError&) {
    }
  }
  throw std::logic_error("no invertible sample in 64 draws");
}

struct PairShape {
  int alpha, m, N1, N2;
};

std::string pair_str(const PairShape& ps) {
  return "alpha=" + std::to_string(ps.alpha) + " m=" + std::to_string(ps.m) +
         " N1=" + std::to_string(ps.N1) + " N2=" + std::to_string(ps.N2);
}

// ---- multiplicativity --------------------------------------------------------

template <class F>
void multiplicativity_cases(const RunConfig& cfg, Report& rep) {
  static constexpr PairShape kPool[] = {
      {1, 1, 1, 1}, {1, 2, 1, 2}, {2, 1, 2, 1}, {1, 2, 2, 2},
      {2, 2, 1, 1}, {2, 2, 2, 2}, {1, 1, 2, 0}, {2, 2, 0, 1},
  };
  constexpr int kPoolSize = static_cast<int>(std::size(kPool));
  constexpr int kPoints = 20;
  Rng rng(cfg.seed);
  for (int i = 0; i < cfg.trials; ++i) {
    const PairShape& ps = kPool[i % kPoolSize];
    const auto g = random_colligation<F>(Shape{ps.alpha, ps.m, ps.N1},
                                         Flavor::general, rng);
    const auto h = random_colligation<F>(Shape{ps.alpha, ps.m, ps.N2},
                                         Flavor::general, rng);
    const auto gh = circ(g, h);
    bool ok = true;
    int skipped = 0;
    double worst = 0.0;
    for (int p = 0; p < kPoints; ++p) {
      const Mat<F> S = rand_square<F>(ps.m, rng);
      try {
        const Mat<F> lhs = charfn_eval(gh, S);
        const Mat<F> rhs = charfn_eval(g, S) * charfn_eval(h, S);
        if constexpr (is_exact_v<F>) {
          if (!(lhs == rhs)) ok = false;
        } else {
          const double r = rel_residual(lhs, rhs);
          worst = std::max(worst, r);
          if (r > cfg.tol) ok = false;
        }
      } catch (const PoleError&) {
        ++skipped;
      }
    }
    CaseResult cr;
    cr.name = case_name("pair", i);
    cr.status = ok ? "pass" : "fail";
    if constexpr (!is_exact_v<F>) cr.residual = worst;
    cr.details =
        pair_str(ps) + ", " + std::to_string(kPoints - skipped) + " points";
    if (skipped > 0)
      cr.details += " (" + std::to_string(skipped) + " at poles)";
    rep.cases.push_back(std::move(cr));
  }
}

}  // namespace

Report run_multiplicativity(const RunConfig& cfg) {
  Report rep{"multiplicativity", cfg.mode, cfg.seed, {}};
  if (cfg.mode == Mode::exact)
    multiplicativity_cases<ExactScalar>(cfg, rep);
  else
    multiplicativity_cases<Cx>(cfg, rep);
  return rep;
}

// ---- unitarity ---------------------------------------------------------------

Report run_unitarity(const RunConfig& cfg) {
  if (cfg.mode != Mode::floating)
    throw InputError(
        "unitarity suite needs float mode (unitary colligations are "
        "float-only)");
  // Fixed by the acceptance contract rather than cfg.tol: contractions may
  // not push the value norm past 1 beyond numerical noise, and boundary
  // values must be unitary to solver precision.
  constexpr double kNormSlack = 1e-10;
  constexpr double kDefectTol = 1e-9;
  constexpr int kContractions = 100;
  constexpr int kBoundaryPoints = 100;
  const Shape sh{1, 2, 3};
  Report rep{"unitarity", cfg.mode, cfg.seed, {}};
  Rng rng(cfg.seed);
  for (int i = 0; i < cfg.trials; ++i) {
    const auto g = random_colligation_float(sh, Flavor::unitary, rng);
    bool ok = true;
    double worst_norm = 0.0;
    double worst_defect = 0.0;
    std::string note;
    try {
      for (int p = 0; p < kContractions; ++p) {
        const Mat<Cx> G = random_float_matrix(sh.m, sh.m, rng);
        const double s = spectral_norm(G);
        const double radius = rng.unit();
        const Mat<Cx> S = s > 0.0 ? Cx(radius / s, 0.0) * G : G;
        const double n = spectral_norm(charfn_eval(g, S));
        worst_norm = std::max(worst_norm, n);
        if (n > 1.0 + kNormSlack) ok = false;
      }
      for (int p = 0; p < kBoundaryPoints; ++p) {
        const Mat<Cx> U = haar_unitary(sh.m, rng);
        const double d = unitary_defect(charfn_eval(g, U));
        worst_defect = std::max(worst_defect, d);
        if (d > kDefectTol) ok = false;
      }
    } catch (const PoleError&) {
      ok = false;
      note = "; pole hit";
    }
    CaseResult cr;
    cr.name = case_name("haar", i);
    cr.status = ok ? "pass" : "fail";
    cr.residual = worst_defect;
    cr.details = shape_str(sh) + ", max |chi| = " + fmt(worst_norm) +
                 ", max boundary defect = " + fmt(worst_defect) + note;
    rep.cases.push_back(std::move(cr));
  }
  return rep;
}

// ---- divisor -----------------------------------------------------------------

namespace {

Colligation<ExactScalar> m1_colligation(const ExactScalar& a,
                                        const ExactScalar& b,
                                        const ExactScalar& c,
                                        const ExactScalar& d) {
  Mat<ExactScalar> g(2, 2);
  g.at(0, 0) = a;
  g.at(0, 1) = b;
  g.at(1, 0) = c;
  g.at(1, 1) = d;
  return Colligation<ExactScalar>(Shape{1, 1, 1}, Flavor::general,
                                  std::move(g));
}

}  // namespace

Report run_divisor(const RunConfig& cfg) {
  if (cfg.mode != Mode::exact)
    throw InputError("divisor suite needs exact mode (polynomial identities)");
  Report rep{"divisor", cfg.mode, cfg.seed, {}};
  Rng rng(cfg.seed);
  const int cap = cfg.det_cap;

  // p is multiplicative under the product.
  static constexpr PairShape kPairs[] = {
      {1, 2, 1, 1}, {2, 2, 1, 1}, {1, 1, 1, 1},
      {1, 1, 2, 1}, {2, 1, 1, 2}, {1, 2, 1, 0},
  };
  const int n_add = std::max(4, cfg.trials / 2);
  for (int i = 0; i < n_add; ++i) {
    const PairShape& ps = kPairs[i % std::size(kPairs)];
    const auto g = random_colligation_exact(Shape{ps.alpha, ps.m, ps.N1},
                                            Flavor::general, rng);
    const auto h = random_colligation_exact(Shape{ps.alpha, ps.m, ps.N2},
                                            Flavor::general, rng);
    const bool ok =
        p_poly(circ(g, h), 1, cap) == p_poly(g, 1, cap) * p_poly(h, 1, cap);
    rep.cases.push_back({case_name("additivity", i), ok ? "pass" : "fail",
                         std::nullopt, pair_str(ps)});
  }

  // Embedding multiplies p by det(1 - S); three embeddings shift delta by 3.
  static constexpr Shape kEmbedShapes[] = {
      {1, 1, 1}, {1, 2, 1}, {2, 2, 1}, {1, 2, 2}};
  const int n_emb = std::max(3, cfg.trials / 4);
  for (int i = 0; i < n_emb; ++i) {
    const Shape sh = kEmbedShapes[i % std::size(kEmbedShapes)];
    const auto C = random_colligation_exact(sh, Flavor::general, rng);
    const bool ok = p_poly(embed(C), 1, cap) ==
                    p_poly(C, 1, cap) * det_one_minus_s_poly(sh.m, cap);
    rep.cases.push_back({case_name("embedding", i), ok ? "pass" : "fail",
                         std::nullopt, shape_str(sh)});
  }
  for (int i = 0; i < n_emb; ++i) {
    const Shape sh = kEmbedShapes[i % std::size(kEmbedShapes)];
    const auto C = random_colligation_exact(sh, Flavor::general, rng);
    const auto C3 = embed(embed(embed(C)));
    const bool ok =
        delta_multiplicity(C3, cap) == delta_multiplicity(C, cap) + 3;
    rep.cases.push_back({case_name("delta", i), ok ? "pass" : "fail",
                         std::nullopt, shape_str(sh) + ", embedded 3 times"});
  }

  // m = 1: a pinned cancellation pair where the cocycle is a nonconstant
  // polynomial, then the cocycle law on random pairs.
  {
    const auto g = m1_colligation(ExactScalar(1), ExactScalar(1),
                                  ExactScalar(1), ExactScalar::make(1, 2));
    const auto h = m1_colligation(ExactScalar(1), ExactScalar(1),
                                  ExactScalar::make(-1, 6),
                                  ExactScalar::make(1, 3));
    const RationalFunction1D c = cocycle_m1(g, h, cap);
    const auto rg = reduced_denominator_m1(g, cap);
    const auto rh = reduced_denominator_m1(h, cap);
    const auto rgh = reduced_denominator_m1(circ(g, h), cap);
    bool ok = c.is_polynomial() && c.num.total_degree() >= 1;
    ok = ok && rgh.pi == rg.pi * rh.pi * c.num;
    rep.cases.push_back(
        {"cocycle-pinned", ok ? "pass" : "fail", std::nullopt,
         "cancellation pair, cocycle degree " +
             std::to_string(c.num.total_degree())});
  }
  const int n_coc = std::max(3, cfg.trials / 4);
  for (int i = 0; i < n_coc; ++i) {
    const Shape shg{1 + i % 2, 1, 1 + (i / 2) % 2};
    const Shape shh{shg.alpha, 1, 1 + (i / 3) % 2};
    const auto g = random_colligation_exact(shg, Flavor::general, rng);
    const auto h = random_colligation_exact(shh, Flavor::general, rng);
    const auto rg = reduced_denominator_m1(g, cap);
    const auto rh = reduced_denominator_m1(h, cap);
    const auto rgh = reduced_denominator_m1(circ(g, h), cap);
    const RationalFunction1D c = cocycle_m1(g, h, cap);
    bool ok = rg.pi * rg.P == p_poly(g, 1, cap);
    ok = ok && rg.P * rh.P * c.den == c.num * rgh.P;
    ok = ok && rgh.pi * c.den == rg.pi * rh.pi * c.num;
    rep.cases.push_back({case_name("cocycle", i), ok ? "pass" : "fail",
                         std::nullopt,
                         "alpha=" + std::to_string(shg.alpha) +
                             " N1=" + std::to_string(shg.N) +
                             " N2=" + std::to_string(shh.N)});
  }
  return rep;
}

// ---- relations for amplifications ---------------------------------------------

namespace {

template <class F>
void relations_cases(const RunConfig& cfg, Report& rep) {
  static constexpr Shape kShapes[] = {{1, 2, 1}, {1, 2, 2}, {2, 2, 1},
                                      {2, 2, 2}, {1, 1, 2}, {2, 1, 1}};
  Rng rng(cfg.seed);
  for (int i = 0; i < cfg.trials; ++i) {
    const Shape sh = kShapes[i % std::size(kShapes)];
    const auto g =
        random_colligation<F>(sh, Flavor::general, rng);
    const auto g2 = amplify(g, 2);
    bool ok = true;
    bool resolved = true;
    double worst = 0.0;

    auto close = [&](auto&& lhs, auto&& rhs) {
      if constexpr (is_exact_v<F>) {
        if (!(lhs == rhs)) ok = false;
      } else {
        const double r = rel_residual(lhs, rhs);
        worst = std::max(worst, r);
        if (r > cfg.tol) ok = false;
      }
    };

    // (a) a copy-block-diagonal argument splits into the two copies
    bool done = false;
    for (int attempt = 0; attempt < 16 && !done; ++attempt) {
      const Mat<F> S1 = rand_square<F>(sh.m, rng);
      const Mat<F> S2 = rand_square<F>(sh.m, rng);
      Mat<F> Sd = Mat<F>::zeros(2 * sh.m, 2 * sh.m);
      Sd.set_block(0, 0, S1);
      Sd.set_block(sh.m, sh.m, S2);
      try {
        const Mat<F> lhs = charfn_eval(g2, Sd);
        Mat<F> rhs = Mat<F>::zeros(2 * sh.alpha, 2 * sh.alpha);
        rhs.set_block(0, 0, charfn_eval(g, S1));
        rhs.set_block(sh.alpha, sh.alpha, charfn_eval(g, S2));
        close(lhs, rhs);
        done = true;
      } catch (const PoleError&) {
      }
    }
    resolved = resolved && done;

    // (b) conjugating the argument by H~ conjugates the value by H^;
    // (c) the divisor value is invariant under the same move
    done = false;
    for (int attempt = 0; attempt < 16 && !done; ++attempt) {
      const Mat<F> H = rand_invertible<F>(2, rng);
      const Mat<F> Ht = amplified_argument_conjugator(H, sh.m);
      const Mat<F> Hv = amplified_value_conjugator(H, sh.alpha);
      const Mat<F> S = rand_square<F>(2 * sh.m, rng);
      const Mat<F> Sc = Ht * S * Ht.inverse();
      try {
        close(charfn_eval(g2, Sc), Hv * charfn_eval(g2, S) * Hv.inverse());
        const F pl = p_eval(g2, Sc);
        const F pr = p_eval(g2, S);
        if constexpr (is_exact_v<F>) {
          if (!(pl == pr)) ok = false;
        } else {
          const double r = rel_residual(pl, pr);
          worst = std::max(worst, r);
          if (r > cfg.tol) ok = false;
        }
        done = true;
      } catch (const PoleError&) {
      }
    }
    resolved = resolved && done;

    CaseResult cr;
    cr.name = case_name("amplified", i);
    cr.status = !resolved ? "inconclusive" : (ok ? "pass" : "fail");
    if constexpr (!is_exact_v<F>) cr.residual = worst;
    cr.details =
        shape_str(sh) + ", splitting + equivariance + divisor invariance";
    rep.cases.push_back(std::move(cr));
  }
}

}  // namespace

Report run_relations(const RunConfig& cfg) {
  Report rep{"relations", cfg.mode, cfg.seed, {}};
  if (cfg.mode == Mode::exact)
    relations_cases<ExactScalar>(cfg, rep);
  else
    relations_cases<Cx>(cfg, rep);
  return rep;
}

// ---- reconstruction ------------------------------------------------------------

namespace {

std::vector<Word> all_words(int m, int len) {
  const int K = m * m;
  int total = 1;
  for (int p = 0; p < len; ++p) total *= K;
  std::vector<Word> out;
  out.reserve(total);
  for (int idx = 0; idx < total; ++idx) {
    Word w(len);
    int v = idx;
    for (int p = 0; p < len; ++p) {
      const int digit = v % K;
      v /= K;
      w[p] = {digit / m + 1, digit % m + 1};
    }
    out.push_back(std::move(w));
  }
  return out;
}

template <class F>
void reconstruction_cases(const RunConfig& cfg, Report& rep) {
  // Bound on divided-difference noise for the float readout.
  constexpr double kFloatTol = 1e-6;
  constexpr int kTraceMaxLen = 3;
  constexpr int kCwbMaxLen = 2;
  const Shape sh{1, 2, 2};
  Rng rng(cfg.seed);
  for (int i = 0; i < cfg.trials; ++i) {
    const auto C = random_colligation<F>(sh, Flavor::general, rng);
    {
      bool ok = true;
      double worst = 0.0;
      int n = 0;
      for (int len = 1; len <= kTraceMaxLen; ++len)
        for (const Word& w : all_words(sh.m, len)) {
          const F direct = trace_word(C, w);
          const F rec = reconstruct_trace_word(C, w, cfg.det_cap);
          ++n;
          if constexpr (is_exact_v<F>) {
            if (!(rec == direct)) ok = false;
          } else {
            const double r = rel_residual(rec, direct);
            worst = std::max(worst, r);
            if (r > kFloatTol) ok = false;
          }
        }
      CaseResult cr;
      cr.name = case_name("trace", i);
      cr.status = ok ? "pass" : "fail";
      if constexpr (!is_exact_v<F>) cr.residual = worst;
      cr.details = std::to_string(n) + " trace words of length 1.." +
                   std::to_string(kTraceMaxLen);
      rep.cases.push_back(std::move(cr));
    }
    {
      bool ok = true;
      double worst = 0.0;
      int n = 0;
      for (int len = 0; len <= kCwbMaxLen; ++len)
        for (const Word& w : all_words(sh.m, len))
          for (int gamma = 1; gamma <= sh.m; ++gamma)
            for (int beta = 1; beta <= sh.m; ++beta) {
              const F direct = cwb_invariant(C, gamma, 1, w, beta, 1);
              const F rec = reconstruct_cwb(C, gamma, 1, w, beta, 1,
                                            cfg.det_cap);
              ++n;
              if constexpr (is_exact_v<F>) {
                if (!(rec == direct)) ok = false;
              } else {
                const double r = rel_residual(rec, direct);
                worst = std::max(worst, r);
                if (r > kFloatTol) ok = false;
              }
            }
      CaseResult cr;
      cr.name = case_name("cwb", i);
      cr.status = ok ? "pass" : "fail";
      if constexpr (!is_exact_v<F>) cr.residual = worst;
      cr.details = std::to_string(n) + " pairings with words of length 0.." +
                   std::to_string(kCwbMaxLen);
      rep.cases.push_back(std::move(cr));
    }
  }
}

}  // namespace

Report run_reconstruction(const RunConfig& cfg) {
  Report rep{"reconstruction", cfg.mode, cfg.seed, {}};
  if (cfg.mode == Mode::exact)
    reconstruction_cases<ExactScalar>(cfg, rep);
  else
    reconstruction_cases<Cx>(cfg, rep);
  return rep;
}

// ---- separation ----------------------------------------------------------------

Report run_separation(const RunConfig& cfg) {
  if (cfg.mode != Mode::exact)
    throw InputError(
        "separation suite needs exact mode (the oracle certifies conjugacy "
        "exactly)");
  // N = 3 appears with m = 1 only: its fingerprints stay small there, while
  // m = 2 at N = 3 would dominate the runtime without testing anything new.
  static constexpr Shape kPool[] = {{1, 1, 1}, {1, 2, 1}, {2, 2, 1},
                                    {1, 1, 2}, {1, 2, 2}, {2, 1, 2},
                                    {2, 2, 2}, {1, 1, 3}, {2, 1, 3},
                                    {2, 2, 0}};
  Report rep{"separation", cfg.mode, cfg.seed, {}};
  Rng rng(cfg.seed);
  const auto cap_for = [&cfg](const Shape& s) {
    return cfg.max_word_len >= 1 ? cfg.max_word_len
                                 : std::max(1, default_word_cap(s));
  };
  for (int i = 0; i < cfg.trials; ++i) {
    const Shape sh = kPool[i % std::size(kPool)];
    const auto C1 = random_colligation_exact(sh, Flavor::general, rng);
    const auto C2 = random_colligation_exact(sh, Flavor::general, rng);
    const auto v = conjugacy_oracle(C1, C2);
    const int len = cap_for(sh);
    const bool eq =
        fingerprint_equal(fingerprint(C1, len), fingerprint(C2, len));
    const bool conj = v.kind == ConjugacyKind::conjugate;
    CaseResult cr;
    cr.name = case_name("random", i);
    if (v.kind == ConjugacyKind::inconclusive)
      cr.status = eq ? "inconclusive" : "pass";
    else
      cr.status = conj == eq ? "pass" : "fail";
    cr.details = shape_str(sh) + ", verdict " + conjugacy_kind_name(v.kind) +
                 ", fingerprints " + (eq ? "equal" : "differ");
    rep.cases.push_back(std::move(cr));
  }
  // Deliberately conjugate pairs: the verdict must come back with a witness
  // that actually maps one to the other, and the fingerprints must agree.
  const int n_conj = std::max(2, cfg.trials / 5);
  for (int i = 0; i < n_conj; ++i) {
    const Shape sh = kPool[i % (std::size(kPool) - 1)];  // N >= 1 entries
    const auto C1 = random_colligation_exact(sh, Flavor::general, rng);
    const auto u = random_inner_exact(sh.N, rng);
    const auto C2 = conjugate(C1, u);
    const auto v = conjugacy_oracle(C1, C2);
    bool ok = v.kind == ConjugacyKind::conjugate && v.witness.has_value();
    if (ok) {
      const InnerGroupElement<ExactScalar> w{*v.witness};
      ok = conjugate(C1, w).g == C2.g;
    }
    const int len = cap_for(sh);
    const bool eq =
        fingerprint_equal(fingerprint(C1, len), fingerprint(C2, len));
    CaseResult cr;
    cr.name = case_name("conjugate", i);
    cr.status = (ok && eq) ? "pass" : "fail";
    cr.details = shape_str(sh) + ", witness " +
                 (ok ? "verified" : "missing or wrong") + ", fingerprints " +
                 (eq ? "equal" : "differ");
    rep.cases.push_back(std::move(cr));
  }
  return rep;
}

// ---- dispatch ------------------------------------------------------------------

std::vector<Report> run_suites(const std::string& suite,
                               const RunConfig& cfg) {
  if (suite == "multiplicativity") return {run_multiplicativity(cfg)};
  if (suite == "unitarity") return {run_unitarity(cfg)};
  if (suite == "divisor") return {run_divisor(cfg)};
  if (suite == "relations") return {run_relations(cfg)};
  if (suite == "reconstruction") return {run_reconstruction(cfg)};
  if (suite == "separation") return {run_separation(cfg)};
  if (suite == "all") {
    std::vector<Report> out;
    RunConfig c = cfg;
    c.mode = Mode::exact;
    out.push_back(run_multiplicativity(c));
    c.mode = Mode::floating;
    out.push_back(run_multiplicativity(c));
    out.push_back(run_unitarity(c));
    c.mode = Mode::exact;
    out.push_back(run_divisor(c));
    out.push_back(run_relations(c));
    c.mode = Mode::floating;
    out.push_back(run_relations(c));
    c.mode = Mode::exact;
    out.push_back(run_reconstruction(c));
    c.mode = Mode::floating;
    out.push_back(run_reconstruction(c));
    c.mode = Mode::exact;
    out.push_back(run_separation(c));
    return out;
  }
  throw InputError("unknown suite '" + suite +
                   "' (expected multiplicativity, unitarity, divisor, "
                   "relations, reconstruction, separation, or all)");
}

}  // namespace collig
