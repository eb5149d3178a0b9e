#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "collig/invariants.hpp"
#include "collig/semigroup.hpp"

using namespace collig;

static ExactScalar q(long nr, long dr = 1) { return ExactScalar::make(nr, dr); }

static Colligation<ExactScalar> rand_collig(const Shape& s, int seed) {
  Rng rng(static_cast<std::uint64_t>(seed));
  return random_colligation_exact(s, Flavor::general, rng);
}

static Colligation<ExactScalar> from_rows(
    const Shape& s, const std::vector<std::vector<long>>& rows) {
  Mat<ExactScalar> g(s.total(), s.total());
  for (int i = 0; i < s.total(); ++i)
    for (int j = 0; j < s.total(); ++j) g.at(i, j) = q(rows[i][j]);
  return Colligation<ExactScalar>(s, Flavor::general, g);
}

// a=1, b=(5 6), c=(7 8)^T, d=[[1,2],[3,4]]
static Colligation<ExactScalar> sample_112() {
  return from_rows(Shape{1, 1, 2}, {{1, 5, 6}, {7, 1, 2}, {8, 3, 4}});
}

static bool all_diagonal(const Word& w) {
  for (const auto& [phi, psi] : w)
    if (phi != psi) return false;
  return true;
}

TEST_CASE("word helpers") {
  const Word w{{2, 1}, {1, 1}, {1, 2}};
  CHECK(canonical_rotation(w) == Word{{1, 1}, {1, 2}, {2, 1}});
  CHECK(canonical_rotation(Word{{1, 2}}) == Word{{1, 2}});
  CHECK(canonical_rotation(Word{{2, 2}, {2, 2}}) == Word{{2, 2}, {2, 2}});
  CHECK(word_str(w) == "21.11.12");
  CHECK(word_str(Word{}) == "-");
  const auto C = sample_112();
  CHECK_THROWS_AS(trace_word(C, Word{{1, 3}}), InputError);
  CHECK_THROWS_AS(trace_word(C, Word{}), InputError);
  CHECK(word_product(C, Word{}) == Mat<ExactScalar>::identity(2));
}

TEST_CASE("direct invariants by hand") {
  const auto C = sample_112();
  CHECK(trace_word(C, Word{{1, 1}}) == q(5));
  CHECK(trace_word(C, Word(2, {1, 1})) == q(29));
  CHECK(trace_word(C, Word(3, {1, 1})) == q(155));
  CHECK(cwb_invariant(C, 1, 1, Word{}, 1, 1) == q(83));
  CHECK(cwb_invariant(C, 1, 1, Word{{1, 1}}, 1, 1) == q(433));
  CHECK_THROWS_AS(cwb_invariant(C, 1, 2, Word{}, 1, 1), InputError);
  CHECK_THROWS_AS(cwb_invariant(C, 2, 1, Word{}, 1, 1), InputError);
}

TEST_CASE("trace and pairing invariance under conjugation") {
  for (int seed : {1, 2}) {
    const auto C = rand_collig(Shape{2, 2, 2}, seed);
    Rng rng(900 + seed);
    const auto u = random_inner_exact(2, rng);
    const auto Cc = conjugate(C, u);
    for (const Word& w : {Word{{1, 1}}, Word{{1, 2}, {2, 1}},
                          Word{{2, 2}, {1, 2}, {2, 1}}})
      CHECK(trace_word(C, w) == trace_word(Cc, w));
    for (const Word& w : {Word{}, Word{{2, 1}}, Word{{1, 2}, {1, 1}}})
      CHECK(cwb_invariant(C, 2, 1, w, 1, 2) == cwb_invariant(Cc, 2, 1, w, 1, 2));
  }
}

TEST_CASE("plet determinants") {
  // alpha=1, m=2, N=2: exactly one 2-plet of b rows and one of c columns
  const auto C = from_rows(Shape{1, 2, 2}, {{9, 1, 2, 3, 4},
                                            {5, 0, 0, 0, 0},
                                            {6, 0, 0, 0, 0},
                                            {7, 0, 0, 0, 0},
                                            {8, 0, 0, 0, 0}});
  const auto dets = sl_det_invariants(C);
  REQUIRE(dets.size() == 2);
  const PletKey rows{0, {{1, 1}, {2, 1}}};
  const PletKey cols{1, {{1, 1}, {2, 1}}};
  CHECK(dets.at(rows) == q(-2));
  CHECK(dets.at(cols) == q(-2));
  CHECK(plet_str(rows) == "b:11.21");
  CHECK(plet_str(cols) == "c:11.21");

  // N > alpha m: no plets fit
  CHECK(sl_det_invariants(sample_112()).empty());

  // b = 0 makes every row determinant vanish
  auto Z = C;
  for (int j = 1; j <= 4; ++j) Z.g.at(0, j) = q(0);
  const auto zdets = sl_det_invariants(Z);
  CHECK(zdets.at(rows) == q(0));
  CHECK(zdets.at(cols) == q(-2));
}

TEST_CASE("fingerprint layout at m = 1") {
  const auto C = sample_112();
  const auto fp = fingerprint(C);  // default cap N^2 = 4
  CHECK(fp.max_word_len == 4);
  CHECK(fp.trace_words.size() == 4);  // one cyclic class per length
  CHECK(fp.cwb.size() == 4);          // word lengths 0..3
  CHECK(fp.a_entries.at(0, 0) == q(1));
  CHECK(!fp.sl_dets.has_value());  // N = 2 > alpha m = 1
  CHECK(fp.trace_words.at(Word{{1, 1}}) == q(5));
  CHECK(fp.cwb.at(CwbKey{1, 1, Word{}, 1, 1}) == q(83));
  CHECK_THROWS_AS(fingerprint(C, 0), InputError);
}

TEST_CASE("fingerprint is conjugation invariant") {
  int seed = 40;
  for (const Shape s : {Shape{1, 1, 1}, Shape{1, 2, 2}, Shape{2, 1, 2},
                        Shape{2, 2, 2}, Shape{1, 2, 3}}) {
    const auto C = rand_collig(s, ++seed);
    Rng rng(700 + seed);
    const auto u = random_inner_exact(s.N, rng);
    const int cap = std::min(default_word_cap(s), 4);
    CHECK(fingerprint_equal(fingerprint(C, cap),
                            fingerprint(conjugate(C, u), cap)));
  }
}

TEST_CASE("fingerprint separates perturbations") {
  const auto C = rand_collig(Shape{1, 2, 2}, 77);
  const auto fp = fingerprint(C);

  auto Ca = C;
  Ca.g.at(0, 0) += q(1);
  CHECK(!fingerprint_equal(fp, fingerprint(Ca)));

  auto Cd = C;
  Cd.g.at(1, 1) += q(1);  // first inner entry of d_{11}
  CHECK(!fingerprint_equal(fp, fingerprint(Cd)));

  CHECK(!fingerprint_equal(fp, fingerprint(C, 3)));  // caps must agree
}

TEST_CASE("plet determinants separate only up to a common factor") {
  // c = 0 and d = 0 blind the traces and pairings; the b-row dets remain.
  // alpha=1, m=2, N=1: the two 1-plet row dets are b_1 and b_2.
  const auto base = [&](long b1, long b2) {
    return from_rows(Shape{1, 2, 1}, {{5, b1, b2}, {0, 0, 0}, {0, 0, 0}});
  };
  const auto C11 = base(1, 1), C12 = base(1, 2), C22 = base(2, 2);

  // (1,1) vs (2,2): one factor explains both dets, and u = 1/2 conjugates
  CHECK(fingerprint_equal(fingerprint(C11), fingerprint(C22)));
  CHECK(conjugacy_oracle(C11, C22).kind == ConjugacyKind::conjugate);

  // (1,1) vs (1,2): no single factor works, and no scalar u exists
  CHECK(!fingerprint_equal(fingerprint(C11), fingerprint(C12)));
  CHECK(conjugacy_oracle(C11, C12).kind == ConjugacyKind::not_conjugate);
}

TEST_CASE("fingerprint stability under embedding") {
  const auto C = rand_collig(Shape{1, 2, 2}, 13);
  const auto E = embed(C);
  const auto fp = fingerprint(C, 3);
  const auto fpe = fingerprint(E, 3);
  for (const auto& [w, v] : fp.trace_words)
    CHECK(fpe.trace_words.at(w) == v + (all_diagonal(w) ? q(1) : q(0)));
  CHECK(fpe.cwb == fp.cwb);
  CHECK(fpe.a_entries == fp.a_entries);
}

TEST_CASE("float fingerprint comparison") {
  Rng rng(321);
  const auto C = random_colligation_float(Shape{1, 2, 2}, Flavor::general, rng);
  const auto u = random_inner_float(2, rng);
  CHECK(fingerprint_equal(fingerprint(C), fingerprint(conjugate(C, u))));
  auto P = C;
  P.g.at(0, 0) += Cx(0.5, 0);
  CHECK(!fingerprint_equal(fingerprint(C), fingerprint(P)));
}

TEST_CASE("N = 0 fingerprints reduce to the corner block") {
  const auto n2 = neutral_colligation<ExactScalar>(2, 2);
  auto other = n2;
  other.g.at(0, 1) = q(3);
  CHECK(fingerprint_equal(fingerprint(n2), fingerprint(n2)));
  CHECK(!fingerprint_equal(fingerprint(n2), fingerprint(other)));
  CHECK(fingerprint(n2).trace_words.at(Word{{1, 1}}) == q(0));
}

TEST_CASE("trace words recovered from divisor data") {
  const auto C = rand_collig(Shape{1, 2, 2}, 5);
  for (int phi = 1; phi <= 2; ++phi)
    for (int psi = 1; psi <= 2; ++psi) {
      const Word w{{phi, psi}};
      CHECK(reconstruct_trace_word(C, w) == trace_word(C, w));
    }
  for (const Word& w : {Word{{1, 1}, {1, 2}}, Word{{2, 1}, {1, 2}},
                        Word{{2, 2}, {2, 2}}, Word{{1, 2}, {2, 1}, {1, 1}},
                        Word{{2, 1}, {1, 1}, {1, 2}},
                        Word{{2, 2}, {2, 2}, {2, 2}}})
    CHECK(reconstruct_trace_word(C, w) == trace_word(C, w));

  // cyclic rotations recover the same number
  const Word w{{1, 1}, {1, 2}, {2, 1}};
  const Word r{{1, 2}, {2, 1}, {1, 1}};
  CHECK(reconstruct_trace_word(C, w) == reconstruct_trace_word(C, r));

  const auto id = identity_colligation<ExactScalar>(Shape{1, 2, 2});
  CHECK(reconstruct_trace_word(id, Word{{1, 1}}) == q(2));
  CHECK(reconstruct_trace_word(id, Word{{1, 1}, {2, 2}}) == q(2));
  CHECK(reconstruct_trace_word(id, Word{{1, 2}}) == q(0));
}

TEST_CASE("pairings recovered from characteristic data") {
  const auto C = rand_collig(Shape{1, 2, 2}, 6);
  for (int beta = 1; beta <= 2; ++beta)
    for (int gamma = 1; gamma <= 2; ++gamma) {
      CHECK(reconstruct_cwb(C, gamma, 1, Word{}, beta, 1) ==
            cwb_invariant(C, gamma, 1, Word{}, beta, 1));
      for (int phi = 1; phi <= 2; ++phi)
        for (int psi = 1; psi <= 2; ++psi) {
          const Word w{{phi, psi}};
          CHECK(reconstruct_cwb(C, gamma, 1, w, beta, 1) ==
                cwb_invariant(C, gamma, 1, w, beta, 1));
        }
    }
  for (const Word& w : {Word{{1, 2}, {2, 1}}, Word{{2, 2}, {1, 1}}}) {
    CHECK(reconstruct_cwb(C, 1, 1, w, 2, 1) == cwb_invariant(C, 1, 1, w, 2, 1));
    CHECK(reconstruct_cwb(C, 2, 1, w, 1, 1) == cwb_invariant(C, 2, 1, w, 1, 1));
  }

  // alpha = 2 exercises the row/column selectors
  const auto C2 = rand_collig(Shape{2, 1, 2}, 7);
  for (int k = 1; k <= 2; ++k)
    for (int l = 1; l <= 2; ++l)
      CHECK(reconstruct_cwb(C2, 1, l, Word{{1, 1}}, 1, k) ==
            cwb_invariant(C2, 1, l, Word{{1, 1}}, 1, k));

  // c = 0 kills every pairing
  auto Z = rand_collig(Shape{1, 2, 2}, 8);
  for (int i = 1; i < Z.shape.total(); ++i) Z.g.at(i, 0) = q(0);
  CHECK(reconstruct_cwb(Z, 1, 1, Word{{2, 1}}, 2, 1) == q(0));
  CHECK(reconstruct_cwb(Z, 2, 1, Word{}, 1, 1) == q(0));
}

TEST_CASE("float reconstruction stays within divided-difference error") {
  Rng rng(98);
  const auto C = random_colligation_float(Shape{1, 2, 2}, Flavor::general, rng);
  const auto close = [](Cx x, Cx y) {
    return std::abs(x - y) <= 1e-6 * std::max(1.0, std::max(std::abs(x),
                                                            std::abs(y)));
  };
  for (const Word& w : {Word{{1, 1}}, Word{{2, 1}}, Word{{1, 2}, {2, 1}},
                        Word{{2, 2}, {1, 1}}})
    CHECK(close(reconstruct_trace_word(C, w), trace_word(C, w)));
  CHECK(close(reconstruct_cwb(C, 2, 1, Word{}, 1, 1),
              cwb_invariant(C, 2, 1, Word{}, 1, 1)));
  CHECK(close(reconstruct_cwb(C, 1, 1, Word{{1, 2}}, 2, 1),
              cwb_invariant(C, 1, 1, Word{{1, 2}}, 2, 1)));
}

TEST_CASE("oracle finds a witness for conjugate pairs") {
  for (int seed : {1, 2, 3}) {
    const auto C = rand_collig(Shape{1, 2, 2}, 200 + seed);
    Rng rng(300 + seed);
    const auto u = random_inner_exact(2, rng);
    const auto Cc = conjugate(C, u);
    const auto v = conjugacy_oracle(C, Cc);
    REQUIRE(v.kind == ConjugacyKind::conjugate);
    REQUIRE(v.witness.has_value());
    const auto io = iota(*v.witness, 1, 2);
    CHECK(io * C.g * io.inverse() == Cc.g);
    CHECK(fingerprint_equal(fingerprint(C), fingerprint(Cc)));
  }
  const auto C = rand_collig(Shape{2, 1, 3}, 44);
  const auto v = conjugacy_oracle(C, C);
  CHECK(v.kind == ConjugacyKind::conjugate);
}

TEST_CASE("oracle rejects non-conjugate pairs") {
  const auto C = rand_collig(Shape{1, 2, 2}, 11);

  auto Ca = C;
  Ca.g.at(0, 0) += q(1);
  CHECK(conjugacy_oracle(C, Ca).kind == ConjugacyKind::not_conjugate);

  const auto D = rand_collig(Shape{1, 2, 2}, 12);
  CHECK(conjugacy_oracle(C, D).kind == ConjugacyKind::not_conjugate);
  CHECK(!fingerprint_equal(fingerprint(C), fingerprint(D)));

  // same a, rescaled d: verdicts and fingerprints must keep agreeing
  auto Cd = C;
  for (int i = 1; i < 5; ++i)
    for (int j = 1; j < 5; ++j) Cd.g.at(i, j) = q(2) * Cd.g.at(i, j);
  const auto vd = conjugacy_oracle(C, Cd);
  CHECK(vd.kind != ConjugacyKind::conjugate);
  CHECK(!fingerprint_equal(fingerprint(C), fingerprint(Cd)));

  CHECK_THROWS_AS(conjugacy_oracle(C, rand_collig(Shape{1, 2, 1}, 5)),
                  InputError);
}

TEST_CASE("oracle handles N = 0 and float mode") {
  const auto n2 = neutral_colligation<ExactScalar>(2, 2);
  CHECK(conjugacy_oracle(n2, n2).kind == ConjugacyKind::conjugate);
  auto other = n2;
  other.g.at(1, 0) = q(4);
  CHECK(conjugacy_oracle(n2, other).kind == ConjugacyKind::not_conjugate);

  Rng rng(17);
  const auto C = random_colligation_float(Shape{1, 2, 2}, Flavor::general, rng);
  const auto u = random_inner_float(2, rng);
  const auto Cc = conjugate(C, u);
  const auto v = conjugacy_oracle(C, Cc);
  REQUIRE(v.kind == ConjugacyKind::conjugate);
  const auto io = iota(*v.witness, 1, 2);
  CHECK(approx_equal(io * C.g * io.inverse(), Cc.g, 1e-6));

  auto P = C;
  P.g.at(0, 0) += Cx(1.0, 0);
  CHECK(conjugacy_oracle(C, P).kind == ConjugacyKind::not_conjugate);
}
