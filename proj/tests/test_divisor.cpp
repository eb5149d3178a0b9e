#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "collig/divisor.hpp"
#include "collig/semigroup.hpp"

using namespace collig;

static ExactScalar q(long nr, long dr = 1) { return ExactScalar::make(nr, dr); }

static Colligation<ExactScalar> scalar_collig(ExactScalar a, ExactScalar b,
                                              ExactScalar c, ExactScalar d) {
  Mat<ExactScalar> g(2, 2);
  g.at(0, 0) = a;
  g.at(0, 1) = b;
  g.at(1, 0) = c;
  g.at(1, 1) = d;
  return Colligation<ExactScalar>(Shape{1, 1, 1}, Flavor::general, g);
}

static Colligation<ExactScalar> rand_collig(const Shape& s, int seed) {
  Rng rng(static_cast<std::uint64_t>(seed));
  return random_colligation_exact(s, Flavor::general, rng);
}

// polynomial evaluation point matching the row-major variable order
static std::vector<ExactScalar> flatten(const Mat<ExactScalar>& S) {
  std::vector<ExactScalar> p;
  for (int i = 0; i < S.rows(); ++i)
    for (int j = 0; j < S.cols(); ++j) p.push_back(S.at(i, j));
  return p;
}

TEST_CASE("divisor polynomial of a scalar colligation") {
  const auto C = scalar_collig(q(1), q(2), q(3), q(1, 2));
  const auto p = p_poly(C);
  CHECK(p.nvars() == 1);
  CHECK(uni_degree(p) == 1);
  CHECK(uni_coeff(p, 0) == q(1));
  CHECK(uni_coeff(p, 1) == q(-1, 2));
  CHECK(delta_multiplicity(C) == 0);
  const auto l = det_lambda_multiplicity(C);
  REQUIRE(l.has_value());
  CHECK(*l == 0);
}

TEST_CASE("identity colligation divisor is the pure delta component") {
  for (int N : {1, 2}) {
    const auto id = identity_colligation<ExactScalar>(Shape{1, 2, N});
    const auto p = p_poly(id);
    auto expect = det_one_minus_s_poly(2);
    for (int k = 1; k < N; ++k) expect *= det_one_minus_s_poly(2);
    CHECK(p == expect);
    CHECK(delta_multiplicity(id) == N);
    const auto l = det_lambda_multiplicity(id);
    REQUIRE(l.has_value());
    CHECK(*l == 0);
    const auto sum = divisor_summary(id);
    CHECK(sum.total_degree == 2 * N);
    CHECK(sum.residual_degree == 0);
  }
}

TEST_CASE("polynomial matches pointwise evaluation") {
  const auto C = rand_collig(Shape{1, 2, 2}, 5);
  const auto p = p_poly(C);
  for (int seed : {31, 32, 33}) {
    Rng rng(static_cast<std::uint64_t>(seed));
    const auto S = random_exact_matrix(2, 2, rng);
    CHECK(p.eval(flatten(S)) == p_eval(C, S));
  }
}

TEST_CASE("divisor is multiplicative under the product") {
  const auto g = rand_collig(Shape{1, 2, 1}, 41);
  const auto h = rand_collig(Shape{1, 2, 1}, 42);
  CHECK(p_poly(circ(g, h)) == p_poly(g) * p_poly(h));
  // and for m = 1 with different inner sizes
  const auto g1 = rand_collig(Shape{2, 1, 1}, 43);
  const auto h1 = rand_collig(Shape{2, 1, 2}, 44);
  CHECK(p_poly(circ(g1, h1)) == p_poly(g1) * p_poly(h1));
}

TEST_CASE("embedding appends one delta factor per step") {
  const auto C = scalar_collig(q(1), q(2), q(3), q(1, 2));
  const auto delta = det_one_minus_s_poly(1);
  const auto E1 = embed(C);
  CHECK(p_poly(E1) == p_poly(C) * delta);
  const auto E3 = embed(embed(E1));
  CHECK(delta_multiplicity(E3) == delta_multiplicity(C) + 3);
  CHECK(p_poly(E3) == p_poly(C) * delta * delta * delta);

  // same for m = 2
  const auto D = rand_collig(Shape{1, 2, 1}, 51);
  CHECK(p_poly(embed(D)) == p_poly(D) * det_one_minus_s_poly(2));
}

TEST_CASE("lambda chart agrees with the S chart on invertible arguments") {
  const auto C = rand_collig(Shape{1, 2, 2}, 61);
  Rng rng(62);
  Mat<ExactScalar> L = random_exact_matrix(2, 2, rng);
  REQUIRE(!is_zero(L.det()));
  const auto lhs = lambda_chart_eval(C, L);
  const auto rhs = (-inflate(L, C.shape.N)).det() * p_eval(C, L.inverse());
  CHECK(lhs == rhs);
}

TEST_CASE("degree deficiency reads off the det-Lambda multiplicity") {
  // d = 0: p = 1, the divisor is N copies of det(Lambda) = 0
  Mat<ExactScalar> g(3, 3);
  g.at(0, 0) = q(1);
  g.at(0, 1) = q(2);
  g.at(0, 2) = q(3);
  g.at(1, 0) = q(4);
  g.at(2, 0) = q(5);
  const Colligation<ExactScalar> C(Shape{1, 2, 1}, Flavor::general, g);
  CHECK(p_poly(C).is_constant_one());
  const auto l = det_lambda_multiplicity(C);
  REQUIRE(l.has_value());
  CHECK(*l == 1);
  CHECK(lambda_chart_eval(C, Mat<ExactScalar>::identity(2)) ==
        Mat<ExactScalar>::identity(2).det() * q(1));

  // odd deficiency with m = 2 is not expressible: inapplicable
  Rng rng(63);
  auto D = random_colligation_exact(Shape{1, 2, 2}, Flavor::general, rng);
  for (int c = 0; c < D.g.cols(); ++c) D.g.at(D.g.rows() - 1, c) = q(0);
  for (int r = 0; r < D.g.rows(); ++r) D.g.at(r, D.g.rows() - 1) = q(0);
  // last inner row/column zero: top coefficient dies, degree drops by 1
  const auto p = p_poly(D);
  REQUIRE(p.total_degree() == 3);
  CHECK(!det_lambda_multiplicity(D).has_value());
}

TEST_CASE("reduced denominator of det chi for m = 1") {
  // cancellation pair: the char fn of g has a zero where h has none, and the
  // product cancels a factor of the naive denominator
  const auto g = scalar_collig(q(1), q(1), q(1), q(1, 2));
  const auto h = scalar_collig(q(1), q(1), q(-1, 6), q(1, 3));
  const auto vars = s_var_list(1, 1);
  const auto s = SparsePoly<ExactScalar>::variable(vars, 0);
  const auto one = SparsePoly<ExactScalar>::constant(vars, q(1));

  const auto rg = reduced_denominator_m1(g);
  CHECK(rg.P == s - ExactScalar(2) * one);
  CHECK(rg.pi == q(-1, 2) * one);

  const auto rh = reduced_denominator_m1(h);
  CHECK(rh.P == s - ExactScalar(3) * one);

  const auto gh = circ(g, h);
  const auto rgh = reduced_denominator_m1(gh);
  CHECK(rgh.P == s - ExactScalar(3) * one);
  CHECK(rgh.pi == q(1, 6) * (s - ExactScalar(2) * one));

  // cocycle: nonconstant polynomial, and the pi relation holds exactly
  const auto c = cocycle_m1(g, h);
  CHECK(c.is_polynomial());
  CHECK(uni_degree(c.num) == 1);
  CHECK(c.num == s - ExactScalar(2) * one);
  CHECK(rgh.pi == rg.pi * rh.pi * c.num);

  // p factors as pi * P
  CHECK(p_poly(g) == rg.pi * rg.P);
  CHECK(p_poly(gh) == rgh.pi * rgh.P);
}

TEST_CASE("reduced denominator with decoupled corner") {
  // b = 0: det chi is a polynomial, P = 1, pi = p
  Mat<ExactScalar> g(3, 3);
  g.at(0, 0) = q(2);
  g.at(1, 0) = q(1);
  g.at(2, 0) = q(3);
  g.at(1, 1) = q(1, 2);
  g.at(1, 2) = q(1);
  g.at(2, 2) = q(1, 3);
  const Colligation<ExactScalar> C(Shape{1, 1, 2}, Flavor::general, g);
  const auto r = reduced_denominator_m1(C);
  CHECK(r.P.is_constant_one());
  CHECK(r.pi == p_poly(C));
  CHECK_THROWS_AS(reduced_denominator_m1(rand_collig(Shape{1, 2, 1}, 9)),
                  InputError);
}

TEST_CASE("rational function reduction") {
  const auto vars = s_var_list(1, 1);
  const auto s = SparsePoly<ExactScalar>::variable(vars, 0);
  const auto one = SparsePoly<ExactScalar>::constant(vars, q(1));
  const auto f =
      RationalFunction1D::make(q(3) * (s * s - one), q(3) * (s - one));
  CHECK(f.is_polynomial());
  CHECK(f.num == s + one);
  CHECK_THROWS_AS(RationalFunction1D::make(one, one - one), InputError);
}
