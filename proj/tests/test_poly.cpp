#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>
#include <vector>

#include "collig/matrix.hpp"
#include "collig/poly.hpp"
#include "collig/scalar.hpp"

using namespace collig;

static ExactScalar q(long nr, long dr, long ni = 0, long di = 1) {
  return ExactScalar::make(nr, dr, ni, di);
}

TEST_CASE("exact scalar arithmetic") {
  const ExactScalar x = q(1, 1, 2, 1);   // 1 + 2i
  const ExactScalar y = q(3, 1, -1, 1);  // 3 - i
  CHECK(x * y == q(5, 1, 5, 1));
  CHECK(x + y == q(4, 1, 1, 1));
  CHECK((x / y) * y == x);
  CHECK(-x == q(-1, 1, -2, 1));
  CHECK(is_zero(x - x));
  CHECK(conj_val(x) == q(1, 1, -2, 1));
  CHECK_THROWS_AS(x / ExactScalar(0), SingularMatrixError);
}

TEST_CASE("exact scalar text form roundtrip") {
  const std::vector<std::string> forms = {
      "0", "3", "-3/2", "1/2+3/4*i", "-2*i", "1-1/2*i", "i", "-i", "5/7"};
  for (const auto& s : forms) {
    const ExactScalar v = parse_exact(s);
    CHECK(parse_exact(format_exact(v)) == v);
  }
  CHECK(format_exact(q(-3, 2)) == "-3/2");
  CHECK(format_exact(q(1, 2, 3, 4)) == "1/2+3/4*i");
  CHECK(format_exact(q(0, 1, -2, 1)) == "-2*i");
  CHECK(format_exact(q(1, 1, -1, 2)) == "1-1/2*i");
  CHECK(format_exact(ExactScalar(0)) == "0");
  CHECK(parse_exact("+1/2") == q(1, 2));
  CHECK_THROWS_AS(parse_exact("zz"), InputError);
  CHECK_THROWS_AS(parse_exact(""), InputError);
}

TEST_CASE("exact matrix determinant, solve, inverse") {
  Mat<ExactScalar> a(2, 2);
  a.at(0, 0) = q(1, 1);
  a.at(0, 1) = q(2, 1);
  a.at(1, 0) = q(3, 1);
  a.at(1, 1) = q(4, 1);
  CHECK(a.det() == q(-2, 1));
  const Mat<ExactScalar> inv = a.inverse();
  CHECK(a * inv == Mat<ExactScalar>::identity(2));

  Mat<ExactScalar> rhs(2, 1);
  rhs.at(0, 0) = q(1, 1);
  rhs.at(1, 0) = q(0, 1);
  const Mat<ExactScalar> x = a.solve(rhs);
  CHECK(a * x == rhs);

  Mat<ExactScalar> sing(2, 2);
  sing.at(0, 0) = q(1, 1);
  sing.at(0, 1) = q(2, 1);
  sing.at(1, 0) = q(2, 1);
  sing.at(1, 1) = q(4, 1);
  CHECK(sing.det() == ExactScalar(0));
  CHECK_THROWS_AS(sing.solve(rhs), SingularMatrixError);
}

TEST_CASE("matrix trace, kron, stacking") {
  Mat<ExactScalar> a(2, 2);
  a.at(0, 0) = q(1, 1);
  a.at(1, 1) = q(5, 1);
  CHECK(a.trace() == q(6, 1));

  Mat<ExactScalar> s(2, 2);
  s.at(0, 1) = q(7, 1);
  const Mat<ExactScalar> k = Mat<ExactScalar>::kron(s, Mat<ExactScalar>::identity(2));
  CHECK(k.rows() == 4);
  CHECK(k.at(0, 2) == q(7, 1));
  CHECK(k.at(1, 3) == q(7, 1));
  CHECK(k.at(0, 3) == ExactScalar(0));

  const Mat<ExactScalar> v = Mat<ExactScalar>::vstack(a, s);
  CHECK(v.rows() == 4);
  CHECK(v.at(2, 1) == q(7, 1));
  const Mat<ExactScalar> h = Mat<ExactScalar>::hstack(a, s);
  CHECK(h.cols() == 4);
  CHECK(h.at(0, 3) == q(7, 1));
}

TEST_CASE("exact nullspace and rank") {
  // x0 + x1 = 0
  Mat<ExactScalar> a(1, 2);
  a.at(0, 0) = q(1, 1);
  a.at(0, 1) = q(1, 1);
  const Mat<ExactScalar> ns = a.nullspace();
  CHECK(ns.cols() == 1);
  CHECK(a * ns == Mat<ExactScalar>::zeros(1, 1));
  CHECK(a.rank() == 1);

  // zero-row system: everything is free
  Mat<ExactScalar> z(0, 3);
  const Mat<ExactScalar> nz = z.nullspace();
  CHECK(nz.cols() == 3);
  CHECK(nz == Mat<ExactScalar>::identity(3));
}

TEST_CASE("float matrix basics") {
  Mat<Cx> a(2, 2);
  a.at(0, 0) = Cx(0, 1);
  a.at(0, 1) = Cx(2, 0);
  a.at(1, 0) = Cx(0, 0);
  a.at(1, 1) = Cx(1, -1);
  const Cx det = a.det();
  CHECK(approx_abs(det - Cx(0, 1) * Cx(1, -1)) < 1e-12);
  CHECK(approx_equal(a * a.inverse(), Mat<Cx>::identity(2), 1e-12));
}

static std::vector<VarId> two_vars() {
  return {VarId::flat(1), VarId::flat(2)};
}

TEST_CASE("sparse polynomial arithmetic and order") {
  const auto vars = two_vars();
  const auto x = SparsePoly<ExactScalar>::variable(vars, 0);
  const auto y = SparsePoly<ExactScalar>::variable(vars, 1);
  const auto p = (x + y) * (x + y);
  CHECK(p.coeff(Expo{2, 0}) == ExactScalar(1));
  CHECK(p.coeff(Expo{1, 1}) == ExactScalar(2));
  CHECK(p.coeff(Expo{0, 2}) == ExactScalar(1));
  CHECK(p.total_degree() == 2);
  CHECK(p.term_count() == 3);

  // graded lex: x^2 beats xy beats y^2; degree beats lex
  const auto lead = p.lead();
  CHECK(lead.first == Expo{2, 0});

  const auto zero = x - x;
  CHECK(zero.is_zero());
  CHECK(zero.total_degree() == -1);

  CHECK(p.eval({ExactScalar(2), ExactScalar(3)}) == ExactScalar(25));

  const auto q1 = x * y + x;
  CHECK(q1.multilinear_truncate() == q1);
  const auto q2 = x * x + y;
  CHECK(q2.multilinear_truncate() == y);

  const auto other = SparsePoly<ExactScalar>::variable({VarId::flat(9)}, 0);
  CHECK_THROWS_AS((void)(x + other), InputError);
}

TEST_CASE("polynomial determinant with identity stripping") {
  const auto vars = two_vars();
  const auto x = SparsePoly<ExactScalar>::variable(vars, 0);
  const auto y = SparsePoly<ExactScalar>::variable(vars, 1);
  const auto one = SparsePoly<ExactScalar>::constant(vars, ExactScalar(1));

  // [[1-x, y], [y, 1]] -> det = 1 - x - y^2
  PolyMatrix<ExactScalar> m(2, 2, vars);
  m.set(0, 0, one - x);
  m.set(0, 1, y);
  m.set(1, 0, y);
  m.set(1, 1, one);
  const auto det = poly_det(m, 12);
  CHECK(det == one - x - y * y);

  // embed in a 4x4 with two identity rows/columns: same det, cap 2 suffices
  PolyMatrix<ExactScalar> big(4, 4, vars);
  for (int i = 0; i < 4; ++i) big.set(i, i, one);
  big.set(1, 1, one - x);
  big.set(1, 3, y);
  big.set(3, 1, y);
  const auto det2 = poly_det(big, 2);
  CHECK(det2 == det);
  CHECK_THROWS_AS(poly_det(big, 1), CapExceeded);
}

TEST_CASE("exact polynomial division") {
  const auto vars = two_vars();
  const auto x = SparsePoly<ExactScalar>::variable(vars, 0);
  const auto y = SparsePoly<ExactScalar>::variable(vars, 1);
  const auto p = x * x - y * y;
  const auto d = x - y;
  const auto quo = poly_divide_exact(p, d);
  REQUIRE(quo.has_value());
  CHECK(*quo == x + y);
  CHECK(!poly_divide_exact(p + x, d).has_value());
  CHECK_THROWS_AS(poly_divide_exact(p, p - p), InputError);
}

TEST_CASE("multilinear logarithm") {
  const auto vars = two_vars();
  const auto x = SparsePoly<ExactScalar>::variable(vars, 0);
  const auto y = SparsePoly<ExactScalar>::variable(vars, 1);
  const auto one = SparsePoly<ExactScalar>::constant(vars, ExactScalar(1));

  // log((1+x)(1+y)) has no cross term
  const auto lg1 = log_multilinear((one + x) * (one + y));
  CHECK(lg1.coeff(Expo{1, 0}) == ExactScalar(1));
  CHECK(lg1.coeff(Expo{1, 1}) == ExactScalar(0));

  // log(1+x+y): cross coefficient -1
  const auto lg2 = log_multilinear(one + x + y);
  CHECK(lg2.coeff(Expo{1, 1}) == ExactScalar(-1));

  CHECK_THROWS_AS(log_multilinear(x), InputError);
}

TEST_CASE("polynomial identity testing") {
  const auto vars = two_vars();
  const auto x = SparsePoly<ExactScalar>::variable(vars, 0);
  const auto y = SparsePoly<ExactScalar>::variable(vars, 1);
  const auto p = (x + y) * (x - y);
  const auto q1 = x * x - y * y;
  CHECK(poly_equal_pit(p, q1, 8, 42));
  CHECK(!poly_equal_pit(p, q1 + x, 8, 42));
}

TEST_CASE("univariate helpers") {
  const std::vector<VarId> v1 = {VarId::s(1, 1)};
  const auto s = SparsePoly<ExactScalar>::variable(v1, 0);
  const auto one = SparsePoly<ExactScalar>::constant(v1, ExactScalar(1));
  const auto p = (s - one) * (s - ExactScalar(2) * one);
  const auto d = (s - one) * (s - ExactScalar(3) * one);
  CHECK(uni_degree(p) == 2);
  CHECK(uni_gcd(p, d) == s - one);

  const auto [quo, rem] = uni_divmod(p, s - one);
  CHECK(quo == s - ExactScalar(2) * one);
  CHECK(rem.is_zero());

  const auto qr = uni_divmod(p, s - ExactScalar(5) * one);
  CHECK(!qr.second.is_zero());
  CHECK(uni_monic(ExactScalar(7) * p) == p);
  CHECK(uni_coeff(p, 1) == ExactScalar(-3));
}

TEST_CASE("poly matrix product and sum") {
  const auto vars = two_vars();
  const auto x = SparsePoly<ExactScalar>::variable(vars, 0);
  const auto y = SparsePoly<ExactScalar>::variable(vars, 1);
  PolyMatrix<ExactScalar> a(1, 2, vars), b(2, 1, vars);
  a.set(0, 0, x);
  a.set(0, 1, y);
  b.set(0, 0, y);
  b.set(1, 0, x);
  const auto prod = a * b;
  CHECK(prod.rows() == 1);
  CHECK(prod.at(0, 0) == ExactScalar(2) * x * y);

  Mat<ExactScalar> cm(1, 1);
  cm.at(0, 0) = ExactScalar(3);
  const auto cp = PolyMatrix<ExactScalar>::constant(cm, vars);
  const auto sum = prod + cp;
  CHECK(sum.at(0, 0).coeff(Expo{0, 0}) == ExactScalar(3));
  CHECK(sum.at(0, 0).coeff(Expo{1, 1}) == ExactScalar(2));
}
