#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "collig/semigroup.hpp"

using namespace collig;

static ExactScalar q(long nr, long dr = 1) { return ExactScalar::make(nr, dr); }

static Colligation<ExactScalar> rand_collig(const Shape& s, int seed) {
  Rng rng(static_cast<std::uint64_t>(seed));
  return random_colligation_exact(s, Flavor::general, rng);
}

TEST_CASE("product shape and precondition") {
  const auto g = rand_collig(Shape{2, 2, 1}, 1);
  const auto h = rand_collig(Shape{2, 2, 2}, 2);
  const auto gh = circ(g, h);
  CHECK(gh.shape == Shape{2, 2, 3});
  CHECK_THROWS_AS(circ(g, rand_collig(Shape{1, 2, 1}, 3)), InputError);
  CHECK_THROWS_AS(circ(g, rand_collig(Shape{2, 1, 1}, 4)), InputError);
}

// The two extended matrices for m = 2, N1 = N2 = 1, alpha = 1, written out
// entry by entry in the interleaved basis (corner; block1: z, w; block2: z, w)
// where z is the first factor's inner direction and w the second's. This
// pins the inner coordinate ordering of the product.
TEST_CASE("product block layout for m = 2") {
  const auto g = rand_collig(Shape{1, 2, 1}, 11);
  const auto h = rand_collig(Shape{1, 2, 1}, 12);

  const auto a = [](const Colligation<ExactScalar>& C) {
    return block_a(C).at(0, 0);
  };
  const auto b = [](const Colligation<ExactScalar>& C, int beta) {
    return block_b(C, beta).at(0, 0);
  };
  const auto c = [](const Colligation<ExactScalar>& C, int gamma) {
    return block_c(C, gamma).at(0, 0);
  };
  const auto d = [](const Colligation<ExactScalar>& C, int phi, int psi) {
    return block_d(C, phi, psi).at(0, 0);
  };

  Mat<ExactScalar> ge(5, 5);  // g on (corner, z1, z2), identity on (w1, w2)
  ge.at(0, 0) = a(g);
  ge.at(0, 1) = b(g, 1);
  ge.at(0, 3) = b(g, 2);
  ge.at(1, 0) = c(g, 1);
  ge.at(3, 0) = c(g, 2);
  ge.at(1, 1) = d(g, 1, 1);
  ge.at(1, 3) = d(g, 1, 2);
  ge.at(3, 1) = d(g, 2, 1);
  ge.at(3, 3) = d(g, 2, 2);
  ge.at(2, 2) = q(1);
  ge.at(4, 4) = q(1);

  Mat<ExactScalar> he(5, 5);  // h on (corner, w1, w2), identity on (z1, z2)
  he.at(0, 0) = a(h);
  he.at(0, 2) = b(h, 1);
  he.at(0, 4) = b(h, 2);
  he.at(2, 0) = c(h, 1);
  he.at(4, 0) = c(h, 2);
  he.at(2, 2) = d(h, 1, 1);
  he.at(2, 4) = d(h, 1, 2);
  he.at(4, 2) = d(h, 2, 1);
  he.at(4, 4) = d(h, 2, 2);
  he.at(1, 1) = q(1);
  he.at(3, 3) = q(1);

  const auto gh = circ(g, h);
  CHECK(gh.g == ge * he);
}

TEST_CASE("product is associative at the matrix level") {
  for (int m : {1, 2}) {
    const auto g = rand_collig(Shape{2, m, 1}, 20 + m);
    const auto h = rand_collig(Shape{2, m, 2}, 30 + m);
    const auto k = rand_collig(Shape{2, m, 1}, 40 + m);
    const auto left = circ(circ(g, h), k);
    const auto right = circ(g, circ(h, k));
    CHECK(left.shape == right.shape);
    CHECK(left.g == right.g);
  }
}

TEST_CASE("neutral elements act as identities") {
  const auto g = rand_collig(Shape{2, 2, 2}, 50);
  const auto e = neutral_colligation<ExactScalar>(2, 2);
  CHECK(e.shape.N == 0);
  CHECK(circ(e, g).g == g.g);
  CHECK(circ(g, e).g == g.g);
  // non-neutral N = 0 colligations still multiply (corner products)
  Mat<ExactScalar> a2(2, 2);
  a2.at(0, 0) = q(2);
  a2.at(1, 1) = q(3);
  const Colligation<ExactScalar> s(Shape{2, 2, 0}, Flavor::general, a2);
  CHECK(block_a(circ(s, g)) == a2 * block_a(g));
}

TEST_CASE("product of many factors folds left") {
  const std::vector<Colligation<ExactScalar>> fs = {
      rand_collig(Shape{1, 2, 1}, 61), rand_collig(Shape{1, 2, 1}, 62),
      rand_collig(Shape{1, 2, 2}, 63)};
  const auto chain = circ_chain(fs);
  CHECK(chain.shape == Shape{1, 2, 4});
  CHECK(chain.g == circ(circ(fs[0], fs[1]), fs[2]).g);
  CHECK_THROWS_AS(circ_chain<ExactScalar>({}), InputError);
}

TEST_CASE("flavor combination") {
  Rng rng(70);
  const auto u1 = random_colligation_float(Shape{1, 2, 1}, Flavor::unitary, rng);
  const auto u2 = random_colligation_float(Shape{1, 2, 2}, Flavor::unitary, rng);
  const auto uu = circ(u1, u2);
  CHECK(uu.flavor == Flavor::unitary);
  CHECK(validate(uu).empty());  // the product matrix really is unitary

  const auto i1 =
      random_colligation_float(Shape{1, 2, 1}, Flavor::invertible, rng);
  CHECK(circ(u1, i1).flavor == Flavor::invertible);
  CHECK(circ(i1, i1).flavor == Flavor::invertible);
  const auto g1 = random_colligation_float(Shape{1, 2, 1}, Flavor::general, rng);
  CHECK(circ(u1, g1).flavor == Flavor::general);
  CHECK(circ(g1, i1).flavor == Flavor::general);
}

TEST_CASE("identity colligation is neutral for characteristic data") {
  const auto id = identity_colligation<ExactScalar>(Shape{2, 2, 1});
  CHECK(id.g == Mat<ExactScalar>::identity(4));
  const auto g = rand_collig(Shape{2, 2, 1}, 80);
  // identity circ g has the same corner data as g extended trivially
  const auto p = circ(id, g);
  CHECK(p.shape == Shape{2, 2, 2});
}
