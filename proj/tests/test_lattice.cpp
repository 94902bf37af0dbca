#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coxkernel/lattice.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace coxkernel;

TEST_CASE("smith normal form of the identity is trivial") {
  const IntMatrix id = IntMatrix::Identity(2, 2);
  const auto s = smith_normal_form(id);
  CHECK(s.D == id);
  CHECK(s.U == id);
  CHECK(s.V == id);
}

TEST_CASE("smith normal form matches determinantal divisors") {
  const IntMatrix a = make_matrix({{2, 4}, {6, 8}});
  const auto expected = oracle::invariant_factors({{2, 4}, {6, 8}});
  REQUIRE(expected == std::vector<long long>{2, 4});
  const auto s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.D);
  CHECK(s.D == make_matrix({{2, 0}, {0, 4}}));

  // P^2 ray matrix as a map Z^2 -> Z^3.
  const IntMatrix p2 = make_matrix({{1, 0}, {0, 1}, {-1, -1}});
  REQUIRE(oracle::invariant_factors({{1, 0}, {0, 1}, {-1, -1}}) == std::vector<long long>{1, 1});
  const auto t = smith_normal_form(p2);
  CHECK(t.D == make_matrix({{1, 0}, {0, 1}, {0, 0}}));
  CHECK(t.U * p2 * t.V == t.D);
}

TEST_CASE("smith normal form is scalar generic") {
  Matrix<long long> a(2, 3);
  a << 4, 6, 2, 8, 10, 14;
  const auto s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.D);
  CHECK(s.invariant_factors() == oracle::invariant_factors({{4, 6, 2}, {8, 10, 14}}));
}

TEST_CASE("smith normal form property: 1000 random matrices up to 6x6") {
  std::mt19937_64 rng(20261018);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rows = static_cast<std::size_t>(dim(rng));
    const auto cols = static_cast<std::size_t>(dim(rng));
    const auto m = oracle::random_matrix(rng, rows, cols, -20, 20);
    const IntMatrix a = testutil::to_int_matrix(m);
    const auto s = smith_normal_form(a);
    REQUIRE(s.U * a * s.V == s.D);
    REQUIRE(abs(determinant(s.U)) == 1);
    REQUIRE(abs(determinant(s.V)) == 1);
    for (Eigen::Index i = 0; i < s.D.rows(); ++i)
      for (Eigen::Index j = 0; j < s.D.cols(); ++j)
        if (i != j) REQUIRE(s.D(i, j) == 0);
    const auto factors = s.invariant_factors();
    for (std::size_t i = 1; i < factors.size(); ++i) REQUIRE(factors[i] % factors[i - 1] == 0);
    const auto expected = oracle::invariant_factors(m);
    REQUIRE(factors.size() == expected.size());
    for (std::size_t i = 0; i < factors.size(); ++i) REQUIRE(factors[i] == expected[i]);
  }
}

TEST_CASE("fg abelian group canonical forms") {
  const FgAbelianGroup g(1, {Integer(2), Integer(6)});
  CHECK(g.dimension() == 3);
  const IntVector x = make_vector({5, -1, 13});
  CHECK(g.canonical_form(x) == make_vector({5, 1, 1}));
  CHECK(g.equal(make_vector({0, 3, 7}), make_vector({0, 1, 1})));
  CHECK_THROWS(FgAbelianGroup(0, {Integer(4), Integer(6)}));
  CHECK_THROWS(FgAbelianGroup(0, {Integer(1)}));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const IntVector v = testutil::random_vector(rng, 3, -50, 50);
    const IntVector c = g.canonical_form(v);
    CHECK(g.canonical_form(c) == c);
  }
}

TEST_CASE("group homomorphisms are checked on torsion") {
  const FgAbelianGroup z2(0, {Integer(2)});
  CHECK_THROWS(GroupHom(z2, FgAbelianGroup::free(1), make_matrix({{1}})));
  CHECK_NOTHROW(GroupHom(z2, FgAbelianGroup(0, {Integer(4)}), make_matrix({{2}})));
  CHECK_THROWS(GroupHom(z2, FgAbelianGroup::free(2), make_matrix({{1}})));
}

TEST_CASE("cokernel examples") {
  SUBCASE("Z^2 / <(1,1),(0,2)> is Z/2") {
    const auto q = cokernel(GroupHom::of_matrix(make_matrix({{1, 0}, {1, 2}})));
    REQUIRE(oracle::parallelepiped_points({{1, 1}, {0, 2}}) == 2);
    CHECK(q.group == FgAbelianGroup(0, {Integer(2)}));
  }
  SUBCASE("identity has trivial cokernel") {
    const auto q = cokernel(GroupHom::identity(FgAbelianGroup::free(3)));
    CHECK(q.group.is_trivial());
  }
  SUBCASE("weighted projective ray map") {
    const auto q = cokernel(GroupHom::of_matrix(make_matrix({{1, 0}, {0, 1}, {-1, -2}})));
    CHECK(q.group == FgAbelianGroup::free(1));
    CHECK(q.projection.matrix() == make_matrix({{1, 2, 1}}));
    // relation chase: e1 - e3 and e2 - 2 e3 lie in the image
    CHECK(q.projection.apply(make_vector({1, 0, -1})) == make_vector({0}));
    CHECK(q.projection.apply(make_vector({0, 1, -2})) == make_vector({0}));
  }
}

TEST_CASE("cokernel property: projection kills the image and is surjective") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<std::size_t>(dim(rng));
    const auto k = static_cast<std::size_t>(dim(rng));
    const GroupHom h = GroupHom::of_matrix(testutil::to_int_matrix(oracle::random_matrix(rng, n, k, -6, 6)));
    const auto q = cokernel(h);
    for (int i = 0; i < 100; ++i) {
      const IntVector x = testutil::random_vector(rng, k, -30, 30);
      REQUIRE(q.group.is_zero_element(q.projection.apply(h.apply(x))));
    }
    for (std::size_t g = 0; g < q.group.dimension(); ++g) {
      IntVector e = q.group.zero();
      e(static_cast<Eigen::Index>(g)) = 1;
      const auto pre = solve(q.projection, e);
      REQUIRE(pre.has_value());
      REQUIRE(q.group.equal(q.projection.apply(*pre), e));
    }
  }
}

TEST_CASE("kernel examples") {
  CHECK(kernel(GroupHom::identity(FgAbelianGroup::free(2))).empty());
  const auto k = kernel(GroupHom::of_matrix(make_matrix({{1, 1}})));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == make_vector({1, -1}));
  CHECK(kernel(GroupHom::of_matrix(make_matrix({{1, 0}, {0, 1}, {-1, -1}}))).empty());

  // Z -> Z/2, 1 -> 1: kernel 2Z
  const auto k2 = kernel(GroupHom(FgAbelianGroup::free(1), FgAbelianGroup(0, {Integer(2)}), make_matrix({{1}})));
  REQUIRE(k2.size() == 1);
  CHECK(k2[0] == make_vector({2}));
}

TEST_CASE("subgroup generation and index") {
  const auto z = FgAbelianGroup::free(1);
  auto r = subgroup_generates({make_vector({1})}, z);
  CHECK(r.is_full);
  CHECK(r.index == Integer(1));
  r = subgroup_generates({make_vector({2})}, z);
  CHECK_FALSE(r.is_full);
  CHECK(r.index == Integer(2));
  r = subgroup_generates({make_vector({1}), make_vector({1})}, z);
  CHECK(r.is_full);
  r = subgroup_generates({}, FgAbelianGroup::free(2));
  CHECK_FALSE(r.is_full);
  CHECK_FALSE(r.index.has_value());
}

TEST_CASE("solve examples and soundness") {
  const auto id = GroupHom::identity(FgAbelianGroup::free(3));
  CHECK(*solve(id, make_vector({4, -1, 2})) == make_vector({4, -1, 2}));
  CHECK_FALSE(solve(GroupHom::of_matrix(make_matrix({{2}})), make_vector({3})).has_value());
  const auto p2 = GroupHom::of_matrix(make_matrix({{1, 0}, {0, 1}, {-1, -1}}));
  CHECK(*solve(p2, make_vector({1, 1, -2})) == make_vector({1, 1}));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const GroupHom h = GroupHom::of_matrix(testutil::to_int_matrix(oracle::random_matrix(rng, 3, 2, -4, 4)));
    const IntVector t = testutil::random_vector(rng, 3, -6, 6);
    if (const auto x = solve(h, t)) REQUIRE(h.apply(*x) == t);
  }
}

TEST_CASE("sublattice helpers") {
  CHECK(same_lattice({make_vector({1, 1}), make_vector({0, 2})}, {make_vector({2, 0}), make_vector({1, 1})}, 2));
  const auto sat = saturated_span({make_vector({2, 2, 0})}, 3);
  REQUIRE(sat.size() == 1);
  CHECK(sat[0] == make_vector({1, 1, 0}));
  const IntMatrix u = complete_to_unimodular(sat, 3);
  CHECK(abs(determinant(u)) == 1);
  CHECK(u.col(0) == make_vector({1, 1, 0}));
}
