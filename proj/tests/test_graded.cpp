#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coxkernel/graded.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <set>

using namespace coxkernel;
using testutil::vecs;

namespace {

GradedMonoidAlgebra identity_graded(std::size_t d, std::vector<IntVector> gens, IndexSet inverted = {}) {
  return GradedMonoidAlgebra(AffineMonoid(d, std::move(gens)), GroupHom::identity(FgAbelianGroup::free(d)),
                             std::move(inverted));
}

GradedMonoidAlgebra z_graded_poly(std::initializer_list<long> degrees, IndexSet inverted = {}) {
  std::vector<IntVector> ds;
  for (long w : degrees) ds.push_back(make_vector({w}));
  return GradedMonoidAlgebra::polynomial_ring(FgAbelianGroup::free(1), ds, std::move(inverted));
}

// Faces of a monoid as generator sets, found by the supporting-normal search.
std::set<IndexSet> oracle_faces(const std::vector<IntVector>& gens, std::size_t d) {
  return oracle::face_sets_by_normals(testutil::to_oracle(gens), d, 6);
}

// Random element of the localized monoid: a small non-negative combination of
// its generators.
IntVector random_element(std::mt19937_64& rng, const AffineMonoid& m, long max_coeff) {
  std::uniform_int_distribution<long> c(0, max_coeff);
  IntVector x = IntVector::Zero(static_cast<Eigen::Index>(m.ambient_rank()));
  for (const auto& g : m.generators()) x += c(rng) * g;
  return x;
}

// All exponent vectors of N^3 with the given weighted total degree.
std::vector<IntVector> monomials_of_degree(long deg) {
  std::vector<IntVector> out;
  for (long a = 0; a <= deg; ++a)
    for (long b = 0; a + b <= deg; ++b) out.push_back(make_vector({a, b, deg - a - b}));
  return out;
}

HomogeneousPolynomial random_poly(std::mt19937_64& rng, const GradedMonoidAlgebra& r, long deg) {
  const auto monos = monomials_of_degree(deg);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3), count(1, 4);
  HomogeneousPolynomial::Terms t;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    int c = coeff(rng);
    if (c == 0) c = 1;
    t[monos[pick(rng)]] = c;
  }
  return HomogeneousPolynomial(r, t);
}

}  // namespace

TEST_CASE("k-spectrum examples") {
  const auto plane = identity_graded(2, vecs({{1, 0}, {0, 1}}));
  const Spectrum s = k_spectrum(plane);
  CHECK(s.size() == 4);
  const auto maximal = s.find({});
  REQUIRE(maximal < s.size());
  CHECK(s.points[maximal].ideal_generators == vecs({{1, 0}, {0, 1}}));
  // the maximal ideal contains every other monomial prime
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.ideal_contained(i, maximal));

  const auto laurent = identity_graded(2, vecs({{1, 0}, {0, 1}}), {0, 1});
  const Spectrum ls = k_spectrum(laurent);
  REQUIRE(ls.size() == 1);
  CHECK(ls.points[0].ideal_generators.empty());

  const auto gens = vecs({{0, 1}, {1, 0}, {2, -1}});
  const Spectrum ms = k_spectrum(identity_graded(2, gens));
  CHECK(ms.size() == 4);
  CHECK(ms.size() == oracle_faces(gens, 2).size());

  try {
    k_spectrum(z_graded_poly({1, 1}));
    FAIL("expected refusal");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()) == "K-spectrum exceeds monomial ideals; faithful grading required");
  }
  CHECK(invariant_spectrum(z_graded_poly({1, 1})).size() == 4);
}

TEST_CASE("spectrum bijection with monoid faces") {
  const std::vector<std::pair<std::size_t, std::vector<IntVector>>> corpus = {
      {2, vecs({{1, 0}, {0, 1}})},
      {2, vecs({{0, 1}, {1, 0}, {2, -1}})},
      {3, vecs({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})},
      {3, vecs({{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}})},
      {2, vecs({{1, 0}, {1, 1}, {1, 2}, {1, 3}})},
      {1, vecs({{2}, {3}})},
  };
  for (const auto& [d, gens] : corpus) {
    const auto r = identity_graded(d, gens);
    const Spectrum s = k_spectrum(r);
    REQUIRE(s.size() == monoid_faces(r.monoid()).size());
    REQUIRE(s.size() == oracle_faces(gens, d).size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      // face -> prime -> face is the identity
      REQUIRE(s.find(s.points[i].face.generators) == i);
      // p_tau is generated by the generators outside tau
      REQUIRE(s.points[i].ideal_generators.size() + s.points[i].face.generators.size() == gens.size());
    }
    for (const auto& [small, big] : s.covers) REQUIRE(s.ideal_contained(small, big));
  }
}

TEST_CASE("stalks") {
  const auto plane = identity_graded(2, vecs({{1, 0}, {0, 1}}));
  const Spectrum s = k_spectrum(plane);
  const auto at_origin = stalk(plane, s.points[s.find({})]);
  CHECK(at_origin.inverted().empty());
  CHECK(at_origin.localized().generators() == plane.monoid().generators());

  const auto along_axis = stalk(plane, s.points[s.find({0})]);
  CHECK(along_axis.inverted() == IndexSet{0});
  CHECK(along_axis.has_monomial(make_vector({-3, 2})));
  CHECK_FALSE(along_axis.has_monomial(make_vector({0, -1})));

  const auto gens = vecs({{0, 1}, {1, 0}, {2, -1}});
  const auto r = identity_graded(2, gens);
  const Spectrum rs = k_spectrum(r);
  const auto st = stalk(r, rs.points[rs.find({0})]);
  CHECK(st.has_monomial(make_vector({2, -1})));
  CHECK(st.has_monomial(make_vector({1, 0})));
  CHECK(st.has_monomial(make_vector({0, -1})));
  // oracle: x is in M - N(0,1) iff x + k(0,1) is in M for some k >= 0
  const auto og = testutil::to_oracle(gens);
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      bool expected = false;
      for (long k = 0; k <= 12 && !expected; ++k) expected = oracle::in_monoid(og, {a, b + k}, {2, 1});
      REQUIRE(st.has_monomial(make_vector({a, b})) == expected);
    }

  PrimePoint foreign{Face{{1}, {}, make_vector({0, 0}), 1}, {}};
  CHECK_THROWS_AS(stalk(r, foreign), std::invalid_argument);
}

TEST_CASE("good quotient examples") {
  SUBCASE("deg x = 1, deg y = -1") {
    const auto r = z_graded_poly({1, -1});
    const GoodQuotient q = good_quotient_affine(r);
    CHECK(q.base.generators() == vecs({{1, 1}}));
    CHECK(q.is_surjective());
    REQUIRE(q.base_faces.size() == 2);
    const std::size_t origin = q.base_faces.find_by_generators({});
    const IndexSet fiber = q.fiber(origin);
    CHECK(fiber.size() == 3);
    const std::size_t p = distinguished_point(q, fiber);
    CHECK(q.source.points[p].face.generators.empty());
    CHECK(q.source.points[p].ideal_generators == vecs({{1, 0}, {0, 1}}));
    CHECK_THROWS_AS(distinguished_point(q, {fiber[0]}), std::invalid_argument);
  }
  SUBCASE("trivial grading") {
    const auto r = GradedMonoidAlgebra(AffineMonoid::orthant(2),
                                       GroupHom(FgAbelianGroup::free(2), FgAbelianGroup::free(0), IntMatrix(0, 2)));
    const GoodQuotient q = good_quotient_affine(r);
    CHECK(q.is_bijective());
    for (std::size_t i = 0; i < q.point_map.size(); ++i) {
      CHECK(q.base_faces.faces[q.point_map[i]].dimension == q.source.faces.faces[i].dimension);
      CHECK(distinguished_point(q, q.fiber(q.point_map[i])) == i);
    }
  }
  SUBCASE("deg x = deg y = 1") {
    const auto r = z_graded_poly({1, 1});
    const GoodQuotient q = good_quotient_affine(r);
    CHECK(q.base.generators().empty());
    REQUIRE(q.base_faces.size() == 1);
    const IndexSet fiber = q.fiber(0);
    CHECK(fiber.size() == 4);
    CHECK(q.source.points[distinguished_point(q, fiber)].face.generators.empty());
  }
}

TEST_CASE("good quotient laws on monomial closed sets") {
  const std::vector<GradedMonoidAlgebra> charts = {
      z_graded_poly({1, -1}),
      z_graded_poly({1, 1}),
      z_graded_poly({1, 1, -2}),
      z_graded_poly({1, 2, -1, -1}),
      z_graded_poly({1, 1, 1}, {2}),
      GradedMonoidAlgebra::polynomial_ring(FgAbelianGroup(0, {Integer(2)}), vecs({{1}, {1}})),
      GradedMonoidAlgebra(AffineMonoid(2, vecs({{0, 1}, {1, 0}, {2, -1}})), GroupHom::of_matrix(make_matrix({{0, 1}}))),
  };
  for (const auto& r : charts) {
    const GoodQuotient q = good_quotient_affine(r);
    REQUIRE(q.source.size() <= 30);
    REQUIRE(q.is_surjective());
    const auto& gens = r.localized().generators();
    // closed sets V(I) for I generated by a subset of the monomial generators
    std::vector<IndexSet> closed;
    for (std::size_t mask = 0; mask < (std::size_t{1} << gens.size()); ++mask) {
      std::vector<IntVector> ideal;
      for (std::size_t g = 0; g < gens.size(); ++g)
        if (mask >> g & 1) ideal.push_back(gens[g]);
      closed.push_back(vanishing_set(q.source, r, ideal));
    }
    for (const auto& a : closed)
      for (const auto& b : closed) {
        IndexSet both;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
        const IndexSet qa = q.image(a), qb = q.image(b);
        IndexSet meet;
        std::set_intersection(qa.begin(), qa.end(), qb.begin(), qb.end(), std::back_inserter(meet));
        REQUIRE(q.image(both) == meet);
      }
    // unique distinguished point per fiber; closed iff the base point is closed
    for (std::size_t b = 0; b < q.base_faces.size(); ++b) {
      const std::size_t p = distinguished_point(q, q.fiber(b));
      const bool point_closed = closure(q.source, p).size() == 1;
      std::size_t below = 0;
      for (std::size_t c = 0; c < q.base_faces.size(); ++c) below += q.base_faces.is_subface(c, b) ? 1 : 0;
      REQUIRE(point_closed == (below == 1));
    }
  }
}

TEST_CASE("degree-zero generators of a non-saturated monoid") {
  // M = <(2,0),(3,0),(0,1)>, deg = second coordinate: M_0 = <2,3> on the axis
  const GradedMonoidAlgebra r(AffineMonoid(2, vecs({{2, 0}, {3, 0}, {0, 1}})), GroupHom::of_matrix(make_matrix({{0, 1}})));
  CHECK(degree_zero_generators(r) == vecs({{2, 0}, {3, 0}}));
}

TEST_CASE("homogeneous units") {
  CHECK(homogeneous_units(z_graded_poly({1, 1})).degree_generators.empty());
  const auto u = homogeneous_units(z_graded_poly({1, 1}, {1}));
  CHECK(subgroup_generates(u.degree_generators, FgAbelianGroup::free(1)).is_full);
  const auto ray_stalk = homogeneous_units(z_graded_poly({1, 1, 1}, {1, 2}));
  REQUIRE(ray_stalk.degree_generators.size() == 2);
  CHECK(subgroup_generates(ray_stalk.degree_generators, FgAbelianGroup::free(1)).is_full);
}

TEST_CASE("monomial valuations") {
  const auto r = z_graded_poly({1, 1, 1});
  CHECK(monomial_valuation(r, HomogeneousPolynomial::monomial(r, make_vector({2, 1, 0})), 0) == 2);

  HomogeneousPolynomial::Terms t{{make_vector({2, 1, 0}), Rational(1)}, {make_vector({0, 0, 3}), Rational(1)}};
  CHECK(monomial_valuation(r, HomogeneousPolynomial(r, t), 0) == 0);

  const auto x = HomogeneousPolynomial::monomial(r, make_vector({1, 0, 0}));
  HomogeneousPolynomial::Terms xy{{make_vector({1, 0, 0}), Rational(1)}, {make_vector({0, 1, 0}), Rational(1)}};
  const auto s = HomogeneousPolynomial(r, xy);
  const auto f = multiply(x, multiply(s, s));
  // x (x + y)^2 = x^3 + 2 x^2 y + x y^2 expanded by hand
  HomogeneousPolynomial::Terms expanded{{make_vector({3, 0, 0}), Rational(1)},
                                        {make_vector({2, 1, 0}), Rational(2)},
                                        {make_vector({1, 2, 0}), Rational(1)}};
  CHECK(f == HomogeneousPolynomial(r, expanded));
  CHECK(monomial_valuation(r, f, 0) == 1);
  CHECK(monomial_valuation(r, f, 1) == 0);

  CHECK_THROWS_WITH(monomial_valuation(z_graded_poly({1, 1}, {0}),
                                       HomogeneousPolynomial::monomial(z_graded_poly({1, 1}, {0}), make_vector({0, 1})), 0),
                    "valuation not discrete at generator 0");
  CHECK_THROWS(HomogeneousPolynomial(r, HomogeneousPolynomial::Terms{{make_vector({1, 0, 0}), Rational(1)},
                                                                     {make_vector({0, 2, 0}), Rational(1)}}));
  CHECK_FALSE(add(x, HomogeneousPolynomial::monomial(r, make_vector({1, 0, 0}), Rational(-1))).has_value());
}

TEST_CASE("valuation laws on random homogeneous pairs") {
  const auto r = z_graded_poly({1, 1, 1});
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> deg(0, 4);
  std::uniform_int_distribution<std::size_t> var(0, 2);
  for (int trial = 0; trial < 500; ++trial) {
    const long d = deg(rng);
    const auto f = random_poly(rng, r, d);
    const auto g = random_poly(rng, r, deg(rng));
    const auto h = random_poly(rng, r, d);
    const std::size_t i = var(rng);
    REQUIRE(monomial_valuation(r, multiply(f, g), i) == monomial_valuation(r, f, i) + monomial_valuation(r, g, i));
    if (const auto sum = add(f, h))
      REQUIRE(monomial_valuation(r, *sum, i) >= std::min(monomial_valuation(r, f, i), monomial_valuation(r, h, i)));
  }
}

TEST_CASE("coarsening examples") {
  SUBCASE("identity coarsening") {
    const auto r = z_graded_poly({1, 2});
    const CoarsenedAlgebra c = coarsen_cie(r, kernel_character(r, GroupHom::identity(FgAbelianGroup::free(1))));
    CHECK(c.exponent_group() == FgAbelianGroup::free(2));
    const auto ideal = vecs({{2, 0}, {1, 1}, {3, 3}});
    CHECK(c.ideal_forward(ideal) == vecs({{1, 1}, {2, 0}}));
    CHECK(same_ideal(r, c.ideal_backward(c.ideal_forward(ideal)), ideal));
  }
  SUBCASE("Laurent polynomials onto Z/2") {
    const auto r = z_graded_poly({1}, {0});
    const FgAbelianGroup z2(0, {Integer(2)});
    const GroupHom psi(FgAbelianGroup::free(1), z2, make_matrix({{1}}));
    const CoarseningData data = kernel_character(r, psi);
    REQUIRE(data.kernel_basis == vecs({{2}}));
    CHECK(data.chi_exponents == vecs({{2}}));
    const CoarsenedAlgebra c = coarsen_cie(r, data);
    CHECK(c.exponent_group() == z2);
    // one monomial class per degree: both components are one-dimensional
    for (long w = 0; w < 2; ++w) {
      int count = 0;
      for (long e = 0; e < 2; ++e)
        if (c.degree(make_vector({e})) == make_vector({w})) ++count;
      CHECK(count == 1);
    }
    const auto t = vecs({{1}});
    CHECK(same_ideal(r, c.ideal_backward(c.ideal_forward(t)), t));
    CHECK(c.same_coarse_ideal(c.ideal_forward(c.ideal_backward(vecs({{1}}))), vecs({{1}})));
    // units: all of Z/2 in the coarse ring, kernel of psi on unit degrees is im(chi) = 2Z
    CHECK(subgroup_generates(c.unit_degrees(), z2).is_full);
  }
  SUBCASE("P^1 fine grading has no unit for the kernel") {
    const auto fine = GradedMonoidAlgebra::polynomial_ring(FgAbelianGroup::free(2), vecs({{1, 0}, {0, 1}}));
    const GroupHom psi = GroupHom::of_matrix(make_matrix({{1, 1}}));
    CHECK_THROWS_WITH(kernel_character(fine, psi), "no homogeneous unit of degree (1,-1)");
    CHECK_THROWS_WITH(coarsen_cie(fine, CoarseningData{psi, vecs({{1, -1}}), vecs({{1, -1}})}),
                      "kernel character value (1,-1) is not a unit");
  }
}

TEST_CASE("coarsening bijection on random monomial ideals") {
  // (fine algebra, psi) fixtures whose kernels are spanned by unit degrees
  const FgAbelianGroup z2(0, {Integer(2)});
  std::vector<std::pair<GradedMonoidAlgebra, GroupHom>> fixtures;
  fixtures.emplace_back(z_graded_poly({1}, {0}), GroupHom(FgAbelianGroup::free(1), z2, make_matrix({{1}})));
  fixtures.emplace_back(GradedMonoidAlgebra::polynomial_ring(FgAbelianGroup::free(2), vecs({{1, 0}, {1, 1}, {0, 1}}), {2}),
                        GroupHom::of_matrix(make_matrix({{1, 0}})));
  fixtures.emplace_back(
      GradedMonoidAlgebra::polynomial_ring(FgAbelianGroup::free(2), vecs({{1, 0}, {1, 1}, {0, 2}}), {2}),
      GroupHom(FgAbelianGroup::free(2), FgAbelianGroup(1, {Integer(2)}), make_matrix({{1, 0}, {0, 1}})));
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> size(1, 3);
  for (const auto& [fine, psi] : fixtures) {
    const CoarsenedAlgebra c = coarsen_cie(fine, kernel_character(fine, psi));
    auto random_ideal = [&] {
      std::vector<IntVector> gens;
      const int n = size(rng);
      for (int i = 0; i < n; ++i) gens.push_back(random_element(rng, fine.localized(), 2));
      return gens;
    };
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = random_ideal();
      const auto b = random_ideal();
      REQUIRE(same_ideal(fine, c.ideal_backward(c.ideal_forward(a)), a));
      const auto ca = c.ideal_forward(a);
      REQUIRE(c.same_coarse_ideal(c.ideal_forward(c.ideal_backward(ca)), ca));
      // sums and products are preserved
      std::vector<IntVector> sum = a, product;
      sum.insert(sum.end(), b.begin(), b.end());
      for (const auto& x : a)
        for (const auto& y : b) product.emplace_back(x + y);
      std::vector<IntVector> fsum = c.ideal_forward(a), fprod;
      const auto fb = c.ideal_forward(b);
      fsum.insert(fsum.end(), fb.begin(), fb.end());
      for (const auto& x : c.ideal_forward(a))
        for (const auto& y : fb) fprod.push_back(c.exponent_group().canonical_form(IntVector(x + y)));
      REQUIRE(c.same_coarse_ideal(c.ideal_forward(sum), fsum));
      REQUIRE(c.same_coarse_ideal(c.ideal_forward(product), fprod));
      // components: a coarse monomial has the degree of any of its lifts
      const IntVector m = random_element(rng, fine.localized(), 3);
      REQUIRE(c.degree(c.project(m)) == psi.apply(fine.degree(m)));
    }
  }
}

TEST_CASE("proj quotient") {
  SUBCASE("P^1") {
    const ProjQuotient p = proj_quotient(z_graded_poly({1, 1}));
    REQUIRE(p.charts.size() == 2);
    CHECK(p.geometric);
    CHECK(p.points.size() == 3);
    CHECK(p.charts[0].quotient.base.generators() == vecs({{-1, 1}}));
    CHECK(p.charts[1].quotient.base.generators() == vecs({{1, -1}}));
  }
  SUBCASE("a point") {
    const ProjQuotient p = proj_quotient(z_graded_poly({1}));
    REQUIRE(p.charts.size() == 1);
    CHECK(p.geometric);
    CHECK(p.points.size() == 1);
    CHECK(p.charts[0].quotient.base.generators().empty());
  }
  SUBCASE("weights (1,2)") {
    const ProjQuotient p = proj_quotient(z_graded_poly({1, 2}));
    REQUIRE(p.charts.size() == 2);
    CHECK(p.geometric);
    CHECK(p.charts[0].quotient.base.generators() == vecs({{-2, 1}}));
    CHECK(p.charts[1].quotient.base.generators() == vecs({{2, -1}}));
  }
  CHECK_THROWS_WITH(proj_quotient(z_graded_poly({1, -1})), "proj requires non-negative degrees");
}

TEST_CASE("spectrum morphisms") {
  const auto n1 = AffineMonoid::orthant(1);
  const auto n2 = AffineMonoid::orthant(2);
  const auto id = spec_morphism(n2, n2, GroupHom::identity(FgAbelianGroup::free(2)));
  for (std::size_t i = 0; i < id.size(); ++i) CHECK(id[i] == i);

  const GroupHom axis = GroupHom::of_matrix(make_matrix({{1}, {0}}));
  const auto inc = spec_morphism(n1, n2, axis);
  const auto f2 = monoid_faces(n2), f1 = monoid_faces(n1);
  CHECK(f1.faces[inc[f2.find_by_generators({})]].generators.empty());
  CHECK(f1.faces[inc[f2.find_by_generators({0})]].generators == IndexSet{0});
  CHECK(f1.faces[inc[f2.find_by_generators({1})]].generators.empty());

  const GroupHom sum = GroupHom::of_matrix(make_matrix({{1, 1}}));
  const auto s = spec_morphism(n2, n1, sum);
  CHECK(f2.faces[s[f1.find_by_generators({})]].generators.empty());
  CHECK(f2.faces[s[f1.find_by_generators({0})]].generators == IndexSet{0, 1});

  // contravariance: Spec(sum ∘ axis) = Spec(axis) ∘ Spec(sum)
  const auto composite = spec_morphism(n1, n1, compose(sum, axis));
  for (std::size_t t = 0; t < composite.size(); ++t) CHECK(composite[t] == inc[s[t]]);

  CHECK_THROWS_WITH(spec_morphism(n1, n2, GroupHom::of_matrix(make_matrix({{-1}, {0}}))),
                    "monoid map does not send M' into M");
}
