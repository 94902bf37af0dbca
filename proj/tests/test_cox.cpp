#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coxkernel/cox.hpp"
#include "corpus.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace coxkernel;
using testutil::vecs;

namespace {

std::vector<std::string> failing(const VerificationReport& r) { return r.failing_clauses(); }

GradedMonoidAlgebra graded_polynomials(const FgAbelianGroup& k, const std::vector<IntVector>& degrees,
                                       IndexSet inverted = {}) {
  return GradedMonoidAlgebra::polynomial_ring(k, degrees, std::move(inverted));
}

bool is_subset(const IndexSet& a, const IndexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

TEST_CASE("cox presentations") {
  const auto p1 = cox_presentation(corpus::p1());
  CHECK(p1.cl == FgAbelianGroup::free(1));
  CHECK(p1.deg.matrix() == make_matrix({{1, 1}}));
  CHECK(p1.ring.generator_count() == 2);

  const auto p121 = cox_presentation(corpus::p121());
  CHECK(p121.cl == FgAbelianGroup::free(1));
  CHECK(p121.deg.matrix() == make_matrix({{1, 2, 1}}));
  REQUIRE(oracle::cokernel_shape({{1, 0}, {0, 1}, {-1, -2}}) == oracle::GroupShape{1, {}});

  const auto a1 = cox_presentation(corpus::a1_chart());
  CHECK(a1.cl == FgAbelianGroup(0, {Integer(2)}));
  CHECK(a1.deg.matrix() == make_matrix({{1, 1}}));

  CHECK(p1.fine_ring.is_faithful());
  CHECK_FALSE(p1.ring.is_faithful());

  const Fan torus_factor{2, vecs({{1, 0}, {-1, 0}}), {{0}, {1}}};
  CHECK_THROWS_WITH(cox_presentation(torus_factor), "torus factor: Cox presentation refused (div_K kernel condition)");
}

TEST_CASE("characteristic space charts") {
  SUBCASE("P1") {
    const auto charts = characteristic_space(cox_presentation(corpus::p1()));
    REQUIRE(charts.size() == 2);
    CHECK(charts[0].inverted == IndexSet{1});
    CHECK(charts[0].degree_zero == vecs({{1, -1}}));
    CHECK(charts[1].inverted == IndexSet{0});
    CHECK(charts[1].degree_zero == vecs({{-1, 1}}));
  }
  SUBCASE("A2") {
    const auto charts = characteristic_space(cox_presentation(corpus::affine_plane()));
    REQUIRE(charts.size() == 1);
    CHECK(charts[0].inverted.empty());
    auto zero = charts[0].degree_zero;
    sort_unique(zero);
    CHECK(zero == vecs({{0, 1}, {1, 0}}));
  }
  SUBCASE("P2") {
    const auto charts = characteristic_space(cox_presentation(corpus::p2()));
    REQUIRE(charts.size() == 3);
    // each maximal cone has two of the three rays, so one variable is inverted
    for (const auto& c : charts) {
      CHECK(c.cone.size() == 2);
      CHECK(c.inverted.size() == 1);
      CHECK(c.isomorphism);
    }
  }
  SUBCASE("every corpus chart exhibits the quotient isomorphism") {
    for (const auto& [name, f] : corpus::all_fans()) {
      CAPTURE(name);
      for (const auto& c : characteristic_space(cox_presentation(f))) {
        CHECK(c.isomorphism);
        CHECK(c.hilbert_bijection);
      }
    }
  }
}

TEST_CASE("verifiers A, B, C pass on the corpus") {
  for (const auto& [name, f] : corpus::all_fans()) {
    CAPTURE(name);
    const auto p = cox_presentation(f);
    const auto a = verify_theoremA(p);
    const auto b = verify_theoremB(p);
    const auto c = verify_theoremC(p);
    CHECK(failing(a).empty());
    CHECK(failing(b).empty());
    CHECK(failing(c).empty());
    if (a.all_pass()) CHECK(c.all_pass());
    CHECK(a.find("A.iii.kernel") != nullptr);
  }
}

TEST_CASE("verifier details") {
  SUBCASE("ray stalk units on P2 generate Z") {
    const auto b = verify_theoremB(cox_presentation(corpus::p2()));
    const auto* c = b.find("B.iv.ray_units[0]");
    REQUIRE(c != nullptr);
    CHECK(c->pass);
    CHECK(c->witness["unit_degrees"] == nlohmann::json({{1}, {1}}));
  }
  SUBCASE("A1 chart: units at the distinguished point are trivial") {
    const auto b = verify_theoremB(cox_presentation(corpus::a1_chart()));
    const auto* c = b.find("B.iii.units[0,1]");
    REQUIRE(c != nullptr);
    CHECK(c->pass);
    CHECK(c->witness["unit_degrees"].empty());
  }
  SUBCASE("P1: the preimage of Y0 is <x>") {
    const auto c = verify_theoremC(cox_presentation(corpus::p1()));
    REQUIRE(c.find("C.supplement.prime_preimage[0]") != nullptr);
    CHECK(c.find("C.supplement.prime_preimage[0]")->pass);
    CHECK(c.find("C.supplement.incidence")->pass);
  }
  SUBCASE("a chart without the quotient isomorphism is reported, not thrown") {
    const auto p = cox_presentation(corpus::p1());
    auto charts = characteristic_space(p);
    charts[0].isomorphism = false;
    const auto c = verify_theoremC(p, charts);
    CHECK(failing(c) == std::vector<std::string>{"C.ii"});
  }
  SUBCASE("json shape") {
    const auto j = to_json(verify_theoremA(cox_presentation(corpus::p2())));
    REQUIRE(j.is_array());
    CHECK(j[0].contains("id"));
    CHECK(j[0].contains("pass"));
    CHECK(j[0].contains("witness"));
    CHECK_FALSE(to_json(verify_theoremA(cox_presentation(corpus::p2())), false)[0].contains("witness"));
  }
}

TEST_CASE("theorem D fixtures") {
  const auto z = FgAbelianGroup::free(1);
  const auto z2 = FgAbelianGroup::free(2);

  SUBCASE("Cox ring of P1 passes") {
    CHECK(verify_theoremD(graded_polynomials(z, vecs({{1}, {1}}))).all_pass());
  }
  SUBCASE("trivially extended grading fails (iv), and (iii) with it") {
    const auto r = verify_theoremD(graded_polynomials(z2, vecs({{1, 0}, {1, 0}})));
    CHECK(failing(r) == std::vector<std::string>{"D.iii", "D.iv"});
  }
  SUBCASE("Laurent-augmented ring fails only (ii)") {
    const auto r = verify_theoremD(
        graded_polynomials(z2, vecs({{0, 0}, {0, 0}, {1, 0}, {0, 1}}), IndexSet{2, 3}));
    CHECK(failing(r) == std::vector<std::string>{"D.ii"});
  }
  SUBCASE("phi into an index-2 subgroup of Cl fails only (i)") {
    const DivisorialAlgebraSpec spec{3, vecs({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}),
                                     GroupHom::of_matrix(make_matrix({{2}, {0}, {0}, {0}}))};
    const auto pres = divisorial_algebra_presentation(spec);
    const auto r = verify_theoremD(pres.algebra, spec);
    CHECK(failing(r) == std::vector<std::string>{"D.i"});
    CHECK_FALSE(r.find("D.i.class_semigroup")->pass);
    CHECK(r.find("D.i.class_semigroup_agrees")->pass);
    CHECK(r.find("D.i.class_semigroup")->witness["class_group"] == "Z/2");
  }
  SUBCASE("phi = identity over a non-free Cl fails only (ii)") {
    const DivisorialAlgebraSpec spec{2, vecs({{1, 0}, {1, 2}}), GroupHom::identity(z2)};
    const auto r = verify_theoremD(divisorial_algebra_presentation(spec).algebra, spec);
    CHECK(failing(r) == std::vector<std::string>{"D.ii"});
  }
  SUBCASE("Cox rings of the corpus pass") {
    for (const auto& [name, f] : corpus::all_fans()) {
      CAPTURE(name);
      CHECK(verify_theoremD(cox_presentation(f).ring).all_pass());
    }
  }
}

TEST_CASE("prime systems") {
  const auto z = FgAbelianGroup::free(1);
  CHECK(find_prime_system(graded_polynomials(z, vecs({{1}, {1}}))) == IndexSet{0, 1});
  CHECK(find_prime_system(cox_presentation(corpus::p2()).ring) == IndexSet{0, 1, 2});
  CHECK(find_prime_system(graded_polynomials(z, vecs({{1}, {-1}}))) == IndexSet{0, 1});
  CHECK_THROWS_AS(find_prime_system(graded_polynomials(FgAbelianGroup::free(2), vecs({{1, 0}, {1, 0}}))),
                  std::invalid_argument);
}

TEST_CASE("reconstruction") {
  const auto z = FgAbelianGroup::free(1);
  SUBCASE("P1 from k[x,y]") {
    const auto r = graded_polynomials(z, vecs({{1}, {1}}));
    const auto rec = reconstruct_from_prime_system(r, find_prime_system(r));
    CHECK(same_fan_up_to_ray_permutation(rec.fan, corpus::p1()));
  }
  SUBCASE("P2 round trip") {
    CHECK(same_fan_up_to_ray_permutation(reconstruct_base(cox_presentation(corpus::p2())).fan, corpus::p2()));
  }
  SUBCASE("Z/2 grading gives the rays of the A1 cone as two charts") {
    const auto a1 = cox_presentation(corpus::a1_chart());
    const auto system = find_prime_system(a1.ring);
    CHECK(system == IndexSet{0, 1});
    const auto rec = reconstruct_from_prime_system(a1.ring, system, ray_map(corpus::a1_chart()));
    CHECK(rec.fan.max_cones.size() == 2);
    auto rays = rec.fan.rays, expected = corpus::a1_chart().rays;
    sort_unique(rays);
    sort_unique(expected);
    CHECK(rays == expected);
    // the punctured chart: every reconstructed cone is a proper face of the A1 cone
    const auto whole = reconstruct_base(a1);
    REQUIRE(whole.fan.max_cones.size() == 1);
    for (const auto& c : rec.fan.max_cones) CHECK(c.size() == 1);
    CHECK(same_fan_up_to_ray_permutation(whole.fan, corpus::a1_chart()));
  }
  SUBCASE("round trip over the corpus") {
    for (const auto& [name, f] : corpus::all_fans()) {
      CAPTURE(name);
      CHECK(same_fan_up_to_ray_permutation(reconstruct_base(cox_presentation(f)).fan, f));
    }
  }
  SUBCASE("round trip with a permuted ray order") {
    const Fan f{2, vecs({{0, -1}, {-1, 1}, {1, 0}, {0, 1}}), {{2, 0}, {3, 2}, {1, 3}, {0, 1}}};
    CHECK(same_fan_up_to_ray_permutation(reconstruct_base(cox_presentation(f)).fan, corpus::hirzebruch1()));
  }
  SUBCASE("charts that do not glue") {
    const auto r = graded_polynomials(z, vecs({{1}, {1}, {1}}));
    CHECK_THROWS_WITH_AS(reconstruct_base(r, {{0, 1, 2}}), doctest::Contains("charts do not glue"), std::runtime_error);
  }
}

TEST_CASE("orbit face lattices") {
  SUBCASE("orthant") {
    const auto o = orbit_face_lattice(Cone(2, vecs({{1, 0}, {0, 1}})));
    CHECK(o.nodes.size() == 4);
    CHECK(o.cl.is_trivial());
    CHECK(o.ideals_prime);
    CHECK(o.order_reversing);
    CHECK(o.bijective);
  }
  SUBCASE("A1 cone carries torsion degrees") {
    const auto o = orbit_face_lattice(Cone(2, vecs({{1, 0}, {1, 2}})));
    CHECK(o.nodes.size() == 4);
    CHECK(o.cl == FgAbelianGroup(0, {Integer(2)}));
    CHECK(o.bijective);
    for (const auto& node : o.nodes)
      for (const auto& d : node.degrees) CHECK(d == make_vector({1}));
    // the open orbit has every variable nonvanishing, the fixed point none
    CHECK(o.nodes.front().degree_variables.empty());
    CHECK(o.nodes.back().degree_variables == IndexSet{0, 1});
  }
  SUBCASE("torus") {
    const auto o = orbit_face_lattice(Cone(2, {}));
    CHECK(o.nodes.size() == 1);
    CHECK(o.bijective);
  }
  SUBCASE("every corpus cone") {
    for (const auto& [name, f] : corpus::all_fans())
      for (const auto& tau : f.cones()) {
        CAPTURE(name);
        const auto o = orbit_face_lattice(f.cone(tau));
        CHECK(o.ideals_prime);
        CHECK(o.order_reversing);
        CHECK(o.bijective);
        for (const auto& [lo, hi] : o.covers) CHECK(is_subset(o.nodes[lo].monoid_face, o.nodes[hi].monoid_face));
      }
  }
}

TEST_CASE("F1 points of toric fans") {
  CHECK(toric_f1_points(corpus::p1()).points.size() == 3);
  CHECK(toric_f1_points(corpus::p2()).points.size() == 7);
  const auto a2 = toric_f1_points(corpus::affine_plane());
  CHECK(a2.points.size() == 4);
  CHECK(a2.points.size() == k_spectrum(cox_presentation(corpus::affine_plane()).fine_ring).size());

  const auto p1 = toric_f1_points(corpus::p1());
  // the generic point (cone {0}) specializes to both closed points
  CHECK(p1.points[0].cone.empty());
  CHECK(std::count(p1.specializations.begin(), p1.specializations.end(), std::pair<std::size_t, std::size_t>{0, 1}) == 1);
  CHECK(std::count(p1.specializations.begin(), p1.specializations.end(), std::pair<std::size_t, std::size_t>{1, 2}) == 0);

  for (const auto& [name, f] : corpus::all_fans()) {
    CAPTURE(name);
    const auto s = toric_f1_points(f);
    CHECK(s.points.size() == f.cones().size());
    CHECK(s.order_reversed);
    CHECK(s.effective);
    CHECK(s.inverse_verified);
  }
  // pointed cones have full-dimensional duals, so lower-dimensional charts are effective too
  CHECK(toric_f1_points(Fan{2, vecs({{1, 0}}), {{0}}}).effective);
}

TEST_CASE("proj of k[x,y] matches the F1 points of P1") {
  const auto r = graded_polynomials(FgAbelianGroup::free(1), vecs({{1}, {1}}));
  const auto q = proj_quotient(r);
  CHECK(q.charts.size() == 2);
  CHECK(q.geometric);
  CHECK(q.points.size() == 3);
  CHECK(q.points.size() == toric_f1_points(corpus::p1()).points.size());
}

TEST_CASE("divisorial presentation pushed to Z/2 gives the Cox ring of the A1 chart") {
  const DivisorialAlgebraSpec spec{2, vecs({{1, 0}, {1, 2}}), GroupHom::identity(FgAbelianGroup::free(2))};
  const auto pres = divisorial_algebra_presentation(spec);
  const auto cox = cox_presentation(corpus::a1_chart());
  // psi: Z^2 = WDiv -> Cl = Z/2, the degree map of the fan
  const auto data = kernel_character(pres.algebra, cox.deg);
  const CoarsenedAlgebra coarse = coarsen_cie(pres.algebra, data);
  CHECK(coarse.degree_group() == cox.cl);
  // (m, w) -> (<m, v_rho> + w_rho) identifies the coarse monoid with N^2
  const auto& gens = pres.algebra.monoid().generators();
  const IntMatrix t = make_matrix({{1, 0, 1, 0}, {1, 2, 0, 1}});
  std::vector<IntVector> images;
  for (const auto& g : gens) {
    const IntVector x = t * g;
    CHECK(is_nonnegative(x));
    images.push_back(x);
    // x is the exponent of the same monomial in the Cox ring, with the same Z/2 degree
    CHECK(cox.cl.equal(coarse.degree(coarse.project(g)), cox.ring.degree(x)));
  }
  CHECK(same_lattice(images, vecs({{1, 0}, {0, 1}}), 2));
  CHECK(AffineMonoid(2, images).contains(make_vector({1, 0})));
  CHECK(AffineMonoid(2, images).contains(make_vector({0, 1})));
  // the units of the fine presentation are exactly the kernel of t
  for (const auto& u : homogeneous_units(pres.algebra).unit_exponents) CHECK(is_zero(IntVector(t * u)));
}
