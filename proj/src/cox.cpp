#include "coxkernel/cox.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace coxkernel {

using nlohmann::json;

namespace {

json vec_json(const IntVector& v) { return to_int64(v); }

json vecs_json(const std::vector<IntVector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(vec_json(v));
  return out;
}

IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector e = IntVector::Zero(static_cast<Eigen::Index>(n));
  e(static_cast<Eigen::Index>(i)) = 1;
  return e;
}

bool member(const IndexSet& s, std::size_t i) { return std::find(s.begin(), s.end(), i) != s.end(); }

IndexSet complement(const IndexSet& s, std::size_t n) {
  IndexSet out;
  for (std::size_t i = 0; i < n; ++i)
    if (!member(s, i)) out.push_back(i);
  return out;
}

std::string index_tag(const IndexSet& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

void add(VerificationReport& r, std::string id, std::string statement, bool pass, json witness = json::object()) {
  r.conditions.push_back(Condition{std::move(id), std::move(statement), pass, std::move(witness)});
}

std::vector<IntVector> columns(const IntMatrix& m) {
  std::vector<IntVector> out;
  for (Eigen::Index j = 0; j < m.cols(); ++j) out.emplace_back(m.col(j));
  return out;
}

std::vector<IntVector> localized_degrees(const GradedMonoidAlgebra& r) {
  std::vector<IntVector> out;
  for (const auto& g : r.localized().generators()) out.push_back(r.degree(g));
  return out;
}

/// Valuations of chi^e along the variables, or nullopt where undefined.
std::optional<Integer> try_valuation(const GradedMonoidAlgebra& r, const IntVector& e, std::size_t i) {
  try {
    return valuation_of_monomial(r, e, i);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

IntVector divisor_vector(const GradedMonoidAlgebra& r, const IntVector& e) {
  IntVector out(static_cast<Eigen::Index>(r.generator_count()));
  for (std::size_t i = 0; i < r.generator_count(); ++i) out(static_cast<Eigen::Index>(i)) = valuation_of_monomial(r, e, i);
  return out;
}

bool is_polynomial_ring(const GradedMonoidAlgebra& r) {
  const auto& gens = r.monoid().generators();
  if (gens.size() != r.ambient_rank()) return false;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i] != unit_vector(gens.size(), i)) return false;
  return true;
}

/// Point of the spectrum of a polynomial ring (possibly localized) whose face
/// is spanned by the variables in `face_vars` together with every inverted one.
std::size_t point_of_variables(const Spectrum& s, const GradedMonoidAlgebra& r, const IndexSet& face_vars) {
  IndexSet gens = face_vars;
  for (auto i : r.inverted()) gens.push_back(i);
  for (std::size_t k = 0; k < r.inverted().size(); ++k) gens.push_back(r.generator_count() + k);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return s.find(gens);
}

std::vector<IntVector> canonical(const FgAbelianGroup& g, std::vector<IntVector> vs) {
  for (auto& v : vs) v = g.canonical_form(v);
  return vs;
}

/// Facets of cone(M) scaled to be primitive on group(M), evaluated on the
/// group basis.
IntMatrix facet_valuation_matrix(const AffineMonoid& m) {
  const auto& facets = m.cone().facet_normals();
  const auto& basis = m.group_basis();
  IntMatrix out(static_cast<Eigen::Index>(facets.size()), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t f = 0; f < facets.size(); ++f) {
    Integer g = 0;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      out(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(b)) = dot(facets[f], basis[b]);
      g = gcd(g, out(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(b)));
    }
    if (g != 0) out.row(static_cast<Eigen::Index>(f)) /= g;
  }
  return out;
}

}  // namespace

// ---- presentations ---------------------------------------------------------

CoxPresentation cox_presentation(const Fan& f) {
  const ClassGroup cl = class_group(f);
  if (matrix_rank(ray_map(f)) != static_cast<Eigen::Index>(f.lattice_rank))
    throw std::invalid_argument("torus factor: Cox presentation refused (div_K kernel condition)");
  if (!cokernel(cl.degree).group.is_trivial()) throw std::logic_error("cox_presentation: degree map not surjective");
  const std::size_t k = f.rays.size();
  std::vector<IntVector> degrees;
  for (std::size_t i = 0; i < k; ++i) degrees.push_back(cl.degree.image_of_generator(i));
  CoxPresentation p;
  p.fan = f;
  p.cl = cl.group;
  p.deg = cl.degree;
  p.ring = GradedMonoidAlgebra::polynomial_ring(cl.group, degrees);
  p.fine_ring = GradedMonoidAlgebra(AffineMonoid::orthant(k), GroupHom::identity(FgAbelianGroup::free(k)));
  return p;
}

std::vector<CharSpaceChart> characteristic_space(const CoxPresentation& p) {
  const std::size_t n = p.fan.lattice_rank;
  const std::size_t k = p.fan.rays.size();
  const IntMatrix pairing = ray_map(p.fan);
  const IntMatrix id = IntMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<CharSpaceChart> out;
  for (const auto& sigma : p.fan.max_cones) {
    CharSpaceChart c;
    c.cone = sigma;
    std::sort(c.cone.begin(), c.cone.end());
    c.inverted = complement(c.cone, k);
    c.ring = localize(p.ring, c.inverted);
    c.base = AffineMonoid(n, lattice_cone_generators(dual_cone(p.fan.cone(sigma)), id));
    c.degree_zero = degree_zero_generators(c.ring);

    std::vector<IntVector> images;
    for (const auto& g : c.base.generators()) images.emplace_back(pairing * g);
    const AffineMonoid zero(k, c.degree_zero);
    bool forward = std::all_of(images.begin(), images.end(), [&](const IntVector& x) { return zero.contains(x); });
    bool backward = std::all_of(c.degree_zero.begin(), c.degree_zero.end(), [&](const IntVector& z) {
      const auto m = lattice_coordinates(pairing, z);
      return m && c.base.contains(*m);
    });
    c.isomorphism = forward && backward;
    if (c.base.is_pointed()) {
      auto a = images, b = c.degree_zero;
      sort_unique(a);
      sort_unique(b);
      c.hilbert_bijection = c.isomorphism && a == b && a.size() == images.size();
    } else {
      c.hilbert_bijection = c.isomorphism;
    }
    out.push_back(std::move(c));
  }
  return out;
}

// ---- reports ---------------------------------------------------------------

bool VerificationReport::all_pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.pass; });
}

std::vector<std::string> VerificationReport::failing_clauses() const {
  std::set<std::string> out;
  for (const auto& c : conditions) {
    if (c.pass) continue;
    const auto first = c.id.find('.');
    const auto second = c.id.find('.', first + 1);
    out.insert(c.id.substr(0, second));
  }
  return {out.begin(), out.end()};
}

const Condition* VerificationReport::find(const std::string& id) const {
  for (const auto& c : conditions)
    if (c.id == id) return &c;
  return nullptr;
}

json to_json(const VerificationReport& r, bool witnesses) {
  json out = json::array();
  for (const auto& c : r.conditions) {
    json e{{"id", c.id}, {"pass", c.pass}, {"statement", c.statement}};
    if (witnesses) e["witness"] = c.witness;
    out.push_back(std::move(e));
  }
  return out;
}

// ---- Cox ring characterization over the base -------------------------------

VerificationReport verify_theoremA(const CoxPresentation& p) {
  VerificationReport rep{"A", {}};
  const std::size_t n = p.fan.lattice_rank;
  const std::size_t k = p.fan.rays.size();
  const IntMatrix pairing = ray_map(p.fan);
  std::vector<IntVector> degrees;
  for (std::size_t i = 0; i < k; ++i) degrees.push_back(p.ring.generator_degree(i));

  const auto gen = subgroup_generates(degrees, p.cl);
  add(rep, "A.i.degrees", "degrees of monomial fractions generate Cl", gen.is_full,
      {{"degrees", vecs_json(canonical(p.cl, degrees))}, {"cl", p.cl.describe()}});

  const auto ker = kernel(p.deg);
  add(rep, "A.i.degree_zero_lattice", "degree-zero monomial fractions form the character lattice M",
      same_lattice(ker, columns(pairing), k), {{"kernel", vecs_json(ker)}, {"ray_pairing", vecs_json(columns(pairing))}});

  json bad = json::array();
  for (std::size_t rho = 0; rho < k; ++rho)
    for (std::size_t j = 0; j < n; ++j) {
      const IntVector image = pairing.col(static_cast<Eigen::Index>(j));
      const Integer v = valuation_of_monomial(p.ring, image, rho);
      if (v != pairing(static_cast<Eigen::Index>(rho), static_cast<Eigen::Index>(j)))
        bad.push_back({{"ray", rho}, {"m", vec_json(unit_vector(n, j))}, {"value", to_string(v)}});
    }
  add(rep, "A.ii.valuations", "ray valuations of the Cox ring restrict to the fan valuations on M", bad.empty(),
      {{"mismatches", bad}});

  std::vector<IntVector> images;
  for (std::size_t i = 0; i < k; ++i) images.push_back(divisor_vector(p.ring, unit_vector(k, i)));
  add(rep, "A.iii.surjective", "monomial div_K maps onto the invariant divisors",
      subgroup_generates(images, FgAbelianGroup::free(k)).is_full, {{"images", vecs_json(images)}});

  const auto div_kernel = kernel_basis(stack_columns(images, k));
  const auto units = homogeneous_units(p.ring);
  add(rep, "A.iii.kernel", "div_K has trivial kernel on monomials and all homogeneous units are constants",
      div_kernel.empty() && units.unit_exponents.empty(),
      {{"kernel", vecs_json(div_kernel)}, {"unit_exponents", vecs_json(units.unit_exponents)}});

  json wrong = json::array();
  for (std::size_t i = 0; i < k; ++i) {
    const IntVector e = unit_vector(k, i);
    if (!p.cl.equal(p.deg.apply(e), p.deg.apply(divisor_vector(p.ring, e)))) wrong.push_back(i);
  }
  add(rep, "A.supplement.class_map", "deg_K(x_rho) equals the class of div_K(x_rho)", wrong.empty(), {{"variables", wrong}});
  return rep;
}

VerificationReport verify_theoremB(const CoxPresentation& p) {
  VerificationReport rep{"B", {}};
  const std::size_t n = p.fan.lattice_rank;
  const std::size_t k = p.fan.rays.size();
  const IntMatrix pairing = ray_map(p.fan);

  for (IndexSet sigma : p.fan.max_cones) {
    std::sort(sigma.begin(), sigma.end());
    const std::string tag = index_tag(sigma);
    const IndexSet inverted = complement(sigma, k);
    const GradedMonoidAlgebra chart = localize(p.ring, inverted);
    const AffineMonoid& loc = chart.localized();

    std::vector<IntVector> inverted_units;
    for (auto i : inverted) inverted_units.push_back(unit_vector(k, i));
    const bool units_ok = same_lattice(loc.units_basis(), inverted_units, k) &&
                          std::all_of(loc.unit_generators().begin(), loc.unit_generators().end(), [&](std::size_t g) {
                            return g >= k || member(inverted, g);
                          });
    add(rep, "B.i.free_monoid" + tag, "chart monomials modulo units are free on the cone variables", units_ok,
        {{"cone", sigma}, {"units", vecs_json(loc.units_basis())}});

    const auto degrees = localized_degrees(chart);
    add(rep, "B.i.degrees" + tag, "chart monomial degrees generate Cl", subgroup_generates(degrees, p.cl).is_full,
        {{"cone", sigma}});

    json bad = json::array();
    for (std::size_t i = 0; i < k; ++i) {
      const auto v = try_valuation(chart, unit_vector(k, i), i);
      if (v.has_value() != member(sigma, i)) bad.push_back({{"variable", i}, {"discrete", v.has_value()}});
      if (!v) continue;
      for (std::size_t j = 0; j < k; ++j)
        if (*try_valuation(chart, unit_vector(k, j), i) != (i == j ? 1 : 0)) bad.push_back({{"variable", i}, {"on", j}});
    }
    add(rep, "B.ii.essential" + tag, "essential valuations of the chart are the orders along its cone variables",
        bad.empty(), {{"cone", sigma}, {"violations", bad}});

    const Spectrum s = invariant_spectrum(chart);
    const PrimePoint& dist = s.points.front();
    const GradedMonoidAlgebra st = stalk(chart, dist);
    bool stalk_ok = true;
    for (const auto& g : st.localized().generators())
      for (auto rho : sigma) stalk_ok = stalk_ok && g(static_cast<Eigen::Index>(rho)) >= 0;
    for (std::size_t i = 0; i < k; ++i) {
      stalk_ok = stalk_ok && st.has_monomial(unit_vector(k, i));
      if (!member(sigma, i)) stalk_ok = stalk_ok && st.has_monomial(IntVector(-unit_vector(k, i)));
    }
    auto ideal = dist.ideal_generators;
    std::vector<IntVector> expected;
    for (auto rho : sigma) expected.push_back(unit_vector(k, rho));
    sort_unique(ideal);
    sort_unique(expected);
    stalk_ok = stalk_ok && ideal == expected;
    add(rep, "B.iii.stalk" + tag, "stalk at the distinguished point is cut out by the ray conditions of the cone",
        stalk_ok, {{"cone", sigma}, {"ideal", vecs_json(dist.ideal_generators)}});

    const auto unit_degrees = homogeneous_units(st).degree_generators;
    std::vector<IntVector> off_cone, principal_near;
    for (auto i : inverted) off_cone.push_back(p.ring.generator_degree(i));
    principal_near = off_cone;
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(n); ++j)
      principal_near.push_back(p.deg.apply(IntVector(pairing.col(j))));
    add(rep, "B.iii.units" + tag, "unit degrees at the distinguished point are the classes principal near it",
        same_subgroup(unit_degrees, off_cone, p.cl) && same_subgroup(off_cone, principal_near, p.cl),
        {{"cone", sigma}, {"unit_degrees", vecs_json(canonical(p.cl, unit_degrees))}});
  }

  const Spectrum whole = invariant_spectrum(p.ring);
  for (std::size_t rho = 0; rho < k; ++rho) {
    const IndexSet others = complement({rho}, k);
    const std::size_t idx = point_of_variables(whole, p.ring, others);
    bool ok = idx < whole.size();
    json w{{"ray", rho}};
    if (ok) {
      const auto degrees = homogeneous_units(stalk(p.ring, whole.points[idx])).degree_generators;
      std::vector<IntVector> expected;
      for (auto j : others) expected.push_back(p.ring.generator_degree(j));
      ok = subgroup_generates(degrees, p.cl).is_full && same_subgroup(degrees, expected, p.cl);
      w["unit_degrees"] = vecs_json(canonical(p.cl, degrees));
    }
    add(rep, "B.iv.ray_units[" + std::to_string(rho) + "]", "the stalk at the ray prime has units in every degree", ok, w);
  }
  return rep;
}

VerificationReport verify_theoremC(const CoxPresentation& p, const std::vector<CharSpaceChart>& charts) {
  VerificationReport rep{"C", {}};
  const std::size_t n = p.fan.lattice_rank;
  const std::size_t k = p.fan.rays.size();
  const IntMatrix pairing = ray_map(p.fan);

  for (const auto& c : charts) {
    const std::string tag = index_tag(c.cone);
    add(rep, "C.i.degrees" + tag, "degrees of homogeneous fractions on the chart are all of Cl",
        subgroup_generates(localized_degrees(c.ring), p.cl).is_full, {{"cone", c.cone}});

    const GoodQuotient q = good_quotient_affine(c.ring);
    bool distinguished = true;
    for (std::size_t b = 0; b < q.base_faces.size(); ++b) {
      const IndexSet fiber = q.fiber(b);
      try {
        distinguished = distinguished && !fiber.empty() && distinguished_point(q, fiber) < q.source.size();
      } catch (const std::exception&) {
        distinguished = false;
      }
    }
    const std::size_t cone_faces = face_lattice(p.fan.cone(c.cone)).size();
    add(rep, "C.ii.good_quotient" + tag,
        "degree-zero monoid of the chart is sigma^dual ∩ M and the quotient is surjective with distinguished points",
        c.isomorphism && c.hilbert_bijection && q.is_surjective() && q.base_faces.size() == cone_faces && distinguished,
        {{"cone", c.cone},
         {"isomorphism", c.isomorphism},
         {"hilbert_bijection", c.hilbert_bijection},
         {"base_points", q.base_faces.size()},
         {"cone_faces", cone_faces}});

    json bad = json::array();
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(n); ++j)
      for (auto rho : c.cone) {
        const auto v = try_valuation(c.ring, IntVector(pairing.col(j)), rho);
        if (!v || *v != pairing(static_cast<Eigen::Index>(rho), j)) bad.push_back({{"ray", rho}, {"m", static_cast<long long>(j)}});
      }
    add(rep, "C.ii.divisor_diagram" + tag, "div^K of the pulled-back character equals div of the character",
        bad.empty(), {{"cone", c.cone}, {"mismatches", bad}});
  }

  json bad = json::array();
  for (std::size_t i = 0; i < k; ++i)
    if (divisor_vector(p.ring, unit_vector(k, i)) != unit_vector(k, i)) bad.push_back(i);
  add(rep, "C.iii.class_group", "every invariant divisor is a monomial div_K, so the invariant Cl^K vanishes",
      bad.empty(), {{"variables", bad}});

  const auto units = homogeneous_units(p.ring).degree_generators;
  add(rep, "C.iii.units", "global homogeneous units have degree zero",
      std::all_of(units.begin(), units.end(), [&](const IntVector& d) { return p.cl.is_zero_element(d); }),
      {{"unit_degrees", vecs_json(canonical(p.cl, units))}});

  const Spectrum s = invariant_spectrum(p.ring);
  std::vector<std::size_t> ray_points;
  for (std::size_t rho = 0; rho < k; ++rho) {
    const std::size_t idx = point_of_variables(s, p.ring, complement({rho}, k));
    ray_points.push_back(idx);
    bool ok = idx < s.size() && s.points[idx].ideal_generators == std::vector<IntVector>{unit_vector(k, rho)};
    add(rep, "C.supplement.prime_preimage[" + std::to_string(rho) + "]",
        "the preimage of the ray divisor is the single invariant prime <x_rho>", ok, {{"ray", rho}});
  }

  json mismatches = json::array();
  for (const auto& tau : p.fan.cones()) {
    const std::size_t pt = point_of_variables(s, p.ring, complement(tau, k));
    for (std::size_t rho = 0; rho < k; ++rho) {
      const bool in_closure = pt < s.size() && ray_points[rho] < s.size() && member(closure(s, ray_points[rho]), pt);
      if (in_closure != member(tau, rho)) mismatches.push_back({{"cone", tau}, {"ray", rho}});
    }
  }
  add(rep, "C.supplement.incidence", "p_sigma lies in the closure of <x_rho> exactly when rho is a ray of sigma",
      mismatches.empty(), {{"mismatches", mismatches}});
  return rep;
}

// ---- characterization of Cox rings by the ring alone -----------------------

VerificationReport verify_theoremD(const GradedMonoidAlgebra& r, const std::optional<DivisorialAlgebraSpec>& spec) {
  VerificationReport rep{"D", {}};
  const AffineMonoid& loc = r.localized();
  const FgAbelianGroup& k = r.degree_group();
  const auto& gens = loc.generators();

  // Irreducible non-unit classes; the monoid modulo units is free iff their
  // number equals the rank of group(M) / units.
  std::vector<IntVector> classes;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (member(loc.unit_generators(), g)) continue;
    const bool seen = std::any_of(classes.begin(), classes.end(), [&](const IntVector& c) {
      return loc.contains(IntVector(c - gens[g])) && loc.contains(IntVector(gens[g] - c));
    });
    if (!seen) classes.push_back(gens[g]);
  }
  std::vector<IntVector> irreducible;
  for (const auto& g : classes) {
    const bool reducible = std::any_of(classes.begin(), classes.end(), [&](const IntVector& h) {
      return h != g && loc.contains(IntVector(g - h));
    });
    if (!reducible) irreducible.push_back(g);
  }
  const std::size_t rank = loc.group_basis().size() - loc.units_basis().size();
  add(rep, "D.i.free_monoid", "homogeneous monomials modulo units form a free monoid", irreducible.size() == rank,
      {{"irreducible", vecs_json(irreducible)}, {"rank", rank}});

  const Cokernel cl = cokernel(GroupHom::of_matrix(facet_valuation_matrix(loc)));
  add(rep, "D.i.class_semigroup", "the invariant class group of the monoid algebra vanishes", cl.group.is_trivial(),
      {{"class_group", cl.group.describe()}});
  if (spec) {
    const FgAbelianGroup expected = divisorial_class_semigroup(*spec).group;
    add(rep, "D.i.class_semigroup_agrees", "the class group agrees with Cl(A) / im(phi)", expected == cl.group,
        {{"class_group", cl.group.describe()}, {"cl_A_mod_phi", expected.describe()}});
  }

  const auto units = homogeneous_units(r).degree_generators;
  add(rep, "D.ii.units", "homogeneous units have degree zero",
      std::all_of(units.begin(), units.end(), [&](const IntVector& d) { return k.is_zero_element(d); }),
      {{"unit_degrees", vecs_json(canonical(k, units))}});

  const auto degrees = localized_degrees(r);
  const auto gen = subgroup_generates(degrees, k);
  json w{{"degrees", vecs_json(canonical(k, degrees))}};
  if (gen.index) w["index"] = to_string(*gen.index);
  add(rep, "D.iii.degrees", "degrees of homogeneous elements generate K", gen.is_full, w);

  const auto& facets = loc.cone().facet_normals();
  for (std::size_t f = 0; f < facets.size(); ++f) {
    std::vector<IntVector> on_facet;
    for (const auto& g : gens)
      if (dot(facets[f], g) == 0) on_facet.push_back(r.degree(g));
    add(rep, "D.iv.units[" + std::to_string(f) + "]",
        "the localization at the invariant prime divisor has units in every degree",
        subgroup_generates(on_facet, k).is_full,
        {{"facet", vec_json(facets[f])}, {"unit_degrees", vecs_json(canonical(k, on_facet))}});
  }
  return rep;
}

IndexSet find_prime_system(const GradedMonoidAlgebra& r) {
  const VerificationReport rep = verify_theoremD(r);
  const auto failing = rep.failing_clauses();
  if (!failing.empty()) {
    std::string msg = "characterization fails:";
    for (const auto& c : failing) msg += " " + c;
    throw std::invalid_argument(msg);
  }
  if (!is_polynomial_ring(r)) throw std::invalid_argument("find_prime_system expects a polynomial ring");
  const std::size_t n = r.generator_count();
  const IndexSet system = complement(r.inverted(), n);
  for (auto j : system) {
    std::vector<IntVector> rest;
    for (std::size_t g = 0; g < r.localized().generators().size(); ++g)
      if (g != j) rest.push_back(r.degree(r.localized().generators()[g]));
    if (!subgroup_generates(rest, r.degree_group()).is_full)
      throw std::runtime_error("monomial primes do not suffice: degrees without x_" + std::to_string(j) +
                               " miss part of K");
  }
  return system;
}

Reconstruction reconstruct_base(const GradedMonoidAlgebra& r, const std::vector<IndexSet>& charts,
                                const std::optional<IntMatrix>& lattice_basis) {
  if (!is_polynomial_ring(r)) throw std::invalid_argument("reconstruct_base expects a polynomial ring");
  const std::size_t n = r.generator_count();
  const auto ker = kernel(r.grading());
  Reconstruction out;
  out.lattice_basis = lattice_basis ? *lattice_basis : stack_columns(ker, n);
  if (static_cast<std::size_t>(out.lattice_basis.rows()) != n ||
      matrix_rank(out.lattice_basis) != out.lattice_basis.cols() || !same_lattice(columns(out.lattice_basis), ker, n))
    throw std::invalid_argument("reconstruct_base: lattice basis does not span ker(deg)");
  const auto rank = static_cast<std::size_t>(out.lattice_basis.cols());

  std::vector<IntVector> rays;
  std::vector<IndexSet> cones;
  for (const auto& chart : charts) {
    for (auto j : chart)
      if (j >= n || member(r.inverted(), j)) throw std::invalid_argument("reconstruct_base: chart variable " + std::to_string(j) + " is not a prime generator");
    const GradedMonoidAlgebra ring = localize(r, complement(chart, n));
    std::vector<IntVector> coords;
    for (const auto& z : degree_zero_generators(ring)) coords.push_back(*lattice_coordinates(out.lattice_basis, z));
    const Cone sigma = dual_cone(Cone(rank, coords));
    if (!sigma.is_pointed())
      throw std::runtime_error("charts do not glue: chart " + index_tag(chart) + " has a cone with lineality");
    IndexSet cone;
    for (const auto& v : sigma.extreme_rays()) {
      auto it = std::find(rays.begin(), rays.end(), v);
      if (it == rays.end()) {
        rays.push_back(v);
        it = rays.end() - 1;
      }
      cone.push_back(static_cast<std::size_t>(it - rays.begin()));
    }
    std::sort(cone.begin(), cone.end());
    cones.push_back(std::move(cone));
    out.chart_monoids.push_back(std::move(coords));
  }
  std::vector<IndexSet> maximal;
  for (std::size_t a = 0; a < cones.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < cones.size() && !dominated; ++b)
      if (a != b && std::includes(cones[b].begin(), cones[b].end(), cones[a].begin(), cones[a].end()))
        dominated = cones[a] != cones[b] || b < a;
    if (!dominated) maximal.push_back(cones[a]);
  }
  out.fan = Fan{rank, rays, maximal};
  const FanReport report = validate_fan(out.fan);
  if (!report.valid()) {
    std::string msg = "charts do not glue:";
    for (const auto& v : report.violations) msg += " " + v + ";";
    msg.pop_back();
    throw std::runtime_error(msg);
  }
  return out;
}

Reconstruction reconstruct_from_prime_system(const GradedMonoidAlgebra& r, const IndexSet& system,
                                             const std::optional<IntMatrix>& lattice_basis) {
  std::vector<IndexSet> charts;
  for (auto j : system) charts.push_back({j});
  return reconstruct_base(r, charts, lattice_basis);
}

Reconstruction reconstruct_base(const CoxPresentation& p) {
  return reconstruct_base(p.ring, p.fan.max_cones, ray_map(p.fan));
}

// ---- orbits and F1 points --------------------------------------------------

OrbitLattice orbit_face_lattice(const Cone& sigma) {
  if (!sigma.is_pointed()) throw std::invalid_argument("orbit_face_lattice: cone is not pointed");
  const std::size_t n = sigma.ambient_rank();
  const auto& rays = sigma.extreme_rays();
  const IntMatrix id = IntMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  OrbitLattice out;
  out.monoid_generators = lattice_cone_generators(dual_cone(sigma), id);
  const AffineMonoid s(n, out.monoid_generators);
  const FaceLattice faces = monoid_faces(s);
  const Cokernel cl = cokernel(GroupHom::of_matrix(stack_rows(rays, n)));
  out.cl = cl.group;
  const auto& gens = s.generators();

  out.ideals_prime = true;
  for (const auto& f : faces.faces) {
    OrbitNode node;
    node.monoid_face = f.generators;
    for (std::size_t rho = 0; rho < rays.size(); ++rho) {
      const bool orthogonal = std::all_of(f.generators.begin(), f.generators.end(),
                                          [&](std::size_t g) { return dot(gens[g], rays[rho]) == 0; });
      if (orthogonal) node.cone_face.push_back(rho);
      else node.degree_variables.push_back(rho);
    }
    for (auto rho : node.degree_variables) node.degrees.push_back(cl.projection.image_of_generator(rho));
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const Integer v = dot(f.normal, gens[g]);
      if (v < 0 || (v == 0) != member(f.generators, g)) out.ideals_prime = false;
      if (!member(f.generators, g)) node.ideal_generators.push_back(gens[g]);
    }
    out.nodes.push_back(std::move(node));
  }
  out.covers = faces.covers;

  auto subset = [](const auto& a, const auto& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); };
  out.order_reversing = true;
  for (std::size_t a = 0; a < out.nodes.size(); ++a)
    for (std::size_t b = 0; b < out.nodes.size(); ++b) {
      if (!faces.is_subface(a, b)) continue;
      auto ia = out.nodes[a].ideal_generators, ib = out.nodes[b].ideal_generators;
      const bool ideals = std::all_of(ib.begin(), ib.end(), [&](const IntVector& x) { return contains_vector(ia, x); });
      out.order_reversing = out.order_reversing && ideals && subset(out.nodes[b].cone_face, out.nodes[a].cone_face) &&
                            subset(out.nodes[a].degree_variables, out.nodes[b].degree_variables);
    }

  // Each labelling recovers the others: the ideal determines the face as its
  // complement, and the degree variables determine the cone face likewise.
  std::set<IndexSet> monoid_faces_seen, cone_faces_seen;
  out.bijective = true;
  for (const auto& node : out.nodes) {
    IndexSet from_ideal;
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (!contains_vector(node.ideal_generators, gens[g])) from_ideal.push_back(g);
    out.bijective = out.bijective && from_ideal == node.monoid_face &&
                    complement(node.degree_variables, rays.size()) == node.cone_face;
    monoid_faces_seen.insert(node.monoid_face);
    cone_faces_seen.insert(node.cone_face);
  }
  const std::size_t cone_face_count = face_lattice(sigma).size();
  out.bijective = out.bijective && monoid_faces_seen.size() == out.nodes.size() &&
                  cone_faces_seen.size() == out.nodes.size() && out.nodes.size() == cone_face_count;
  return out;
}

F1Scheme toric_f1_points(const Fan& f) {
  const FanReport report = validate_fan(f);
  if (!report.valid()) throw std::invalid_argument("invalid fan: " + report.violations.front());
  const std::size_t n = f.lattice_rank;
  const IntMatrix id = IntMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<IndexSet> max_cones;
  for (auto c : f.max_cones) {
    std::sort(c.begin(), c.end());
    max_cones.push_back(std::move(c));
  }
  std::vector<std::vector<IntVector>> chart_monoids;
  for (const auto& c : max_cones) chart_monoids.push_back(lattice_cone_generators(dual_cone(f.cone(c)), id));

  auto is_sub = [](const IndexSet& a, const IndexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); };
  // generators of S_chart that are positive on some ray of tau
  auto prime = [&](std::size_t chart, const IndexSet& tau) {
    std::vector<IntVector> out;
    for (const auto& g : chart_monoids[chart])
      if (std::any_of(tau.begin(), tau.end(), [&](std::size_t rho) { return dot(g, f.rays[rho]) != 0; })) out.push_back(g);
    return out;
  };

  F1Scheme out;
  const auto cones = f.cones();
  for (const auto& tau : cones) {
    F1Point pt;
    pt.cone = tau;
    while (!is_sub(tau, max_cones[pt.chart])) ++pt.chart;
    pt.prime_generators = prime(pt.chart, tau);
    out.points.push_back(std::move(pt));
  }

  out.order_reversed = true;
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = 0; j < cones.size(); ++j) {
      const std::size_t chart = out.points[j].chart;
      bool special = false;
      if (is_sub(cones[i], max_cones[chart])) {
        const auto pi = prime(chart, cones[i]);
        const auto& pj = out.points[j].prime_generators;
        special = std::all_of(pi.begin(), pi.end(), [&](const IntVector& x) { return contains_vector(pj, x); });
      }
      if (special) out.specializations.emplace_back(i, j);
      out.order_reversed = out.order_reversed && special == is_sub(cones[i], cones[j]);
    }

  out.effective = std::all_of(chart_monoids.begin(), chart_monoids.end(), [&](const std::vector<IntVector>& gens) {
    return subgroup_generates(gens, FgAbelianGroup::free(n)).is_full;
  });

  out.inverse_verified = true;
  for (const auto& pt : out.points) {
    std::vector<IntVector> local = chart_monoids[pt.chart];
    for (const auto& g : chart_monoids[pt.chart])
      if (!contains_vector(pt.prime_generators, g)) local.emplace_back(-g);
    out.inverse_verified = out.inverse_verified && same_cone(dual_cone(Cone(n, local)), f.cone(pt.cone));
  }
  return out;
}

}  // namespace coxkernel
