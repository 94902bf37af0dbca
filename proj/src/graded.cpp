#include "coxkernel/graded.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace coxkernel {

namespace {

IndexSet normalized_indices(IndexSet s, std::size_t bound, const char* what) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (auto i : s)
    if (i >= bound) throw std::invalid_argument(std::string(what) + ": index " + std::to_string(i) + " out of range");
  return s;
}

IntMatrix group_columns(const AffineMonoid& m) { return stack_columns(m.group_basis(), m.ambient_rank()); }

}  // namespace

GradedMonoidAlgebra::GradedMonoidAlgebra(AffineMonoid monoid, GroupHom grading, IndexSet inverted)
    : monoid_(std::move(monoid)), grading_(std::move(grading)) {
  const std::size_t d = monoid_.ambient_rank();
  if (grading_.source() != FgAbelianGroup::free(d))
    throw std::invalid_argument("grading must be defined on Z^" + std::to_string(d));
  inverted_ = normalized_indices(std::move(inverted), monoid_.generators().size(), "inverted generator");
  std::vector<IntVector> gens = monoid_.generators();
  for (auto i : inverted_) gens.emplace_back(-monoid_.generators()[i]);
  localized_ = AffineMonoid(d, std::move(gens));
  if (localized_.group_basis().empty()) {
    faithful_ = true;
  } else {
    faithful_ = kernel(compose(grading_, GroupHom::of_matrix(group_columns(localized_)))).empty();
  }
}

GradedMonoidAlgebra GradedMonoidAlgebra::polynomial_ring(const FgAbelianGroup& k, const std::vector<IntVector>& degrees,
                                                         IndexSet inverted) {
  const std::size_t n = degrees.size();
  return GradedMonoidAlgebra(AffineMonoid::orthant(n),
                             GroupHom(FgAbelianGroup::free(n), k, stack_columns(degrees, k.dimension())),
                             std::move(inverted));
}

GradedMonoidAlgebra localize(const GradedMonoidAlgebra& r, const IndexSet& generators) {
  IndexSet inv = r.inverted();
  inv.insert(inv.end(), generators.begin(), generators.end());
  return GradedMonoidAlgebra(r.monoid(), r.grading(), std::move(inv));
}

GradedMonoidAlgebra regrade(const GradedMonoidAlgebra& r, const GroupHom& grading) {
  return GradedMonoidAlgebra(r.monoid(), grading, r.inverted());
}

// ---- polynomials -----------------------------------------------------------

HomogeneousPolynomial::HomogeneousPolynomial(const GradedMonoidAlgebra& r, Terms terms)
    : group_(r.degree_group()), terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("homogeneous polynomial must be nonzero");
  bool first = true;
  for (const auto& [exponent, coefficient] : terms_) {
    if (coefficient == 0) throw std::invalid_argument("zero coefficient at " + to_string(exponent));
    if (!r.has_monomial(exponent)) throw std::invalid_argument("monomial " + to_string(exponent) + " not in the algebra");
    const IntVector w = r.degree(exponent);
    if (first) {
      degree_ = w;
      first = false;
    } else if (w != degree_) {
      throw std::invalid_argument("polynomial is not homogeneous: degrees " + to_string(degree_) + " and " +
                                  to_string(w));
    }
  }
}

HomogeneousPolynomial HomogeneousPolynomial::monomial(const GradedMonoidAlgebra& r, const IntVector& exponent,
                                                      const Rational& coefficient) {
  Terms t;
  t.emplace(exponent, coefficient);
  return HomogeneousPolynomial(r, std::move(t));
}

HomogeneousPolynomial multiply(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
  if (!(a.group_ == b.group_)) throw std::invalid_argument("multiply: different grading groups");
  HomogeneousPolynomial::Terms t;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      const IntVector e = ea + eb;
      auto it = t.find(e);
      if (it == t.end()) {
        t.emplace(e, ca * cb);
      } else {
        it->second += ca * cb;
        if (it->second == 0) t.erase(it);
      }
    }
  return HomogeneousPolynomial(a.group_, std::move(t), a.group_.canonical_form(IntVector(a.degree_ + b.degree_)));
}

std::optional<HomogeneousPolynomial> add(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
  if (!(a.group_ == b.group_) || a.degree_ != b.degree_)
    throw std::invalid_argument("add: summands have different degrees");
  HomogeneousPolynomial::Terms t = a.terms_;
  for (const auto& [e, c] : b.terms_) {
    auto it = t.find(e);
    if (it == t.end()) {
      t.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) t.erase(it);
    }
  }
  if (t.empty()) return std::nullopt;
  return HomogeneousPolynomial(a.group_, std::move(t), a.degree_);
}

Integer valuation_of_monomial(const GradedMonoidAlgebra& r, const IntVector& exponent, std::size_t generator) {
  if (generator >= r.generator_count()) throw std::invalid_argument("valuation: generator index out of range");
  const auto& m = r.localized();
  const auto& gens = m.generators();
  for (const auto& u : m.cone().facet_normals()) {
    if (dot(u, gens[generator]) <= 0) continue;
    bool others_vanish = true;
    for (std::size_t j = 0; j < gens.size() && others_vanish; ++j)
      if (j != generator && dot(u, gens[j]) != 0) others_vanish = false;
    if (!others_vanish) continue;
    Integer scale = 0;
    for (const auto& b : m.group_basis()) scale = gcd(scale, dot(u, b));
    if (!m.in_group(exponent)) throw std::invalid_argument("valuation: exponent outside the group of the monoid");
    return dot(u, exponent) / scale;
  }
  throw std::invalid_argument("valuation not discrete at generator " + std::to_string(generator));
}

Integer monomial_valuation(const GradedMonoidAlgebra& r, const HomogeneousPolynomial& f, std::size_t generator) {
  std::optional<Integer> best;
  for (const auto& [e, c] : f.terms()) {
    const Integer v = valuation_of_monomial(r, e, generator);
    if (!best || v < *best) best = v;
  }
  return *best;
}

// ---- spectra ---------------------------------------------------------------

Spectrum invariant_spectrum(const GradedMonoidAlgebra& r) {
  Spectrum s;
  s.faces = monoid_faces(r.localized());
  const auto& gens = r.localized().generators();
  for (const auto& f : s.faces.faces) {
    PrimePoint p{f, {}};
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (!std::binary_search(f.generators.begin(), f.generators.end(), g)) p.ideal_generators.push_back(gens[g]);
    s.points.push_back(std::move(p));
  }
  for (const auto& [lo, hi] : s.faces.covers) s.covers.emplace_back(hi, lo);
  std::sort(s.covers.begin(), s.covers.end());
  return s;
}

Spectrum k_spectrum(const GradedMonoidAlgebra& r) {
  if (!r.is_faithful()) throw std::invalid_argument("K-spectrum exceeds monomial ideals; faithful grading required");
  return invariant_spectrum(r);
}

GradedMonoidAlgebra stalk(const GradedMonoidAlgebra& r, const PrimePoint& p) {
  const auto faces = monoid_faces(r.localized());
  if (faces.find_by_generators(p.face.generators) == faces.size())
    throw std::invalid_argument("point is not a monomial prime of this algebra");
  IndexSet inv;
  for (auto g : p.face.generators)
    if (g < r.generator_count()) inv.push_back(g);
  return localize(r, inv);
}

UnitDegrees homogeneous_units(const GradedMonoidAlgebra& r) {
  UnitDegrees out;
  out.unit_exponents = r.localized().units_basis();
  for (const auto& u : out.unit_exponents) out.degree_generators.push_back(r.degree(u));
  return out;
}

// ---- good quotients --------------------------------------------------------

IndexSet GoodQuotient::fiber(std::size_t b) const {
  IndexSet out;
  for (std::size_t i = 0; i < point_map.size(); ++i)
    if (point_map[i] == b) out.push_back(i);
  return out;
}

bool GoodQuotient::is_surjective() const {
  std::set<std::size_t> hit(point_map.begin(), point_map.end());
  return hit.size() == base_faces.size();
}

bool GoodQuotient::is_bijective() const { return is_surjective() && point_map.size() == base_faces.size(); }

IndexSet GoodQuotient::image(const IndexSet& points) const {
  std::set<std::size_t> out;
  for (auto p : points) out.insert(point_map.at(p));
  return {out.begin(), out.end()};
}

std::vector<IntVector> degree_zero_generators(const GradedMonoidAlgebra& r, long enumeration_factor) {
  const auto& m = r.localized();
  const std::size_t d = m.ambient_rank();
  if (m.group_basis().empty()) return {};
  const IntMatrix b = group_columns(m);
  std::vector<IntVector> zero_lattice;
  for (const auto& y : kernel(compose(r.grading(), GroupHom::of_matrix(b)))) zero_lattice.emplace_back(b * y);
  if (zero_lattice.empty()) return {};
  const IntMatrix l0 = stack_columns(zero_lattice, d);
  std::vector<IntVector> saturated = lattice_cone_generators(m.cone(), l0);
  if (m.is_saturated()) return saturated;

  // M is not saturated: M_0 = M ∩ L_0 may need more generators than the
  // saturated degree-zero monoid suggests, so enumerate by level.
  const Cone zero_cone(d, saturated);
  if (!zero_cone.is_pointed())
    throw std::invalid_argument("degree-zero part of a non-saturated monoid must be pointed");
  const IntVector ell = zero_cone.positive_functional();
  Integer top = 0;
  for (const auto& h : saturated) top = std::max(top, dot(ell, h));
  const Integer bound = top * enumeration_factor;
  std::set<IntVector, LexLess> seen;
  std::vector<IntVector> frontier{IntVector::Zero(static_cast<Eigen::Index>(d))};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (const auto& p : frontier)
      for (const auto& h : saturated) {
        IntVector q = p + h;
        if (dot(ell, q) <= bound && seen.insert(q).second) next.push_back(q);
      }
    frontier = std::move(next);
  }
  std::vector<IntVector> members;
  for (const auto& x : seen)
    if (!is_zero(x) && m.contains(x)) members.push_back(x);
  std::stable_sort(members.begin(), members.end(),
                   [&](const IntVector& a, const IntVector& c) { return dot(ell, a) < dot(ell, c); });
  std::vector<IntVector> irreducible;
  for (const auto& x : members) {
    const bool reducible = std::any_of(irreducible.begin(), irreducible.end(), [&](const IntVector& a) {
      const IntVector rest = x - a;
      return !is_zero(rest) && m.contains(rest);
    });
    if (reducible) continue;
    if (2 * dot(ell, x) > bound) throw std::runtime_error("increase enumeration bound");
    irreducible.push_back(x);
  }
  sort_unique(irreducible);
  return irreducible;
}

namespace {

GoodQuotient build_quotient(const GradedMonoidAlgebra& r, Spectrum spectrum) {
  GoodQuotient q;
  const std::size_t d = r.ambient_rank();
  q.source = std::move(spectrum);
  q.base = AffineMonoid(d, degree_zero_generators(r));
  q.base_faces = monoid_faces(q.base);
  const auto& gens0 = q.base.generators();
  for (const auto& p : q.source.points) {
    IndexSet in_face;
    for (std::size_t j = 0; j < gens0.size(); ++j)
      if (dot(p.face.normal, gens0[j]) == 0) in_face.push_back(j);
    const std::size_t idx = q.base_faces.find_by_generators(in_face);
    if (idx == q.base_faces.size()) throw std::logic_error("face does not restrict to a face of the degree-zero monoid");
    q.point_map.push_back(idx);
  }
  return q;
}

}  // namespace

GoodQuotient good_quotient_affine(const GradedMonoidAlgebra& r) { return build_quotient(r, invariant_spectrum(r)); }

std::size_t distinguished_point(const GoodQuotient& q, const IndexSet& fiber) {
  if (fiber.empty()) throw std::invalid_argument("distinguished_point: empty fiber");
  IndexSet sorted = fiber;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t b = q.point_map.at(sorted.front());
  if (sorted != q.fiber(b)) throw std::invalid_argument("distinguished_point: not a full fiber");
  std::optional<std::size_t> found;
  for (auto i : sorted) {
    const bool below_all =
        std::all_of(sorted.begin(), sorted.end(), [&](std::size_t j) { return q.source.faces.is_subface(i, j); });
    if (!below_all) continue;
    if (found) throw std::logic_error("distinguished_point: not unique");
    found = i;
  }
  if (!found) throw std::logic_error("distinguished_point: fiber has no point in every closure");
  return *found;
}

IndexSet closure(const Spectrum& s, std::size_t i) {
  IndexSet out;
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s.faces.is_subface(j, i)) out.push_back(j);
  return out;
}

IndexSet vanishing_set(const Spectrum& s, const GradedMonoidAlgebra& r, const std::vector<IntVector>& monomials) {
  for (const auto& x : monomials)
    if (!r.has_monomial(x)) throw std::invalid_argument("vanishing_set: " + to_string(x) + " is not a monomial of R");
  IndexSet out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& n = s.faces.faces[i].normal;
    if (std::none_of(monomials.begin(), monomials.end(), [&](const IntVector& x) { return dot(n, x) == 0; }))
      out.push_back(i);
  }
  return out;
}

// ---- monomial ideals -------------------------------------------------------

bool ideal_contains(const GradedMonoidAlgebra& r, const std::vector<IntVector>& generators, const IntVector& x) {
  return std::any_of(generators.begin(), generators.end(),
                     [&](const IntVector& g) { return r.has_monomial(IntVector(x - g)); });
}

std::vector<IntVector> minimal_generators(const GradedMonoidAlgebra& r, const std::vector<IntVector>& generators) {
  std::vector<IntVector> sorted = generators;
  sort_unique(sorted);
  std::vector<IntVector> kept;
  for (const auto& g : sorted) {
    if (!r.has_monomial(g)) throw std::invalid_argument("ideal generator " + to_string(g) + " is not a monomial of R");
    if (ideal_contains(r, kept, g)) continue;
    kept.erase(std::remove_if(kept.begin(), kept.end(),
                              [&](const IntVector& h) { return r.has_monomial(IntVector(h - g)); }),
               kept.end());
    kept.push_back(g);
  }
  sort_unique(kept);
  return kept;
}

bool same_ideal(const GradedMonoidAlgebra& r, const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
  return std::all_of(a.begin(), a.end(), [&](const IntVector& x) { return ideal_contains(r, b, x); }) &&
         std::all_of(b.begin(), b.end(), [&](const IntVector& x) { return ideal_contains(r, a, x); });
}

// ---- coarsening ------------------------------------------------------------

CoarseningData kernel_character(const GradedMonoidAlgebra& r, const GroupHom& psi) {
  if (psi.source() != r.degree_group())
    throw std::invalid_argument("coarsening map must start at the grading group");
  CoarseningData data{psi, kernel(psi), {}};
  const UnitDegrees units = homogeneous_units(r);
  const GroupHom unit_degree = hom_from_elements(units.degree_generators, r.degree_group());
  for (const auto& w : data.kernel_basis) {
    const auto c = solve(unit_degree, w);
    if (!c) throw std::invalid_argument("no homogeneous unit of degree " + to_string(w));
    IntVector e = IntVector::Zero(static_cast<Eigen::Index>(r.ambient_rank()));
    for (std::size_t i = 0; i < units.unit_exponents.size(); ++i)
      e += (*c)(static_cast<Eigen::Index>(i)) * units.unit_exponents[i];
    data.chi_exponents.push_back(e);
  }
  return data;
}

CoarsenedAlgebra::CoarsenedAlgebra(GradedMonoidAlgebra fine, CoarseningData data)
    : fine_(std::move(fine)),
      data_(std::move(data)),
      projection_(cokernel(GroupHom::of_matrix(stack_columns(data_.chi_exponents, fine_.ambient_rank())))) {
  const auto& kp = fine_.degree_group();
  if (data_.psi.source() != kp) throw std::invalid_argument("coarsening map must start at the grading group");
  if (!cokernel(data_.psi).group.is_trivial()) throw std::invalid_argument("coarsening map is not surjective");
  if (data_.kernel_basis.size() != data_.chi_exponents.size())
    throw std::invalid_argument("kernel character needs one unit per kernel generator");
  for (const auto& w : data_.kernel_basis)
    if (!data_.psi.target().is_zero_element(data_.psi.apply(w)))
      throw std::invalid_argument("kernel character: " + to_string(w) + " is not in the kernel");
  if (!same_subgroup(data_.kernel_basis, kernel(data_.psi), kp))
    throw std::invalid_argument("kernel character: given elements do not generate the kernel");
  for (std::size_t i = 0; i < data_.chi_exponents.size(); ++i) {
    const IntVector& e = data_.chi_exponents[i];
    if (!fine_.has_monomial(e) || !fine_.has_monomial(IntVector(-e)))
      throw std::invalid_argument("kernel character value " + to_string(e) + " is not a unit");
    if (!kp.equal(fine_.degree(e), data_.kernel_basis[i]))
      throw std::invalid_argument("kernel character value " + to_string(e) + " has the wrong degree");
  }
}

IntVector CoarsenedAlgebra::project(const IntVector& fine_exponent) const {
  return projection_.projection.apply(fine_exponent);
}

IntVector CoarsenedAlgebra::lift(const IntVector& coarse_exponent) const {
  const auto x = solve(projection_.projection, coarse_exponent);
  if (!x) throw std::invalid_argument("lift: " + to_string(coarse_exponent) + " is not an exponent class");
  return *x;
}

IntVector CoarsenedAlgebra::degree(const IntVector& coarse_exponent) const {
  return data_.psi.apply(fine_.degree(lift(coarse_exponent)));
}

bool CoarsenedAlgebra::has_monomial(const IntVector& coarse_exponent) const {
  return fine_.has_monomial(lift(coarse_exponent));
}

IntVector CoarsenedAlgebra::fine_degree(const IntVector& coarse_degree) const {
  const auto w = solve(data_.psi, coarse_degree);
  if (!w) throw std::invalid_argument("fine_degree: no preimage");
  return fine_.degree_group().canonical_form(*w);
}

std::vector<IntVector> CoarsenedAlgebra::ideal_forward(const std::vector<IntVector>& fine_generators) const {
  std::vector<IntVector> out;
  for (const auto& g : minimal_generators(fine_, fine_generators)) out.push_back(project(g));
  sort_unique(out);
  return out;
}

std::vector<IntVector> CoarsenedAlgebra::ideal_backward(const std::vector<IntVector>& coarse_generators) const {
  std::vector<IntVector> lifts;
  for (const auto& c : coarse_generators) lifts.push_back(lift(c));
  return minimal_generators(fine_, lifts);
}

bool CoarsenedAlgebra::same_coarse_ideal(const std::vector<IntVector>& a, const std::vector<IntVector>& b) const {
  return same_ideal(fine_, ideal_backward(a), ideal_backward(b));
}

std::vector<IntVector> CoarsenedAlgebra::unit_degrees() const {
  std::vector<IntVector> out;
  for (const auto& w : homogeneous_units(fine_).degree_generators) out.push_back(data_.psi.apply(w));
  return out;
}

CoarsenedAlgebra coarsen_cie(const GradedMonoidAlgebra& r, const CoarseningData& data) {
  return CoarsenedAlgebra(r, data);
}

// ---- Proj ------------------------------------------------------------------

ProjQuotient proj_quotient(const GradedMonoidAlgebra& r) {
  if (r.degree_group() != FgAbelianGroup::free(1)) throw std::invalid_argument("proj requires a Z-grading");
  const std::size_t n = r.generator_count();
  IndexSet positive;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer w = r.generator_degree(i)(0);
    if (w < 0) throw std::invalid_argument("proj requires non-negative degrees");
    if (w > 0) positive.push_back(i);
  }
  ProjQuotient out;
  out.geometric = !positive.empty();
  for (auto i : positive) {
    GradedMonoidAlgebra ring = localize(r, {i});
    GoodQuotient q = good_quotient_affine(ring);
    out.geometric = out.geometric && q.is_bijective();
    out.charts.push_back(ProjChart{i, std::move(ring), std::move(q)});
  }
  for (const auto& f : monoid_faces(r.localized()).faces) {
    IndexSet originals;
    for (auto g : f.generators)
      if (g < n) originals.push_back(g);
    const bool relevant = std::any_of(positive.begin(), positive.end(), [&](std::size_t i) {
      return std::binary_search(originals.begin(), originals.end(), i);
    });
    if (relevant) out.points.push_back(originals);
  }
  return out;
}

// ---- morphisms -------------------------------------------------------------

std::vector<std::size_t> spec_morphism(const AffineMonoid& source, const AffineMonoid& target, const GroupHom& psi) {
  if (psi.source() != FgAbelianGroup::free(source.ambient_rank()) ||
      psi.target() != FgAbelianGroup::free(target.ambient_rank()))
    throw std::invalid_argument("spec_morphism: map does not match the ambient lattices");
  std::vector<IntVector> images;
  for (const auto& g : source.generators()) {
    images.push_back(psi.apply(g));
    if (!target.contains(images.back())) throw std::invalid_argument("monoid map does not send M' into M");
  }
  const FaceLattice fs = monoid_faces(source);
  const FaceLattice ft = monoid_faces(target);
  std::vector<std::size_t> out;
  for (const auto& tau : ft.faces) {
    IndexSet pre;
    for (std::size_t j = 0; j < images.size(); ++j)
      if (dot(tau.normal, images[j]) == 0) pre.push_back(j);
    const std::size_t idx = fs.find_by_generators(pre);
    if (idx == fs.size()) throw std::logic_error("spec_morphism: preimage is not a face");
    out.push_back(idx);
  }
  return out;
}

}  // namespace coxkernel
