#include "coxkernel/cones.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace coxkernel {

namespace {

/// Primitive representative of v modulo span(basis), orthogonal to that span.
IntVector canonical_mod(const IntVector& v, const std::vector<IntVector>& basis) {
  if (basis.empty()) return primitive(v);
  const auto d = static_cast<std::size_t>(v.size());
  const RatMatrix b = stack_columns(basis, d).cast<Rational>();
  const RatMatrix gram = b.transpose() * b;
  const RatVector rhs = b.transpose() * to_rational(v);
  const auto c = rational_solve(gram, rhs);
  const RatVector w = to_rational(v) - b * (*c);
  return primitive_from_rational(w);
}

IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector e = IntVector::Zero(static_cast<Eigen::Index>(n));
  e(static_cast<Eigen::Index>(i)) = 1;
  return e;
}

void check_lengths(const std::vector<IntVector>& vs, std::size_t d, const char* what) {
  for (const auto& v : vs)
    if (static_cast<std::size_t>(v.size()) != d)
      throw std::invalid_argument(std::string(what) + ": vector of length " + std::to_string(v.size()) +
                                  " in ambient rank " + std::to_string(d));
}

}  // namespace

ConeGenerators double_description(std::size_t dim, const std::vector<IntVector>& inequalities) {
  check_lengths(inequalities, dim, "double_description");
  std::vector<IntVector> lin;
  for (std::size_t i = 0; i < dim; ++i) lin.push_back(unit_vector(dim, i));
  std::vector<IntVector> rays;
  std::vector<IntVector> done;

  for (const auto& a : inequalities) {
    auto it = std::find_if(lin.begin(), lin.end(), [&](const IntVector& l) { return dot(a, l) != 0; });
    if (it != lin.end()) {
      IntVector l0 = *it;
      lin.erase(it);
      if (dot(a, l0) < 0) l0 = -l0;
      const Integer s0 = dot(a, l0);
      for (auto& l : lin) {
        const Integer t = dot(a, l);
        if (t != 0) l = primitive(IntVector(s0 * l - t * l0));
      }
      for (auto& r : rays) {
        const Integer t = dot(a, r);
        if (t != 0) r = primitive(IntVector(s0 * r - t * l0));
      }
      rays.push_back(primitive(l0));
      done.push_back(a);
      continue;
    }

    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i]);
      (val[i] > 0 ? pos : val[i] < 0 ? neg : zero).push_back(i);
    }
    if (neg.empty()) {
      done.push_back(a);
      continue;
    }
    const std::size_t qdim = dim - lin.size();
    std::vector<std::vector<bool>> tight(rays.size(), std::vector<bool>(done.size()));
    for (std::size_t i = 0; i < rays.size(); ++i)
      for (std::size_t k = 0; k < done.size(); ++k) tight[i][k] = dot(done[k], rays[i]) == 0;

    std::vector<IntVector> next;
    for (auto i : zero) next.push_back(rays[i]);
    for (auto i : pos) next.push_back(rays[i]);
    for (auto p : pos)
      for (auto n : neg) {
        std::vector<IntVector> common;
        for (std::size_t k = 0; k < done.size(); ++k)
          if (tight[p][k] && tight[n][k]) common.push_back(done[k]);
        if (common.size() + 2 < qdim) continue;
        const Eigen::Index r = common.empty() ? 0 : matrix_rank(stack_rows(common, dim));
        if (static_cast<std::size_t>(r) + 2 != qdim) continue;
        IntVector cand = val[p] * rays[n] - val[n] * rays[p];
        next.push_back(primitive(cand));
      }
    rays = std::move(next);
    done.push_back(a);
  }

  ConeGenerators out;
  out.lineality = saturated_span(lin, dim);
  for (const auto& r : rays) {
    IntVector c = canonical_mod(r, out.lineality);
    if (!is_zero(c)) out.rays.push_back(c);
  }
  sort_unique(out.rays);
  return out;
}

// ---- Cone ------------------------------------------------------------------

Cone::Cone(std::size_t ambient_rank, std::vector<IntVector> generators)
    : ambient_(ambient_rank), generators_(std::move(generators)) {
  check_lengths(generators_, ambient_, "Cone");
  const ConeGenerators dual = double_description(ambient_, generators_);
  equations_ = dual.lineality;
  facets_ = dual.rays;
  std::vector<IntVector> constraints = facets_;
  for (const auto& e : equations_) {
    constraints.push_back(e);
    constraints.emplace_back(-e);
  }
  const ConeGenerators primal = double_description(ambient_, constraints);
  lineality_ = primal.lineality;
  rays_ = primal.rays;
}

Cone Cone::from_inequalities(std::size_t ambient_rank, const std::vector<IntVector>& inequalities,
                             const std::vector<IntVector>& equations) {
  std::vector<IntVector> constraints = inequalities;
  for (const auto& e : equations) {
    constraints.push_back(e);
    constraints.emplace_back(-e);
  }
  const ConeGenerators g = double_description(ambient_rank, constraints);
  std::vector<IntVector> gens = g.rays;
  for (const auto& l : g.lineality) {
    gens.push_back(l);
    gens.emplace_back(-l);
  }
  return Cone(ambient_rank, std::move(gens));
}

bool Cone::contains(const IntVector& x) const {
  if (static_cast<std::size_t>(x.size()) != ambient_) throw std::invalid_argument("Cone::contains: wrong length");
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, x) < 0) return false;
  return true;
}

bool Cone::in_relative_interior(const IntVector& x) const {
  if (!contains(x)) return false;
  for (const auto& f : facets_)
    if (dot(f, x) == 0) return false;
  return true;
}

IntVector Cone::positive_functional() const {
  IntVector s = IntVector::Zero(static_cast<Eigen::Index>(ambient_));
  for (const auto& f : facets_) s += f;
  return s;
}

bool same_cone(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank()) return false;
  if (a.lineality_basis().size() != b.lineality_basis().size()) return false;
  for (std::size_t i = 0; i < a.lineality_basis().size(); ++i)
    if (a.lineality_basis()[i] != b.lineality_basis()[i]) return false;
  if (a.extreme_rays().size() != b.extreme_rays().size()) return false;
  for (std::size_t i = 0; i < a.extreme_rays().size(); ++i)
    if (a.extreme_rays()[i] != b.extreme_rays()[i]) return false;
  return true;
}

Cone dual_cone(const Cone& c) {
  std::vector<IntVector> gens = c.facet_normals();
  for (const auto& e : c.equations()) gens.push_back(e);
  for (const auto& e : c.equations()) gens.emplace_back(-e);
  return Cone(c.ambient_rank(), std::move(gens));
}

// ---- faces -----------------------------------------------------------------

bool FaceLattice::is_subface(std::size_t lower, std::size_t upper) const {
  const auto& a = faces[lower].rays;
  const auto& b = faces[upper].rays;
  return std::includes(b.begin(), b.end(), a.begin(), a.end()) &&
         faces[lower].dimension <= faces[upper].dimension;
}

std::size_t FaceLattice::find_by_generators(const IndexSet& generators) const {
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i].generators == generators) return i;
  return faces.size();
}

FaceLattice face_lattice(const Cone& c) {
  const auto& rays = c.extreme_rays();
  const auto& facets = c.facet_normals();
  const std::size_t d = c.ambient_rank();

  std::vector<IndexSet> tight(facets.size());
  for (std::size_t k = 0; k < facets.size(); ++k)
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (dot(facets[k], rays[i]) == 0) tight[k].push_back(i);

  IndexSet all(rays.size());
  std::iota(all.begin(), all.end(), 0);
  std::set<IndexSet> seen{all};
  std::vector<IndexSet> queue{all};
  while (!queue.empty()) {
    const IndexSet s = queue.back();
    queue.pop_back();
    for (const auto& t : tight) {
      IndexSet inter;
      std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(inter));
      if (seen.insert(inter).second) queue.push_back(inter);
    }
  }

  FaceLattice out;
  for (const auto& s : seen) {
    Face f;
    f.rays = s;
    f.normal = IntVector::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t k = 0; k < facets.size(); ++k)
      if (std::includes(tight[k].begin(), tight[k].end(), s.begin(), s.end())) f.normal += facets[k];
    std::vector<IntVector> members;
    for (auto i : s) members.push_back(rays[i]);
    const auto r = members.empty() ? 0 : matrix_rank(stack_rows(members, d));
    f.dimension = c.lineality_basis().size() + static_cast<std::size_t>(r);
    for (std::size_t g = 0; g < c.generators().size(); ++g)
      if (dot(f.normal, c.generators()[g]) == 0) f.generators.push_back(g);
    out.faces.push_back(std::move(f));
  }
  std::sort(out.faces.begin(), out.faces.end(), [](const Face& a, const Face& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    if (a.generators != b.generators) return a.generators < b.generators;
    return a.rays < b.rays;
  });
  for (std::size_t i = 0; i < out.faces.size(); ++i)
    for (std::size_t j = 0; j < out.faces.size(); ++j)
      if (out.faces[j].dimension == out.faces[i].dimension + 1 && out.is_subface(i, j))
        out.covers.emplace_back(i, j);
  return out;
}

// ---- Hilbert bases ---------------------------------------------------------

namespace {

// Hilbert basis of a full-dimensional pointed cone in Z^k. Every Hilbert basis
// element lies in the half-open parallelepiped of some linearly independent
// k-subset of extreme rays (Caratheodory), so those points plus the rays are
// candidates; the reduction pass then keeps the irreducible ones in order of
// a strictly positive grading.
std::vector<IntVector> hilbert_basis_full(const Cone& c) {
  const std::size_t k = c.ambient_rank();
  const auto& rays = c.extreme_rays();
  std::vector<IntVector> cand = rays;
  if (k == 0) return {};

  IndexSet idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  const std::size_t n = rays.size();
  const Integer limit = 2000000;
  while (true) {
    std::vector<IntVector> cols;
    for (auto i : idx) cols.push_back(rays[i]);
    const IntMatrix m = stack_columns(cols, k);
    const auto snf = smith_normal_form(m);
    if (static_cast<std::size_t>(snf.rank) == k) {
      Integer volume = 1;
      for (Eigen::Index i = 0; i < snf.rank; ++i) volume *= snf.D(i, i);
      if (volume > limit) throw std::runtime_error("hilbert basis: simplicial cone volume exceeds enumeration limit");
      std::vector<Integer> digit(k, 0);
      while (true) {
        RatVector t(static_cast<Eigen::Index>(k));
        for (std::size_t i = 0; i < k; ++i)
          t(static_cast<Eigen::Index>(i)) = Rational(digit[i], snf.D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
        RatVector lambda = snf.V.cast<Rational>() * t;
        for (Eigen::Index i = 0; i < lambda.size(); ++i) {
          const Integer fl = floor_div(numerator(lambda(i)), denominator(lambda(i)));
          lambda(i) -= Rational(fl);
        }
        const RatVector x = m.cast<Rational>() * lambda;
        IntVector xi(static_cast<Eigen::Index>(k));
        for (Eigen::Index i = 0; i < x.size(); ++i) xi(i) = numerator(x(i));
        if (!is_zero(xi)) cand.push_back(xi);
        std::size_t pos = 0;
        while (pos < k) {
          digit[pos] += 1;
          if (digit[pos] < snf.D(static_cast<Eigen::Index>(pos), static_cast<Eigen::Index>(pos))) break;
          digit[pos] = 0;
          ++pos;
        }
        if (pos == k) break;
      }
    }
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }

  const IntVector ell = c.positive_functional();
  sort_unique(cand);
  std::stable_sort(cand.begin(), cand.end(),
                   [&](const IntVector& a, const IntVector& b) { return dot(ell, a) < dot(ell, b); });
  std::vector<IntVector> basis;
  for (const auto& x : cand) {
    const bool reducible = std::any_of(basis.begin(), basis.end(), [&](const IntVector& h) {
      return h != x && c.contains(IntVector(x - h));
    });
    if (!reducible) basis.push_back(x);
  }
  return basis;
}

std::vector<IntVector> generators_in_full_lattice(const Cone& c) {
  const std::size_t k = c.ambient_rank();
  const auto& v = c.lineality_basis();
  if (v.empty()) return hilbert_basis(c);
  const std::size_t a = v.size();
  const IntMatrix w = complete_to_unimodular(v, k);
  std::vector<IntVector> projected;
  for (const auto& r : c.extreme_rays()) {
    const auto y = lattice_coordinates(w, r);
    projected.emplace_back(y->tail(static_cast<Eigen::Index>(k - a)));
  }
  const Cone pointed(k - a, projected);
  std::vector<IntVector> out;
  for (const auto& b : v) {
    out.push_back(b);
    out.emplace_back(-b);
  }
  const IntMatrix complement = w.rightCols(static_cast<Eigen::Index>(k - a));
  for (const auto& h : hilbert_basis(pointed)) out.emplace_back(complement * h);
  return out;
}

}  // namespace

std::vector<IntVector> hilbert_basis(const Cone& c) {
  if (!c.is_pointed()) throw std::invalid_argument("hilbert basis requires pointed cone");
  const std::size_t d = c.ambient_rank();
  if (c.extreme_rays().empty()) return {};
  const auto span = saturated_span(c.extreme_rays(), d);
  const IntMatrix b = stack_columns(span, d);
  std::vector<IntVector> coords;
  for (const auto& r : c.extreme_rays()) coords.push_back(*lattice_coordinates(b, r));
  const Cone full(span.size(), coords);
  std::vector<IntVector> out;
  for (const auto& h : hilbert_basis_full(full)) out.emplace_back(b * h);
  sort_unique(out);
  return out;
}

std::vector<IntVector> lattice_cone_generators(const Cone& c, const IntMatrix& lattice_columns) {
  const auto k = static_cast<std::size_t>(lattice_columns.cols());
  if (k == 0) return {};
  const IntMatrix bt = lattice_columns.transpose();
  std::vector<IntVector> ineqs, eqs;
  for (const auto& f : c.facet_normals()) ineqs.emplace_back(bt * f);
  for (const auto& e : c.equations()) eqs.emplace_back(bt * e);
  const Cone pre = Cone::from_inequalities(k, ineqs, eqs);
  std::vector<IntVector> out;
  for (const auto& g : generators_in_full_lattice(pre)) out.emplace_back(lattice_columns * g);
  return out;
}

// ---- AffineMonoid ----------------------------------------------------------

AffineMonoid::AffineMonoid(std::size_t ambient_rank, std::vector<IntVector> generators)
    : ambient_(ambient_rank), generators_(std::move(generators)), cone_(ambient_rank, generators_) {
  group_basis_ = lattice_basis(generators_, ambient_);
  const IntVector ell = cone_.positive_functional();
  std::vector<IntVector> units;
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (dot(ell, generators_[i]) == 0) {
      unit_generators_.push_back(i);
      units.push_back(generators_[i]);
    }
  units_basis_ = lattice_basis(units, ambient_);
  saturated_ = true;
  for (const auto& h : saturation_generators(*this))
    if (!search_contains(h)) {
      saturated_ = false;
      break;
    }
}

AffineMonoid AffineMonoid::orthant(std::size_t n) {
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(unit_vector(n, i));
  return AffineMonoid(n, std::move(gens));
}

bool AffineMonoid::in_group(const IntVector& x) const {
  if (group_basis_.empty()) return is_zero(x);
  return lattice_coordinates(stack_columns(group_basis_, ambient_), x).has_value();
}

bool AffineMonoid::contains(const IntVector& x) const {
  if (static_cast<std::size_t>(x.size()) != ambient_)
    throw std::invalid_argument("AffineMonoid::contains: wrong length");
  if (saturated_) return in_group(x) && cone_.contains(x);
  return search_contains(x);
}

bool AffineMonoid::search_contains(const IntVector& x) const {
  if (!in_group(x) || !cone_.contains(x)) return false;
  const IntVector ell = cone_.positive_functional();
  std::vector<IntVector> steps;
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (!std::binary_search(unit_generators_.begin(), unit_generators_.end(), i)) steps.push_back(generators_[i]);
  const IntMatrix units = stack_columns(units_basis_, ambient_);
  std::set<IntVector, LexLess> failed;
  std::function<bool(const IntVector&)> dfs = [&](const IntVector& y) -> bool {
    if (dot(ell, y) == 0) {
      if (units_basis_.empty()) return is_zero(y);
      return lattice_coordinates(units, y).has_value();
    }
    if (failed.count(y)) return false;
    for (const auto& g : steps) {
      const IntVector z = y - g;
      if (dot(ell, z) < 0 || !cone_.contains(z)) continue;
      if (dfs(z)) return true;
    }
    failed.insert(y);
    return false;
  };
  return dfs(x);
}

FaceLattice monoid_faces(const AffineMonoid& m) { return face_lattice(m.cone()); }

std::vector<IntVector> saturation_generators(const AffineMonoid& m) {
  if (m.group_basis().empty()) return {};
  return lattice_cone_generators(m.cone(), stack_columns(m.group_basis(), m.ambient_rank()));
}

// ---- Fan -------------------------------------------------------------------

Cone Fan::cone(const IndexSet& ray_indices) const {
  std::vector<IntVector> gens;
  for (auto i : ray_indices) gens.push_back(rays.at(i));
  return Cone(lattice_rank, std::move(gens));
}

IntMatrix Fan::ray_matrix() const { return stack_rows(rays, lattice_rank); }

std::vector<IndexSet> Fan::cones() const {
  std::set<IndexSet> all;
  for (const auto& sigma : max_cones) {
    const FaceLattice fl = face_lattice(cone(sigma));
    for (const auto& f : fl.faces) {
      IndexSet s;
      for (auto g : f.generators) s.push_back(sigma[g]);
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      all.insert(s);
    }
  }
  std::vector<IndexSet> out(all.begin(), all.end());
  std::stable_sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) { return a.size() < b.size(); });
  return out;
}

FanReport validate_fan(const Fan& f) {
  FanReport report;
  auto& v = report.violations;
  bool rays_ok = true;
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    const auto& r = f.rays[i];
    if (static_cast<std::size_t>(r.size()) != f.lattice_rank) {
      v.push_back("ray " + std::to_string(i) + " has length " + std::to_string(r.size()) + ", expected " +
                  std::to_string(f.lattice_rank));
      rays_ok = false;
      continue;
    }
    if (is_zero(r)) {
      v.push_back("ray " + std::to_string(i) + " is zero");
      rays_ok = false;
    } else if (content(r) != 1) {
      v.push_back("ray " + std::to_string(i) + " not primitive");
    }
  }
  for (std::size_t i = 0; i < f.rays.size() && rays_ok; ++i)
    for (std::size_t j = i + 1; j < f.rays.size(); ++j)
      if (f.rays[i] == f.rays[j]) v.push_back("rays " + std::to_string(i) + " and " + std::to_string(j) + " coincide");

  bool indices_ok = true;
  std::vector<bool> used(f.rays.size(), false);
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    std::set<std::size_t> distinct;
    for (auto r : f.max_cones[c]) {
      if (r >= f.rays.size()) {
        v.push_back("cone " + std::to_string(c) + " references unknown ray " + std::to_string(r));
        indices_ok = false;
        continue;
      }
      if (!distinct.insert(r).second) {
        v.push_back("cone " + std::to_string(c) + " lists ray " + std::to_string(r) + " twice");
        indices_ok = false;
      }
      used[r] = true;
    }
  }
  for (std::size_t i = 0; i < f.rays.size(); ++i)
    if (!used[i]) v.push_back("ray " + std::to_string(i) + " belongs to no cone");
  if (!rays_ok || !indices_ok) return report;

  std::vector<Cone> cones;
  std::vector<FaceLattice> lattices;
  bool geometry_ok = true;
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    cones.push_back(f.cone(f.max_cones[c]));
    lattices.push_back(face_lattice(cones.back()));
    if (!cones.back().is_pointed()) {
      v.push_back("cone " + std::to_string(c) + " not pointed");
      geometry_ok = false;
      continue;
    }
    for (auto r : f.max_cones[c]) {
      const IntVector p = primitive_normalized(f.rays[r]);
      const IntVector q = primitive(f.rays[r]);
      const auto& ext = cones.back().extreme_rays();
      if (!contains_vector(ext, q) && !contains_vector(ext, p)) {
        v.push_back("ray " + std::to_string(r) + " is not an extreme ray of cone " + std::to_string(c));
        geometry_ok = false;
      }
    }
  }
  if (!geometry_ok) return report;

  for (std::size_t a = 0; a < f.max_cones.size(); ++a)
    for (std::size_t b = a + 1; b < f.max_cones.size(); ++b) {
      IndexSet sa = f.max_cones[a], sb = f.max_cones[b];
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      IndexSet common;
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
      auto positions = [&](std::size_t c) {
        IndexSet pos;
        for (std::size_t i = 0; i < f.max_cones[c].size(); ++i)
          if (std::binary_search(common.begin(), common.end(), f.max_cones[c][i])) pos.push_back(i);
        return pos;
      };
      bool ok = lattices[a].find_by_generators(positions(a)) < lattices[a].size() &&
                lattices[b].find_by_generators(positions(b)) < lattices[b].size();
      if (ok) {
        std::vector<IntVector> ineqs = cones[a].facet_normals();
        ineqs.insert(ineqs.end(), cones[b].facet_normals().begin(), cones[b].facet_normals().end());
        std::vector<IntVector> eqs = cones[a].equations();
        eqs.insert(eqs.end(), cones[b].equations().begin(), cones[b].equations().end());
        const Cone meet = Cone::from_inequalities(f.lattice_rank, ineqs, eqs);
        ok = same_cone(meet, f.cone(common));
      }
      if (!ok)
        v.push_back("cones " + std::to_string(a) + " and " + std::to_string(b) + " do not meet in a common face");
    }
  return report;
}

bool same_fan_up_to_ray_permutation(const Fan& a, const Fan& b) {
  if (a.lattice_rank != b.lattice_rank || a.rays.size() != b.rays.size() ||
      a.max_cones.size() != b.max_cones.size())
    return false;
  std::vector<std::size_t> to_b(a.rays.size());
  for (std::size_t i = 0; i < a.rays.size(); ++i) {
    auto it = std::find_if(b.rays.begin(), b.rays.end(), [&](const IntVector& r) { return r == a.rays[i]; });
    if (it == b.rays.end()) return false;
    to_b[i] = static_cast<std::size_t>(it - b.rays.begin());
  }
  std::set<IndexSet> ca, cb;
  for (const auto& s : a.max_cones) {
    IndexSet m;
    for (auto i : s) m.push_back(to_b[i]);
    std::sort(m.begin(), m.end());
    ca.insert(m);
  }
  for (auto s : b.max_cones) {
    std::sort(s.begin(), s.end());
    cb.insert(s);
  }
  return ca == cb;
}

}  // namespace coxkernel
