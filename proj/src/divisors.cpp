#include "coxkernel/divisors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace coxkernel {

namespace {

Integer floor_of(const Rational& q) { return floor_div(numerator(q), denominator(q)); }
Integer ceil_of(const Rational& q) { return -floor_div(-numerator(q), denominator(q)); }

void require_valid(const Fan& f) {
  const FanReport report = validate_fan(f);
  if (report.valid()) return;
  std::string msg = "invalid fan:";
  for (const auto& v : report.violations) msg += " " + v + ";";
  msg.pop_back();
  throw std::invalid_argument(msg);
}

// Calls visit(m) for every lattice point of the box.
template <typename Visit>
void for_each_point(const IntVector& lo, const IntVector& hi, Visit visit) {
  const auto n = lo.size();
  for (Eigen::Index i = 0; i < n; ++i)
    if (lo(i) > hi(i)) return;
  IntVector m = lo;
  while (true) {
    visit(m);
    Eigen::Index i = 0;
    while (i < n && m(i) == hi(i)) {
      m(i) = lo(i);
      ++i;
    }
    if (i == n) return;
    m(i) += 1;
  }
}

}  // namespace

IntMatrix ray_map(const Fan& f) { return stack_rows(f.rays, f.lattice_rank); }

ClassGroup class_group(const Fan& f) {
  require_valid(f);
  const Cokernel q = cokernel(GroupHom::of_matrix(ray_map(f)));
  return ClassGroup{q.group, q.projection};
}

IntVector principal_divisor(const Fan& f, const IntVector& m) {
  if (static_cast<std::size_t>(m.size()) != f.lattice_rank)
    throw std::invalid_argument("principal_divisor: lattice point has wrong length");
  return ray_map(f) * m;
}

IndexSet support(const IntVector& divisor) {
  IndexSet out;
  for (Eigen::Index i = 0; i < divisor.size(); ++i)
    if (divisor(i) != 0) out.push_back(static_cast<std::size_t>(i));
  return out;
}

std::vector<IntVector> global_sections(const Fan& f, const IntVector& divisor, const std::optional<Box>& box) {
  const std::size_t n = f.lattice_rank;
  if (static_cast<std::size_t>(divisor.size()) != f.rays.size())
    throw std::invalid_argument("global_sections: divisor needs one coefficient per ray");
  const IntMatrix p = ray_map(f);
  auto is_section = [&](const IntVector& m) { return is_nonnegative(IntVector(p * m + divisor)); };

  IntVector lo, hi;
  if (box) {
    if (static_cast<std::size_t>(box->lo.size()) != n || static_cast<std::size_t>(box->hi.size()) != n)
      throw std::invalid_argument("global_sections: box has wrong dimension");
    lo = box->lo;
    hi = box->hi;
  } else {
    // {m : <m, v> >= -D} is bounded iff its recession cone {<m, v> >= 0} is
    // zero, i.e. the rays positively span.
    const Cone spanned(n, f.rays);
    if (!spanned.is_full_dimensional() || !spanned.facet_normals().empty())
      throw std::invalid_argument("supply enumeration box");
    bool any_vertex = false;
    RatVector rlo, rhi;
    IndexSet idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    const std::size_t k = f.rays.size();
    while (true) {
      std::vector<IntVector> rows;
      RatVector rhs(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) {
        rows.push_back(f.rays[idx[i]]);
        rhs(static_cast<Eigen::Index>(i)) = Rational(-divisor(static_cast<Eigen::Index>(idx[i])));
      }
      const IntMatrix a = stack_rows(rows, n);
      if (matrix_rank(a) == static_cast<Eigen::Index>(n)) {
        const auto x = rational_solve(a.cast<Rational>(), rhs);
        const RatVector slack = p.cast<Rational>() * (*x) + divisor.cast<Rational>();
        bool feasible = true;
        for (Eigen::Index i = 0; i < slack.size(); ++i) feasible = feasible && slack(i) >= 0;
        if (feasible) {
          if (!any_vertex) {
            rlo = rhi = *x;
            any_vertex = true;
          }
          for (Eigen::Index i = 0; i < x->size(); ++i) {
            rlo(i) = std::min(rlo(i), (*x)(i));
            rhi(i) = std::max(rhi(i), (*x)(i));
          }
        }
      }
      std::size_t i = n;
      while (i > 0 && idx[i - 1] == k - n + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!any_vertex) return {};
    lo.resize(static_cast<Eigen::Index>(n));
    hi.resize(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
      lo(i) = ceil_of(rlo(i));
      hi(i) = floor_of(rhi(i));
    }
  }
  std::vector<IntVector> out;
  for_each_point(lo, hi, [&](const IntVector& m) {
    if (is_section(m)) out.push_back(m);
  });
  sort_unique(out);
  return out;
}

// ---- divisorial algebras ---------------------------------------------------

void DivisorialAlgebraSpec::validate() const {
  for (std::size_t i = 0; i < cone_rays.size(); ++i) {
    if (static_cast<std::size_t>(cone_rays[i].size()) != lattice_rank)
      throw std::invalid_argument("divisorial spec: ray " + std::to_string(i) + " has wrong length");
    if (content(cone_rays[i]) != 1)
      throw std::invalid_argument("divisorial spec: ray " + std::to_string(i) + " not primitive");
  }
  if (phi.target() != FgAbelianGroup::free(cone_rays.size()))
    throw std::invalid_argument("divisorial spec: phi must map to Z^" + std::to_string(cone_rays.size()));
}

Integer mu_valuation(const DivisorialAlgebraSpec& spec, std::size_t ray, const IntVector& m, const IntVector& w) {
  if (ray >= spec.cone_rays.size()) throw std::invalid_argument("mu_valuation: ray index out of range");
  if (static_cast<std::size_t>(m.size()) != spec.lattice_rank)
    throw std::invalid_argument("mu_valuation: monomial has wrong length");
  return dot(m, spec.cone_rays[ray]) + spec.phi.apply(w)(static_cast<Eigen::Index>(ray));
}

bool component_membership(const DivisorialAlgebraSpec& spec, const IntVector& m, const IntVector& w) {
  for (std::size_t r = 0; r < spec.cone_rays.size(); ++r)
    if (mu_valuation(spec, r, m, w) < 0) return false;
  return true;
}

Cokernel divisorial_class_semigroup(const DivisorialAlgebraSpec& spec) {
  spec.validate();
  const auto rays = static_cast<Eigen::Index>(spec.cone_rays.size());
  const IntMatrix r = stack_rows(spec.cone_rays, spec.lattice_rank);
  IntMatrix both(rays, r.cols() + spec.phi.matrix().cols());
  both << r, spec.phi.matrix();
  return cokernel(GroupHom::of_matrix(both));
}

DivisorialPresentation divisorial_algebra_presentation(const DivisorialAlgebraSpec& spec) {
  spec.validate();
  const FgAbelianGroup& k = spec.grading_group();
  if (!k.is_free())
    throw std::invalid_argument("torsion grading group: present A(K, phi) over a free cover and coarsen with coarsen_cie");
  const std::size_t n = spec.lattice_rank;
  const std::size_t kr = k.free_rank();
  const auto total = static_cast<Eigen::Index>(n + kr);

  std::vector<IntVector> inequalities;
  for (std::size_t r = 0; r < spec.cone_rays.size(); ++r) {
    IntVector row(total);
    row << spec.cone_rays[r], spec.phi.matrix().row(static_cast<Eigen::Index>(r)).transpose();
    inequalities.push_back(row);
  }
  const Cone c = Cone::from_inequalities(n + kr, inequalities);
  const auto gens = lattice_cone_generators(c, IntMatrix::Identity(total, total));
  IntMatrix projection = IntMatrix::Zero(static_cast<Eigen::Index>(kr), total);
  projection.rightCols(static_cast<Eigen::Index>(kr)) = IntMatrix::Identity(static_cast<Eigen::Index>(kr), static_cast<Eigen::Index>(kr));

  DivisorialPresentation out{GradedMonoidAlgebra(AffineMonoid(n + kr, gens), GroupHom::of_matrix(projection)), false,
                             false};

  // R_0 must be A = k[sigma^dual ∩ M]
  const auto base = lattice_cone_generators(dual_cone(Cone(n, spec.cone_rays)),
                                            IntMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  std::vector<IntVector> zero;
  for (const auto& g : degree_zero_generators(out.algebra)) zero.emplace_back(g.head(static_cast<Eigen::Index>(n)));
  const AffineMonoid base_monoid(n, base), zero_monoid(n, zero);
  out.degree_zero_is_base =
      std::all_of(zero.begin(), zero.end(), [&](const IntVector& z) { return base_monoid.contains(z); }) &&
      std::all_of(base.begin(), base.end(), [&](const IntVector& b) { return zero_monoid.contains(b); });

  std::vector<IntVector> degrees;
  for (std::size_t i = 0; i < out.algebra.generator_count(); ++i) degrees.push_back(out.algebra.generator_degree(i));
  out.degrees_generate = subgroup_generates(degrees, k).is_full;
  return out;
}

// ---- K-divisors ------------------------------------------------------------

KDivisor invariant_kdivisor(const GradedMonoidAlgebra& cox_ring, const HomogeneousPolynomial& f) {
  KDivisor out;
  const std::size_t n = cox_ring.generator_count();
  out.coefficients = IntVector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t rho = 0; rho < n; ++rho)
    out.coefficients(static_cast<Eigen::Index>(rho)) = monomial_valuation(cox_ring, f, rho);
  out.divisor_class = cox_ring.degree(out.coefficients);
  out.complete = out.divisor_class == f.degree();
  if (!out.complete) out.note = "non-invariant divisor present";
  return out;
}

IntVector reflexive_vector(const GradedMonoidAlgebra& cox_ring, const std::vector<IntVector>& monomials) {
  if (monomials.empty()) throw std::invalid_argument("reflexive_vector needs at least one generator");
  const std::size_t n = cox_ring.generator_count();
  IntVector out(static_cast<Eigen::Index>(n));
  for (std::size_t rho = 0; rho < n; ++rho) {
    Integer best = valuation_of_monomial(cox_ring, monomials[0], rho);
    for (std::size_t i = 1; i < monomials.size(); ++i) best = std::min(best, valuation_of_monomial(cox_ring, monomials[i], rho));
    out(static_cast<Eigen::Index>(rho)) = best;
  }
  return out;
}

IntVector reflexive_vector(const DivisorialAlgebraSpec& spec, const std::vector<std::pair<IntVector, IntVector>>& elements) {
  if (elements.empty()) throw std::invalid_argument("reflexive_vector needs at least one generator");
  IntVector out(static_cast<Eigen::Index>(spec.cone_rays.size()));
  for (std::size_t r = 0; r < spec.cone_rays.size(); ++r) {
    Integer best = mu_valuation(spec, r, elements[0].first, elements[0].second);
    for (std::size_t i = 1; i < elements.size(); ++i)
      best = std::min(best, mu_valuation(spec, r, elements[i].first, elements[i].second));
    out(static_cast<Eigen::Index>(r)) = best;
  }
  return out;
}

IntVector box_plus(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("box_plus: vectors of different length");
  return a + b;
}

}  // namespace coxkernel
