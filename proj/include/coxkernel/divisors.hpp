// Torus-invariant divisors on a fan and divisorial algebras A(K, phi).
//
// Everything here works with invariant divisors only, i.e. integer vectors
// indexed by rays. That is enough for every statement that factors through
// divisor classes: Cl is the cokernel of the invariant lattice, so each class
// has an invariant representative.
#pragma once

#include "coxkernel/cones.hpp"
#include "coxkernel/graded.hpp"
#include "coxkernel/lattice.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coxkernel {

/// Matrix of m -> (<m, v_rho>)_rho; rows are the rays.
IntMatrix ray_map(const Fan& f);

struct ClassGroup {
  FgAbelianGroup group;
  GroupHom degree;  ///< Z^{rays} -> Cl, surjective
};

/// Cl = Z^{rays} / im(ray map). Throws for invalid fans.
ClassGroup class_group(const Fan& f);

/// div(chi^m): the coefficient at rho is <m, v_rho>.
IntVector principal_divisor(const Fan& f, const IntVector& m);

IndexSet support(const IntVector& divisor);

/// Inclusive box lo <= m <= hi.
struct Box {
  IntVector lo;
  IntVector hi;
};

/// Lattice points m with div(chi^m) + D >= 0. Without a box the polyhedron
/// must be bounded (the rays positively span), otherwise this throws
/// "supply enumeration box".
std::vector<IntVector> global_sections(const Fan& f, const IntVector& divisor, const std::optional<Box>& box = {});

// ---- divisorial algebras ---------------------------------------------------

/// A = k[sigma^dual ∩ Z^n] for sigma = cone(cone_rays), together with
/// phi: K -> Z^{rays} assigning an invariant divisor to each degree.
struct DivisorialAlgebraSpec {
  std::size_t lattice_rank = 0;
  std::vector<IntVector> cone_rays;
  GroupHom phi = GroupHom::of_matrix(IntMatrix(0, 0));

  const FgAbelianGroup& grading_group() const { return phi.source(); }
  /// Checks primitive rays of the right length and phi landing in Z^{rays}.
  void validate() const;
};

/// mu_p(a chi^w) = nu_p(a) + nu_p(phi(w)) for the monomial a = chi^m.
Integer mu_valuation(const DivisorialAlgebraSpec& spec, std::size_t ray, const IntVector& m, const IntVector& w);

/// a chi^w lies in R_w, i.e. div(a) + phi(w) >= 0.
bool component_membership(const DivisorialAlgebraSpec& spec, const IntVector& m, const IntVector& w);

/// Cl(A) / <im phi> = Z^{rays} / (im ray map + im phi).
Cokernel divisorial_class_semigroup(const DivisorialAlgebraSpec& spec);

struct DivisorialPresentation {
  GradedMonoidAlgebra algebra;  ///< monoid in Z^n (+) K, graded by the projection to K
  bool degree_zero_is_base = false;
  bool degrees_generate = false;
};

/// R = (+)_w R_w as a monoid algebra over {(m, w) : <m, v_rho> + phi(w)_rho >= 0}.
/// Requires free K; torsion gradings go through a free cover and coarsen_cie.
DivisorialPresentation divisorial_algebra_presentation(const DivisorialAlgebraSpec& spec);

// ---- K-divisors ------------------------------------------------------------

struct KDivisor {
  IntVector coefficients;  ///< one per variable of the Cox ring
  IntVector divisor_class; ///< deg of the coefficient vector
  /// The invariant part accounts for deg(f). When it does not, f has a
  /// non-invariant prime factor.
  bool complete = true;
  std::string note;
};

/// div_K(f) over the invariant K-primes <x_rho> of a Cox ring (a polynomial
/// ring graded by deg: Z^{rays} -> Cl).
KDivisor invariant_kdivisor(const GradedMonoidAlgebra& cox_ring, const HomogeneousPolynomial& f);

/// Coefficientwise minimum of the valuations over the generators, which is
/// the divisor of the reflexive hull of the ideal they generate.
IntVector reflexive_vector(const GradedMonoidAlgebra& cox_ring, const std::vector<IntVector>& monomials);
/// The same in a divisorial algebra, for homogeneous generators a chi^w given
/// as (m, w) pairs.
IntVector reflexive_vector(const DivisorialAlgebraSpec& spec, const std::vector<std::pair<IntVector, IntVector>>& elements);

/// Sum of K-divisors; on reflexive hulls this is the product [R : [R : ab]].
IntVector box_plus(const IntVector& a, const IntVector& b);

}  // namespace coxkernel
