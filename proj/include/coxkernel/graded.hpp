// Graded monoid algebras k[M], their spectra of monomial primes, localization,
// good quotients by the degree-zero part, coarsening along a surjection of
// grading groups, and Proj of a non-negatively graded algebra.
#pragma once

#include "coxkernel/cones.hpp"
#include "coxkernel/lattice.hpp"

#include <map>
#include <optional>
#include <vector>

namespace coxkernel {

/// k[M] for an affine monoid M in Z^d, graded by deg: Z^d -> K, with some
/// generators declared invertible.
///
/// The localized monoid has the original generators first (same indices)
/// followed by the negatives of the inverted ones, so face generator sets of
/// the localized monoid restricted to indices < generators().size() still
/// name original generators.
class GradedMonoidAlgebra {
 public:
  GradedMonoidAlgebra() = default;
  GradedMonoidAlgebra(AffineMonoid monoid, GroupHom grading, IndexSet inverted = {});

  /// N^n graded by the columns of `degrees`.
  static GradedMonoidAlgebra polynomial_ring(const FgAbelianGroup& k, const std::vector<IntVector>& degrees,
                                             IndexSet inverted = {});

  const AffineMonoid& monoid() const { return monoid_; }
  const AffineMonoid& localized() const { return localized_; }
  const GroupHom& grading() const { return grading_; }
  const FgAbelianGroup& degree_group() const { return grading_.target(); }
  const IndexSet& inverted() const { return inverted_; }
  std::size_t ambient_rank() const { return monoid_.ambient_rank(); }
  std::size_t generator_count() const { return monoid_.generators().size(); }

  /// Canonical degree of the monomial chi^x.
  IntVector degree(const IntVector& exponent) const { return grading_.apply(exponent); }
  IntVector generator_degree(std::size_t i) const { return degree(monoid_.generators().at(i)); }
  bool has_monomial(const IntVector& exponent) const { return localized_.contains(exponent); }
  /// Grading injective on the group of differences.
  bool is_faithful() const { return faithful_; }

 private:
  AffineMonoid monoid_;
  AffineMonoid localized_;
  GroupHom grading_ = GroupHom::of_matrix(IntMatrix(0, 0));
  IndexSet inverted_;
  bool faithful_ = false;
};

/// R localized at the product of the given generators.
GradedMonoidAlgebra localize(const GradedMonoidAlgebra& r, const IndexSet& generators);

/// Same monoid and localization, different grading.
GradedMonoidAlgebra regrade(const GradedMonoidAlgebra& r, const GroupHom& grading);

/// Finite sum of monomials of one degree with nonzero rational coefficients.
class HomogeneousPolynomial {
 public:
  using Terms = std::map<IntVector, Rational, LexLess>;

  /// Throws if terms is empty, a coefficient is zero, an exponent is not in the
  /// localized monoid, or the degrees disagree.
  HomogeneousPolynomial(const GradedMonoidAlgebra& r, Terms terms);
  static HomogeneousPolynomial monomial(const GradedMonoidAlgebra& r, const IntVector& exponent,
                                        const Rational& coefficient = Rational(1));

  const Terms& terms() const { return terms_; }
  const IntVector& degree() const { return degree_; }
  const FgAbelianGroup& degree_group() const { return group_; }
  bool is_monomial() const { return terms_.size() == 1; }

  friend bool operator==(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
    return a.terms_ == b.terms_;
  }

 private:
  HomogeneousPolynomial(FgAbelianGroup group, Terms terms, IntVector degree)
      : group_(std::move(group)), terms_(std::move(terms)), degree_(std::move(degree)) {}
  friend HomogeneousPolynomial multiply(const HomogeneousPolynomial&, const HomogeneousPolynomial&);
  friend std::optional<HomogeneousPolynomial> add(const HomogeneousPolynomial&, const HomogeneousPolynomial&);

  FgAbelianGroup group_;
  Terms terms_;
  IntVector degree_;
};

HomogeneousPolynomial multiply(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b);
/// Sum of two polynomials of the same degree; nullopt when it cancels to zero.
std::optional<HomogeneousPolynomial> add(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b);

/// Order of vanishing of chi^x along the prime divisor of k[M] singled out
/// by generator i: the facet of cone(M) containing every other generator.
/// The facet functional is scaled to be primitive on group(M), so for a
/// polynomial ring this is the exponent of x_i. Throws if no such facet
/// exists (i inverted, or i not a prime generator). Laurent monomials of the
/// group are allowed.
Integer valuation_of_monomial(const GradedMonoidAlgebra& r, const IntVector& exponent, std::size_t generator);
/// Minimum of the above over the terms of f.
Integer monomial_valuation(const GradedMonoidAlgebra& r, const HomogeneousPolynomial& f, std::size_t generator);

// ---- spectra ---------------------------------------------------------------

/// A monomial prime p_tau = <chi^w : w in M \ tau>.
struct PrimePoint {
  Face face;                            ///< face of the localized monoid
  std::vector<IntVector> ideal_generators;  ///< localized generators outside the face
};

/// Points listed in the order of the face lattice of the localized monoid,
/// so points[i] corresponds to faces[i]. Ideal inclusion reverses face
/// inclusion; `covers` holds (smaller ideal, larger ideal) pairs.
struct Spectrum {
  FaceLattice faces;
  std::vector<PrimePoint> points;
  std::vector<std::pair<std::size_t, std::size_t>> covers;

  std::size_t size() const { return points.size(); }
  /// Index of the point whose face has these localized-generator indices.
  std::size_t find(const IndexSet& face_generators) const { return faces.find_by_generators(face_generators); }
  /// p_a contained in p_b.
  bool ideal_contained(std::size_t a, std::size_t b) const { return faces.is_subface(b, a); }
};

/// All K-primes of a faithfully graded k[M]; they are exactly the monomial
/// primes. Throws "K-spectrum exceeds monomial ideals; faithful grading
/// required" otherwise.
Spectrum k_spectrum(const GradedMonoidAlgebra& r);

/// The monomial (torus-invariant) primes for an arbitrary grading. For coarse
/// gradings this is a proper subset of the K-spectrum.
Spectrum invariant_spectrum(const GradedMonoidAlgebra& r);

/// Localization at a point: M - tau with the generators of tau inverted.
GradedMonoidAlgebra stalk(const GradedMonoidAlgebra& r, const PrimePoint& p);

/// Degree subgroup of the homogeneous units, which are the scalar multiples of
/// chi^u for u in the unit group of the localized monoid.
struct UnitDegrees {
  std::vector<IntVector> unit_exponents;    ///< basis of the unit lattice
  std::vector<IntVector> degree_generators; ///< their degrees in K
};
UnitDegrees homogeneous_units(const GradedMonoidAlgebra& r);

// ---- good quotients --------------------------------------------------------

struct GoodQuotient {
  AffineMonoid base;                    ///< degree-zero monoid M_0
  Spectrum source;                      ///< monomial primes of R
  FaceLattice base_faces;               ///< faces of M_0
  std::vector<std::size_t> point_map;   ///< source point -> face of M_0 (tau -> tau ∩ M_0)

  /// Source points over base face b.
  IndexSet fiber(std::size_t b) const;
  bool is_surjective() const;
  bool is_bijective() const;
  /// Image of a set of source points.
  IndexSet image(const IndexSet& points) const;
};

/// Generators of the monoid of degree-zero elements of the localized monoid.
/// Saturated monoids reduce to a Hilbert basis computation on the degree-zero
/// lattice. Otherwise the saturated degree-zero monoid is enumerated up to
/// `enumeration_factor` times the largest generator level of a positive
/// functional; throws "increase enumeration bound" when an irreducible element
/// of M_0 shows up in the upper half of that range.
std::vector<IntVector> degree_zero_generators(const GradedMonoidAlgebra& r, long enumeration_factor = 8);

/// Good quotient Spec R -> Spec R_0 restricted to the monomial primes, which
/// it maps to monomial primes of R_0. Any grading is accepted: a faithful one
/// would make R_0 = k and the quotient a point.
GoodQuotient good_quotient_affine(const GradedMonoidAlgebra& r);

/// The unique point of a fiber lying in the closure of all others (the
/// smallest face). Throws if `fiber` is not a full preimage or the point is
/// not unique.
std::size_t distinguished_point(const GoodQuotient& q, const IndexSet& fiber);

/// Points in the closure of point i: the faces contained in face i.
IndexSet closure(const Spectrum& s, std::size_t i);
/// V(I) for the monomial ideal generated by `monomials`.
IndexSet vanishing_set(const Spectrum& s, const GradedMonoidAlgebra& r, const std::vector<IntVector>& monomials);

// ---- monomial ideals -------------------------------------------------------

bool ideal_contains(const GradedMonoidAlgebra& r, const std::vector<IntVector>& generators, const IntVector& x);
/// Divisibility-minimal subset, one representative per associate class.
std::vector<IntVector> minimal_generators(const GradedMonoidAlgebra& r, const std::vector<IntVector>& generators);
bool same_ideal(const GradedMonoidAlgebra& r, const std::vector<IntVector>& a, const std::vector<IntVector>& b);

// ---- coarsening ------------------------------------------------------------

/// psi: K' -> K surjective, with chi sending the i-th kernel basis element to
/// the unit chi^{chi_exponents[i]} of that degree.
struct CoarseningData {
  GroupHom psi;
  std::vector<IntVector> kernel_basis;
  std::vector<IntVector> chi_exponents;
};

/// Picks chi from the units of R when possible; throws naming the kernel
/// degree that has no homogeneous unit.
CoarseningData kernel_character(const GradedMonoidAlgebra& r, const GroupHom& psi);

/// R' / I_chi presented as the monoid algebra of the image of M' in
/// Z^d / U_chi, U_chi the lattice of chi exponents, graded by K.
class CoarsenedAlgebra {
 public:
  CoarsenedAlgebra(GradedMonoidAlgebra fine, CoarseningData data);

  const GradedMonoidAlgebra& fine() const { return fine_; }
  const CoarseningData& data() const { return data_; }
  const FgAbelianGroup& exponent_group() const { return projection_.group; }
  const GroupHom& projection() const { return projection_.projection; }
  const FgAbelianGroup& degree_group() const { return data_.psi.target(); }

  /// Exponent class of a fine monomial.
  IntVector project(const IntVector& fine_exponent) const;
  /// A fine exponent mapping to the class, unique up to the units U_chi.
  IntVector lift(const IntVector& coarse_exponent) const;
  IntVector degree(const IntVector& coarse_exponent) const;
  bool has_monomial(const IntVector& coarse_exponent) const;
  /// Monomials of R_coarse in degree w correspond to fine monomials of degree
  /// w' for any psi(w') = w. Returns that w'.
  IntVector fine_degree(const IntVector& coarse_degree) const;

  std::vector<IntVector> ideal_forward(const std::vector<IntVector>& fine_generators) const;
  std::vector<IntVector> ideal_backward(const std::vector<IntVector>& coarse_generators) const;
  bool same_coarse_ideal(const std::vector<IntVector>& a, const std::vector<IntVector>& b) const;
  /// Degrees of the homogeneous units of R_coarse.
  std::vector<IntVector> unit_degrees() const;

 private:
  GradedMonoidAlgebra fine_;
  CoarseningData data_;
  Cokernel projection_;
};

CoarsenedAlgebra coarsen_cie(const GradedMonoidAlgebra& r, const CoarseningData& data);

// ---- Proj ------------------------------------------------------------------

struct ProjChart {
  std::size_t generator;        ///< the positive-degree generator inverted
  GradedMonoidAlgebra ring;     ///< R_f
  GoodQuotient quotient;        ///< onto the degree-zero monoid of R_f
};

struct ProjQuotient {
  std::vector<ProjChart> charts;
  bool geometric = false;
  /// Faces of M (generator index sets) containing a positive-degree
  /// generator; these are the points of Proj R.
  std::vector<IndexSet> points;
};

/// Proj of a Z-graded k[M] with non-negative generator degrees.
ProjQuotient proj_quotient(const GradedMonoidAlgebra& r);

// ---- morphisms -------------------------------------------------------------

/// For psi: Z^d' -> Z^d mapping M' into M, the induced map
/// Spec k[M] -> Spec k[M'], tau -> psi^{-1}(tau) ∩ M', as face indices of
/// monoid_faces(target) -> monoid_faces(source).
std::vector<std::size_t> spec_morphism(const AffineMonoid& source, const AffineMonoid& target, const GroupHom& psi);

}  // namespace coxkernel
