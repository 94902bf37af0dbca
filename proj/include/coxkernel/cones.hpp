// Rational polyhedral cones, affine monoids and fans.
#pragma once

#include "coxkernel/integer.hpp"
#include "coxkernel/lattice.hpp"

#include <string>
#include <utility>
#include <vector>

namespace coxkernel {

/// V-description {sum a_i l_i + sum b_j r_j : a free, b >= 0}.
struct ConeGenerators {
  std::vector<IntVector> lineality;
  std::vector<IntVector> rays;
};

/// Generators of {x in Q^dim : <a, x> >= 0 for all a in inequalities} by
/// incremental double description. Rays are primitive, orthogonal to the
/// lineality space and sorted; the lineality basis is a Hermite basis of the
/// saturated lineality lattice.
ConeGenerators double_description(std::size_t dim, const std::vector<IntVector>& inequalities);

/// Cone generated by integer vectors in Q^d, with both descriptions computed
/// at construction.
///
/// Extreme rays are taken modulo the lineality space (the minimal face
/// C ∩ -C) and facet normals modulo C^⊥; in both cases the stored
/// representative is the primitive vector orthogonal to the space divided out,
/// which makes them canonical.
class Cone {
 public:
  Cone() = default;
  Cone(std::size_t ambient_rank, std::vector<IntVector> generators);

  /// {x : <a,x> >= 0 for a in inequalities, <e,x> = 0 for e in equations}.
  static Cone from_inequalities(std::size_t ambient_rank, const std::vector<IntVector>& inequalities,
                                const std::vector<IntVector>& equations = {});

  std::size_t ambient_rank() const { return ambient_; }
  const std::vector<IntVector>& generators() const { return generators_; }
  const std::vector<IntVector>& extreme_rays() const { return rays_; }
  const std::vector<IntVector>& lineality_basis() const { return lineality_; }
  const std::vector<IntVector>& facet_normals() const { return facets_; }
  /// Hermite basis of the lattice C^⊥ ∩ Z^d.
  const std::vector<IntVector>& equations() const { return equations_; }

  std::size_t dimension() const { return ambient_ - equations_.size(); }
  bool is_pointed() const { return lineality_.empty(); }
  bool is_full_dimensional() const { return equations_.empty(); }
  bool contains(const IntVector& x) const;
  bool in_relative_interior(const IntVector& x) const;

  /// Sum of the facet normals: zero on the lineality space and strictly
  /// positive on the rest of the cone.
  IntVector positive_functional() const;

 private:
  std::size_t ambient_ = 0;
  std::vector<IntVector> generators_;
  std::vector<IntVector> rays_;
  std::vector<IntVector> lineality_;
  std::vector<IntVector> facets_;
  std::vector<IntVector> equations_;
};

bool same_cone(const Cone& a, const Cone& b);

/// {u : <u, v> >= 0 for all generators v}.
Cone dual_cone(const Cone& c);

/// A face given by its supporting normal and the members it contains.
struct Face {
  IndexSet generators;  ///< indices into the parent's generator list
  IndexSet rays;        ///< indices into the parent's extreme rays
  IntVector normal;     ///< >= 0 on the parent, face = parent ∩ normal^⊥
  std::size_t dimension = 0;

  friend bool operator==(const Face& a, const Face& b) { return a.generators == b.generators && a.rays == b.rays; }
};

/// Faces ordered by (dimension, generator indices) with the covering relation
/// of inclusion.
struct FaceLattice {
  std::vector<Face> faces;
  std::vector<std::pair<std::size_t, std::size_t>> covers;  ///< (lower, upper)

  std::size_t size() const { return faces.size(); }
  bool is_subface(std::size_t lower, std::size_t upper) const;
  /// Index of the face with exactly these generator indices, or size().
  std::size_t find_by_generators(const IndexSet& generators) const;
};

FaceLattice face_lattice(const Cone& c);

/// Unique minimal generating set of C ∩ Z^d; throws for non-pointed cones.
std::vector<IntVector> hilbert_basis(const Cone& c);

/// Generators of the monoid C ∩ L for the lattice L spanned by the columns of
/// `lattice_columns` (full column rank). For non-pointed intersections the
/// result is ± a basis of the unit lattice plus the Hilbert basis of a
/// complementary pointed part.
std::vector<IntVector> lattice_cone_generators(const Cone& c, const IntMatrix& lattice_columns);

/// Finitely generated submonoid of Z^d.
class AffineMonoid {
 public:
  AffineMonoid() = default;
  AffineMonoid(std::size_t ambient_rank, std::vector<IntVector> generators);

  /// N^n with the standard basis as generators.
  static AffineMonoid orthant(std::size_t n);

  std::size_t ambient_rank() const { return ambient_; }
  const std::vector<IntVector>& generators() const { return generators_; }
  const Cone& cone() const { return cone_; }
  /// Hermite basis of the group of differences.
  const std::vector<IntVector>& group_basis() const { return group_basis_; }
  /// Basis of the unit group M ∩ -M.
  const std::vector<IntVector>& units_basis() const { return units_basis_; }
  /// Indices of generators that are units.
  const IndexSet& unit_generators() const { return unit_generators_; }

  bool is_pointed() const { return units_basis_.empty(); }
  bool is_saturated() const { return saturated_; }
  bool is_group() const { return unit_generators_.size() == generators_.size(); }

  /// Exact membership as a non-negative integer combination of generators.
  bool contains(const IntVector& x) const;
  /// a | b in the monoid algebra, i.e. b - a in M.
  bool divides(const IntVector& a, const IntVector& b) const { return contains(b - a); }
  bool in_group(const IntVector& x) const;

 private:
  bool search_contains(const IntVector& x) const;

  std::size_t ambient_ = 0;
  std::vector<IntVector> generators_;
  Cone cone_;
  std::vector<IntVector> group_basis_;
  std::vector<IntVector> units_basis_;
  IndexSet unit_generators_;
  bool saturated_ = false;
};

/// Faces of cone(M) intersected with M, labelled by generator subsets.
FaceLattice monoid_faces(const AffineMonoid& m);

/// Generators of the monoid cone(M) ∩ group(M).
std::vector<IntVector> saturation_generators(const AffineMonoid& m);

/// Rays are kept in user order and orientation; max_cones hold ray indices.
struct Fan {
  std::size_t lattice_rank = 0;
  std::vector<IntVector> rays;
  std::vector<IndexSet> max_cones;

  Cone cone(const IndexSet& ray_indices) const;
  /// Rows are the rays.
  IntMatrix ray_matrix() const;
  /// Every cone of the fan as a sorted ray-index set, ordered by size then lex.
  std::vector<IndexSet> cones() const;
};

struct FanReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

/// Never throws; lists every violation found.
FanReport validate_fan(const Fan& f);

/// Same ray set and same maximal cones after matching rays as vectors.
bool same_fan_up_to_ray_permutation(const Fan& a, const Fan& b);

}  // namespace coxkernel
