// Finitely generated abelian groups, homomorphisms between them, and the
// cokernel / kernel / preimage computations everything else is built on.
#pragma once

#include "coxkernel/integer.hpp"
#include "coxkernel/normal_forms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coxkernel {

/// Z^r (+) Z/d_1 (+) ... (+) Z/d_t with d_i >= 2 and d_i | d_{i+1}.
///
/// Elements are integer vectors of length r + t: free coordinates first, then
/// torsion coordinates. The canonical form reduces torsion coordinates into
/// [0, d_i), so two elements are equal iff their canonical forms are.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  FgAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion);

  static FgAbelianGroup free(std::size_t rank) { return FgAbelianGroup(rank, {}); }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  /// Length of the coordinate vectors.
  std::size_t dimension() const { return free_rank_ + torsion_.size(); }

  bool is_trivial() const { return dimension() == 0; }
  bool is_free() const { return torsion_.empty(); }
  /// Group order when finite.
  std::optional<Integer> order() const;

  IntVector zero() const { return IntVector::Zero(static_cast<Eigen::Index>(dimension())); }
  IntVector canonical_form(const IntVector& x) const;
  bool equal(const IntVector& a, const IntVector& b) const;
  bool is_zero_element(const IntVector& x) const;

  /// dimension x #torsion matrix whose columns d_i e_{r+i} present the torsion.
  IntMatrix relation_matrix() const;

  std::string describe() const;

  friend bool operator==(const FgAbelianGroup& a, const FgAbelianGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

/// Homomorphism given by a matrix acting on canonical coordinates.
/// Construction checks dimensions and that every torsion generator of the
/// source is sent to an element whose order divides its own.
class GroupHom {
 public:
  GroupHom(FgAbelianGroup source, FgAbelianGroup target, IntMatrix matrix);

  static GroupHom identity(const FgAbelianGroup& g);
  /// Z^n -> Z^m given by an integer matrix.
  static GroupHom of_matrix(const IntMatrix& matrix);

  const FgAbelianGroup& source() const { return source_; }
  const FgAbelianGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(const IntVector& x) const;
  /// Image of the i-th canonical generator.
  IntVector image_of_generator(std::size_t i) const;

 private:
  FgAbelianGroup source_;
  FgAbelianGroup target_;
  IntMatrix matrix_;
};

GroupHom compose(const GroupHom& outer, const GroupHom& inner);

struct Cokernel {
  FgAbelianGroup group;
  GroupHom projection;
};

/// target / im(h) in invariant-factor form together with the surjection.
/// The free block of the projection is brought into row Hermite form so the
/// output is deterministic.
Cokernel cokernel(const GroupHom& h);

/// Generators of ker(h) (a basis when the source is free), in Hermite order.
std::vector<IntVector> kernel(const GroupHom& h);

struct SubgroupIndex {
  bool is_full = false;
  /// [G : <elements>] when finite; empty means infinite index.
  std::optional<Integer> index;
};

SubgroupIndex subgroup_generates(const std::vector<IntVector>& elements, const FgAbelianGroup& group);

/// Some x with h(x) = target, or empty when no solution exists.
std::optional<IntVector> solve(const GroupHom& h, const IntVector& target);

bool in_subgroup(const std::vector<IntVector>& generators, const IntVector& x, const FgAbelianGroup& group);
bool same_subgroup(const std::vector<IntVector>& a, const std::vector<IntVector>& b,
                   const FgAbelianGroup& group);

/// Hom Z^k -> G sending e_i to the i-th element.
GroupHom hom_from_elements(const std::vector<IntVector>& elements, const FgAbelianGroup& target);

// ---- sublattices of Z^n ---------------------------------------------------

/// Hermite basis (rows) of the lattice generated by `generators` in Z^n.
std::vector<IntVector> lattice_basis(const std::vector<IntVector>& generators, std::size_t n);
bool same_lattice(const std::vector<IntVector>& a, const std::vector<IntVector>& b, std::size_t n);
/// Hermite basis of {x in Z^cols : A x = 0}.
std::vector<IntVector> kernel_basis(const IntMatrix& a);
/// Basis of span_Q(generators) intersected with Z^n.
std::vector<IntVector> saturated_span(const std::vector<IntVector>& generators, std::size_t n);
/// Integer y with B y = v where the columns of B are lattice vectors.
std::optional<IntVector> lattice_coordinates(const IntMatrix& basis_columns, const IntVector& v);
/// Columns [B | C] forming a basis of Z^n whose first block spans the saturated
/// lattice given by `saturated_basis` (which must be saturated).
IntMatrix complete_to_unimodular(const std::vector<IntVector>& saturated_basis, std::size_t n);

}  // namespace coxkernel
