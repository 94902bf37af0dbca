// Cox presentations of toric fans, their characteristic-space charts, and
// executable checks of the characterization statements for Cox rings and
// graded characteristic spaces.
//
// All checks run at the invariant level: divisors are ray vectors, primes
// are monomial primes, and units are monomials. Verifiers report failures as
// entries instead of throwing, so counterexamples can be used as fixtures.
#pragma once

#include "coxkernel/cones.hpp"
#include "coxkernel/divisors.hpp"
#include "coxkernel/graded.hpp"
#include "coxkernel/lattice.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coxkernel {

struct CoxPresentation {
  Fan fan;
  FgAbelianGroup cl;
  GroupHom deg = GroupHom::of_matrix(IntMatrix(0, 0));  ///< Z^{rays} -> Cl
  GradedMonoidAlgebra ring;       ///< k[x_rho] graded by deg
  GradedMonoidAlgebra fine_ring;  ///< k[x_rho] graded by Z^{rays}
};

/// Throws for invalid fans and for rays that do not span (torus factor).
CoxPresentation cox_presentation(const Fan& f);

struct CharSpaceChart {
  IndexSet cone;      ///< ray indices of the maximal cone
  IndexSet inverted;  ///< variables off the cone
  GradedMonoidAlgebra ring;
  AffineMonoid base;  ///< sigma^dual ∩ M in lattice coordinates
  std::vector<IntVector> degree_zero;  ///< generators of the degree-zero monoid of `ring`
  /// m -> (<m, v_rho>) maps `base` onto the degree-zero monoid.
  bool isomorphism = false;
  /// For pointed bases: the same map is a bijection of Hilbert bases.
  bool hilbert_bijection = false;
};

std::vector<CharSpaceChart> characteristic_space(const CoxPresentation& p);

// ---- reports ---------------------------------------------------------------

struct Condition {
  std::string id;         ///< e.g. "A.iii.kernel"; the part before the second dot names the clause
  std::string statement;
  bool pass = false;
  nlohmann::json witness;
};

struct VerificationReport {
  std::string theorem;  ///< "A", "B", "C" or "D"
  std::vector<Condition> conditions;

  bool all_pass() const;
  /// Distinct clause prefixes ("D.iv", ...) with at least one failing entry.
  std::vector<std::string> failing_clauses() const;
  const Condition* find(const std::string& id) const;
};

nlohmann::json to_json(const VerificationReport& r, bool witnesses = true);

VerificationReport verify_theoremA(const CoxPresentation& p);
VerificationReport verify_theoremB(const CoxPresentation& p);
VerificationReport verify_theoremC(const CoxPresentation& p, const std::vector<CharSpaceChart>& charts);
inline VerificationReport verify_theoremC(const CoxPresentation& p) { return verify_theoremC(p, characteristic_space(p)); }

/// Characterization of Cox rings for a graded monoid algebra. Passing the
/// divisorial spec the ring came from adds a cross-check of the class
/// semigroup against Cl(A) / im(phi).
VerificationReport verify_theoremD(const GradedMonoidAlgebra& r, const std::optional<DivisorialAlgebraSpec>& spec = {});

// ---- reconstruction --------------------------------------------------------

/// Non-inverted variables whose leave-one-out degree sets all generate K.
/// Throws std::invalid_argument when the characterization fails and
/// std::runtime_error (naming the variable) when monomial primes do not
/// suffice.
IndexSet find_prime_system(const GradedMonoidAlgebra& r);

struct Reconstruction {
  Fan fan;
  /// Lattice basis of M = ker(deg) used for coordinates (columns).
  IntMatrix lattice_basis;
  /// Per chart: generators of the degree-zero monoid in lattice coordinates.
  std::vector<std::vector<IntVector>> chart_monoids;
};

/// Fan of the good quotient glued from the charts. Each chart lists the
/// variables left uninverted. Throws std::runtime_error with the fan
/// violations when the charts do not glue.
Reconstruction reconstruct_base(const GradedMonoidAlgebra& r, const std::vector<IndexSet>& charts,
                                const std::optional<IntMatrix>& lattice_basis = {});
/// Singleton charts {f_j}, one per member of a prime system.
Reconstruction reconstruct_from_prime_system(const GradedMonoidAlgebra& r, const IndexSet& system,
                                             const std::optional<IntMatrix>& lattice_basis = {});
/// Charts from the maximal cones, coordinates from the ray matrix.
Reconstruction reconstruct_base(const CoxPresentation& p);

// ---- orbits and F1 points --------------------------------------------------

struct OrbitNode {
  IndexSet monoid_face;  ///< generators of S = sigma^dual ∩ M lying on the face
  IndexSet cone_face;    ///< rays of sigma orthogonal to that face
  std::vector<IntVector> ideal_generators;  ///< generators of S off the face
  IndexSet degree_variables;                ///< rho not in cone_face
  std::vector<IntVector> degrees;           ///< deg x_rho for those rho, in Cl
};

struct OrbitLattice {
  std::vector<IntVector> monoid_generators;  ///< of S
  FgAbelianGroup cl;
  std::vector<OrbitNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> covers;  ///< (smaller face, larger face)
  bool ideals_prime = false;
  bool order_reversing = false;
  bool bijective = false;
};

/// Orbit data of the affine toric chart of a pointed cone.
OrbitLattice orbit_face_lattice(const Cone& sigma);

struct F1Point {
  IndexSet cone;
  std::size_t chart = 0;  ///< maximal cone used for the chart
  std::vector<IntVector> prime_generators;  ///< generators of S_chart outside the face
};

struct F1Scheme {
  std::vector<F1Point> points;  ///< in the order of Fan::cones()
  /// (i, j): point j lies in the closure of point i.
  std::vector<std::pair<std::size_t, std::size_t>> specializations;
  /// Point j is in the closure of point i exactly when cone i is a face of
  /// cone j, so closed points sit at the top of the cone order.
  bool order_reversed = false;
  bool effective = false;        ///< every chart monoid generates M
  bool inverse_verified = false; ///< the dual of each stalk monoid is the cone
};

F1Scheme toric_f1_points(const Fan& f);

}  // namespace coxkernel
