#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nvmap/group.hpp"

namespace nvmap {

// One branch of an affine n-valued map: x |-> phi*x + g.
struct MapFactor {
  RatMat phi;
  RatVec g;
};

struct NMapLift {
  std::size_t n = 0;
  std::vector<MapFactor> factors;
};

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> img);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return img_.size(); }
  std::size_t operator()(std::size_t i) const { return img_.at(i); }
  bool is_identity() const;
  unsigned long order() const;
  Permutation inverse() const;
  // composed: i |-> this(other(i))
  Permutation after(const Permutation& other) const;

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return !(*this == o); }

 private:
  std::vector<std::size_t> img_;
};

// Image data of one group generator gamma under the induced structure:
// F_i o gamma = phi[i] o F_{sigma^{-1}(i)}.
struct GeneratorImage {
  Permutation sigma;
  std::vector<CanonicalElement> phi;  // phi[i] = image element attached to branch i
};

// Induced morphism data on the standard generators: the k lattice basis
// translations (in column order of g.lattice.basis()) followed by the
// non-identity coset reps (cosets[1..]).
struct InducedMorphism {
  std::vector<GeneratorImage> lattice_gens;
  std::vector<GeneratorImage> coset_gens;
};

struct MapValidation {
  bool ok = true;
  std::vector<GroupIssue> issues;
  std::optional<InducedMorphism> induced;
};

// Checks that the factors define a valid n-valued map on the quotient:
// branch images pairwise disjoint on the quotient, and every generator of the
// group admits a (necessarily unique) induced permutation + image elements.
MapValidation validate_map(const CrystalGroup& g, const NMapLift& m);

struct FactorImage {
  std::size_t j = 0;  // branch index with F_i o gamma = delta o F_j
  CanonicalElement delta;
};

// The unique (j, delta) with F_i o gamma = delta o F_j, for gamma in the
// group.  Throws IntegrityError if no match exists (invalid input data).
FactorImage induced_factor(const CrystalGroup& g, const NMapLift& m, std::size_t i,
                           const AffineElement& gamma);

// sigma of an arbitrary group element, composed from generator data.
Permutation sigma_of(const CrystalGroup& g, const InducedMorphism& ind,
                     const CanonicalElement& e);

struct SigmaData {
  unsigned long exponent = 1;  // lcm of generator sigma orders
  std::vector<std::vector<std::size_t>> orbits;  // orbits of the sigma image group
  std::vector<std::size_t> orbit_of;             // factor index -> orbit index
};

SigmaData sigma_data(const CrystalGroup& g, const InducedMorphism& ind, std::size_t n);

// Largest sublattice T (in lattice coordinates) of Z^k such that every pure
// translation by L*T*s has trivial sigma and branchwise images that are pure
// translations by elements of the lattice, and T is invariant under every
// holonomy linear part expressed in lattice coordinates.  Returned as a k x k
// nonsingular integer matrix in column HNF.
IntMat tame_sublattice(const CrystalGroup& g, const NMapLift& m, const InducedMorphism& ind);

struct LiftObstruction {
  IntVec gen_coords;      // offending sublattice generator (lattice coordinates)
  RatVec ambient;         // the same generator as an ambient vector
  std::size_t factor = 0; // branch whose image obstructs (or a moved branch)
  std::optional<CanonicalElement> image;  // the obstructing image element
  std::string reason;     // sigma_nontrivial | image_has_holonomy | image_outside_sublattice
};

struct LiftResult {
  bool liftable = true;
  std::optional<LiftObstruction> obstruction;
};

// Whether the map restricts to the finite cover determined by the sublattice
// `sub` of Z^k (lattice coordinates): every generator of sub must have
// trivial sigma and all branch images must be pure translations inside sub.
LiftResult lift_check(const CrystalGroup& g, const NMapLift& m, const InducedMorphism& ind,
                      const IntLattice& sub);

}  // namespace nvmap
