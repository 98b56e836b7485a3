#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nvmap/nmap.hpp"

namespace nvmap {

// One case of the twisted-conjugacy search: the affine family
// gamma(s) = gamma0 * (I, L*T*s), s in Z^k, where T is the tame sublattice.
// All members share the holonomy coset `coset` and, per branch i, the coset
// of the branch image phi_i(gamma(s)).
struct TwistCase {
  std::size_t coset = 0;
  IntVec w0;              // tame-box offset of gamma0 (lattice coordinates)
  AffineElement gamma0;
};

struct TwistSystem {
  IntMat tame;                    // k x k column HNF, nonsingular
  std::vector<TwistCase> cases;   // coset reps of pi / tame translation subgroup
};

TwistSystem build_twist_system(const CrystalGroup& g, const NMapLift& m,
                               const InducedMorphism& ind);

struct EquivResult {
  bool equivalent = false;
  // witness gamma with alpha2 = gamma * alpha1 * phi_i(gamma)^{-1}
  std::optional<CanonicalElement> witness;
};

// Twisted conjugacy of alpha1, alpha2 under tau_gamma(alpha) =
// gamma * alpha * phi_i(gamma)^{-1}, restricted to branch i (requires
// sigma-invariance of i for the acting gamma).  Exact decision; any witness
// returned is re-verified before return.
EquivResult twisted_equivalent(const CrystalGroup& g, const NMapLift& m,
                               const InducedMorphism& ind, std::size_t i,
                               const CanonicalElement& alpha1, const CanonicalElement& alpha2);

struct ReidemeisterClass {
  CanonicalElement rep;
  bool essential = false;  // det != 0; constant on the class
  int index_sign = 0;      // sign of det(I - A_coset * Phi_i)
  Rat det;                 // det(I - A_coset * Phi_i)
};

struct ReidemeisterClassSet {
  std::size_t factor = 0;
  bool infinite = false;
  std::vector<ReidemeisterClass> classes;  // empty when infinite
};

// All twisted conjugacy classes for branch i.  Infinite as soon as any
// holonomy coset c has det(I - A_c * Phi_i) = 0; otherwise the class count is
// finite and every class is listed exactly once with a deterministic rep.
ReidemeisterClassSet enumerate_classes(const CrystalGroup& g, const NMapLift& m,
                                       const InducedMorphism& ind, std::size_t i);

// Reidemeister number of the single-valued affine map with linear part M on
// the torus R^k / lattice, restricted to the finite cover given by `sub`
// (a finite-index sublattice of `lattice`, same ambient dim, M-invariant):
// [lattice : sub] * |det(I - M)| when det != 0, infinite otherwise.
ExtendedCount reidemeister_number_lattice(const RatMat& m, const IntLattice& lattice,
                                          const IntLattice& sub);

struct FixSubgroupResult {
  bool trivial = true;
  // witness: a non-identity gamma with gamma = beta * phi_i(gamma) * beta^{-1}
  std::optional<CanonicalElement> witness;
};

// Whether fix(tau_beta o phi_i) = {gamma : gamma = beta phi_i(gamma) beta^{-1}}
// is trivial.  Requires sigma-invariance of branch i under beta's class.
FixSubgroupResult coincidence_fix(const CrystalGroup& g, const NMapLift& m,
                                  const InducedMorphism& ind, std::size_t i,
                                  const CanonicalElement& beta);

}  // namespace nvmap
