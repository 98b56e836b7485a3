#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nvmap/linalg.hpp"

namespace nvmap {

// Affine self-map x |-> linear*x + translation of Q^k.
struct AffineElement {
  RatMat linear;
  RatVec translation;

  bool operator==(const AffineElement& o) const {
    return linear == o.linear && translation == o.translation;
  }
  bool operator!=(const AffineElement& o) const { return !(*this == o); }
};

AffineElement affine_identity(std::size_t dim);
// compose(f, s) = f after s: x |-> f(s(x)).
AffineElement compose(const AffineElement& f, const AffineElement& s);
AffineElement affine_invert(const AffineElement& e);
RatVec apply(const AffineElement& e, const RatVec& x);

// Crystallographic group given by a translation lattice and one affine
// representative per holonomy coset.  cosets[0] is the identity; the linear
// parts of the reps are pairwise distinct and realize the holonomy group.
struct CrystalGroup {
  std::size_t dim = 0;
  IntLattice lattice;
  std::vector<AffineElement> cosets;
};

// Group element in canonical form: cosets[coset] composed with the pure
// translation by lattice_basis * coords, i.e. (I, L*coords) * rep.
struct CanonicalElement {
  std::size_t coset = 0;
  IntVec coords;

  bool operator==(const CanonicalElement& o) const {
    return coset == o.coset && coords == o.coords;
  }
  bool operator!=(const CanonicalElement& o) const { return !(*this == o); }
};

AffineElement reconstruct(const CrystalGroup& g, const CanonicalElement& e);
// Canonical form of an affine element, or nullopt if it lies outside the group.
std::optional<CanonicalElement> canonicalize(const CrystalGroup& g, const AffineElement& e);

struct GroupIssue {
  std::string code;    // stable machine tag
  std::string detail;  // human-readable specifics
};

struct ValidationReport {
  bool ok = true;
  std::vector<GroupIssue> issues;
};

struct ValidateOptions {
  unsigned long holonomy_order_cap = 1000;
};

// Structural checks: shapes, invertibility, lattice invariance under each
// coset rep, closure of the coset set, distinct linear parts, identity first,
// finite linear-part orders, torsion freeness.
ValidationReport validate_group(const CrystalGroup& g, const ValidateOptions& opt = {});

struct TorsionResult {
  bool torsion_free = true;
  // witness: a finite-order element, as coset index + lattice coords
  std::optional<CanonicalElement> witness;
};

// Decides torsion freeness: coset rep c yields torsion iff
// (I + A_c + ... + A_c^{m-1}) (a_c + L t) = 0 has a solution t in Z^k,
// where m is the order of A_c.
TorsionResult torsion_free_check(const CrystalGroup& g);

// Order of a rational matrix under multiplication, or nullopt if it exceeds
// the cap (or is not of finite order).
std::optional<unsigned long> matrix_order(const RatMat& m, unsigned long cap);

// Coset arithmetic on holonomy classes (indices into g.cosets).
std::size_t coset_mul(const CrystalGroup& g, std::size_t a, std::size_t b);
std::size_t coset_inv(const CrystalGroup& g, std::size_t a);

// Coset representatives of pi / sub' where sub' is the pure-translation
// subgroup L*coords with coords in `sub` (a finite-index sublattice of Z^k,
// given in lattice coordinates).  Errors if sub is not finite-index.
// Size = #cosets * [Z^k : sub].
std::vector<CanonicalElement> holonomy_quotient(const CrystalGroup& g, const IntLattice& sub);

}  // namespace nvmap
