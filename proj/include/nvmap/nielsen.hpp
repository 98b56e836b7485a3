#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nvmap/reidemeister.hpp"

namespace nvmap {

enum class NielsenMethod { Averaging, Classes, Both };

// The averaging sum failed to clear its denominator: the inputs cannot be a
// valid group/map pair.  Surfaced, never rounded.
struct IntegralityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A factor mixes degenerate and nondegenerate holonomy cosets, so the class
// route cannot enumerate its essential classes; the averaging route can.
struct MixedDegeneracy : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NielsenReport {
  Int value;
  NielsenMethod method = NielsenMethod::Averaging;
  std::size_t quotient_size = 0;                 // averaging: #reps of pi / sub'
  std::vector<std::vector<Rat>> det_table;       // averaging: |det(I-A_rep Phi_i)| per (rep, i)
  std::vector<ExtendedCount> class_counts;       // classes: essential count per factor
  bool agreement = true;                         // Both: the two routes agree
};

// Averaging formula over the quotient by the translation subgroup L*sub
// (`sub` in lattice coordinates; any finite-index sublattice is admissible
// and the value is independent of the choice):
//   N = (1/#reps) * sum over reps alpha, branches i of |det(I - A_alpha Phi_i)|.
// The sum is asserted to be divisible by #reps.
NielsenReport nielsen_averaging(const CrystalGroup& g, const NMapLift& m, const IntLattice& sub);

// Matrix-level averaging sum without the integrality assertion: mean over
// the given linear parts of sum_i |det(I - C * Phi_i)|.
Rat nielsen_raw(const std::vector<RatMat>& coset_linears, const std::vector<RatMat>& factor_linears);

// Class route: per sigma-orbit of branches, enumerate twisted classes on one
// branch and weight by 1/orbit size.  Branches whose cosets are all
// degenerate contribute 0; mixed degeneracy is rejected with an error.
NielsenReport nielsen_via_classes(const CrystalGroup& g, const NMapLift& m,
                                  const InducedMorphism& ind);

// Local index of the fixed-point class of branch i twisted by beta:
// sign of det(I - A_{beta.coset} * Phi_i), in {-1, 0, +1}.
int fixed_point_index(const CrystalGroup& g, const NMapLift& m, std::size_t i,
                      const CanonicalElement& beta);

struct NoEigenvalueOne : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A displacement g0 such that phi*x + (g + g0) = x has no solution; exists
// iff det(I - phi) = 0 (otherwise throws NoEigenvalueOne).  The returned
// vector is verified against the full lattice-translate system.
RatVec find_displacement(const RatMat& phi, const RatVec& gvec);

struct RawFixSolution {
  std::size_t factor = 0;
  std::size_t coset = 0;
  IntVec t;        // lattice translate (lattice coordinates)
  RatVec x;        // solution point in the unit cell, components in [0, 1)
};

struct DegenerateBranch {
  std::size_t factor = 0;
  std::size_t coset = 0;
  std::size_t rank = 0;      // rank of I - A_c Phi_i
  bool solutions_exist = false;
};

struct FixedPointReport {
  std::vector<RawFixSolution> raw;      // all (branch, coset, translate) solutions
  std::vector<RatVec> points;           // manifold fixed points, canonical reps, deduped
  std::vector<DegenerateBranch> degenerate;
};

// Geometric fixed points of the n-valued map on the quotient: solves
// x in F_i(x) branch by branch over the unit cell of the lattice.
FixedPointReport fixpoint_enumerate(const CrystalGroup& g, const NMapLift& m);

}  // namespace nvmap
