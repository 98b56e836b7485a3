#pragma once

#include "nvmap/matrix.hpp"

#include <optional>
#include <vector>

namespace nvmap {

// A count that is either a non-negative integer or infinite.
struct ExtendedCount {
  bool infinite = false;
  Int value = 0;  // meaningful only when !infinite

  static ExtendedCount finite(Int v) { return {false, std::move(v)}; }
  static ExtendedCount inf() { return {true, 0}; }

  bool operator==(const ExtendedCount& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
  std::string str() const { return infinite ? "inf" : value.get_str(); }
};

// Exact determinant by pivoted rational elimination. Square input required.
Rat det_exact(const RatMat& m);

std::size_t rat_rank(const RatMat& m);

// Inverse of a nonsingular rational matrix; throws IntegrityError if singular.
RatMat rat_inverse(const RatMat& m);

// Basis of the right kernel {x : m x = 0}; empty when trivial.
std::vector<RatVec> rat_kernel(const RatMat& m);

// Column Hermite normal form: h = m * u with u unimodular. h is lower
// echelon by columns: pivots positive, pivot rows strictly increasing,
// entries left of a pivot in its row lie in [0, pivot), zero columns last.
struct HnfResult {
  IntMat h;
  IntMat u;
};
HnfResult hnf(const IntMat& m);

// HNF with zero columns dropped: canonical basis of the column lattice.
IntMat hnf_basis(const IntMat& m);

// Smith normal form invariant factors d_1 | d_2 | ... (non-negative,
// zeros trailing), length min(rows, cols). Transform matrices are not
// produced; callers needing representatives use the HNF instead.
std::vector<Int> snf(const IntMat& m);

// Basis of the integer kernel {x in Z^cols : m x = 0}, as matrix columns.
IntMat int_kernel(const IntMat& m);

// Number of elements of Z^rows / (m Z^cols); infinite when rank < rows.
ExtendedCount cokernel_count(const IntMat& m);

// Canonical residue of v modulo the columns of a square nonsingular lower
// triangular HNF matrix h: the unique representative with 0 <= r_i < h(i,i).
IntVec box_reduce(const IntMat& h, IntVec v);

// All canonical residues modulo a square nonsingular matrix w, ordered
// lexicographically. Throws if the count exceeds cap.
std::vector<IntVec> cokernel_reps(const IntMat& w, unsigned long cap);

// Decides a x + b t = v with x rational and t integral. Rational unknowns
// are eliminated first; the residual system is solved over Z via HNF.
// The returned witness is re-substituted before being handed out.
struct MixedSolution {
  RatVec x;
  IntVec t;
};
std::optional<MixedSolution> solve_mixed(const RatMat& a, const RatMat& b, const RatVec& v);

struct SublatticeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Full-rank-by-column integer lattice in ambient Q^dim, held in canonical
// column HNF so equal lattices compare equal.
class IntLattice {
 public:
  IntLattice() = default;

  static IntLattice standard(std::size_t dim);
  static IntLattice scaled(std::size_t dim, const Int& f);
  // Lattice generated by the columns of gens (dim x m, any rank).
  static IntLattice from_generators(std::size_t dim, const IntMat& gens);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.cols(); }
  const IntMat& basis() const { return basis_; }

  bool operator==(const IntLattice& o) const { return dim_ == o.dim_ && basis_ == o.basis_; }

  // Integer coordinates of v in this basis, if v lies in the lattice.
  std::optional<IntVec> coords_of(const RatVec& v) const;
  bool contains(const IntLattice& other) const;

 private:
  std::size_t dim_ = 0;
  IntMat basis_;  // dim_ x rank, canonical
};

// [outer : inner]; requires inner contained in outer (error names the first
// offending basis column), infinite when inner has smaller rank.
ExtendedCount lattice_index(const IntLattice& outer, const IntLattice& inner);

IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b);

}  // namespace nvmap
