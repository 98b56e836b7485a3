#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "nvmap/nmap.hpp"

// Hand-checked groups and maps used across the test suite.  Expected Nielsen
// numbers quoted in comments are computed from the averaging formula by hand.
namespace fixtures {

using namespace nvmap;

inline RatMat diag(const std::vector<Rat>& d) {
  RatMat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

inline CrystalGroup torus_group(std::size_t k) {
  CrystalGroup g;
  g.dim = k;
  g.lattice = IntLattice::standard(k);
  g.cosets.push_back(affine_identity(k));
  return g;
}

// Klein bottle: Z^2 plus the glide (x, y) |-> (-x, y + 1/2).
inline CrystalGroup klein_group() {
  CrystalGroup g = torus_group(2);
  g.cosets.push_back({diag({-1, 1}), {Rat(0), Rat(1, 2)}});
  return g;
}

// Two branches x |-> diag(0, q/2)x and x |-> diag(0, q/2)x + (0, -1/4); q odd.
// Nielsen number |2-q|.
inline NMapLift klein_half_map(long q) {
  NMapLift m;
  m.n = 2;
  RatMat phi = diag({Rat(0), Rat(q, 2)});
  m.factors.push_back({phi, {Rat(0), Rat(0)}});
  m.factors.push_back({phi, {Rat(0), Rat(-1, 4)}});
  return m;
}

inline NMapLift klein_map_reference() { return klein_half_map(1); }  // Nielsen 1

// Two branches sharing phi = diag(p, q), q odd, offset by (1/2, 0); the glide
// fixes each branch.  Nielsen number |1-q| (|1-p| + |1+p|); at p = +-1 one
// holonomy coset degenerates while the map stays valid.
inline NMapLift klein_pair_map(long p, long q) {
  NMapLift m;
  m.n = 2;
  RatMat phi = diag({Rat(p), Rat(q)});
  m.factors.push_back({phi, {Rat(0), Rat(0)}});
  m.factors.push_back({phi, {Rat(1, 2), Rat(0)}});
  return m;
}

// Single-valued x |-> diag(p, q)x on the Klein bottle; q odd.
// Nielsen number |1-q| (|1-p| + |1+p|) / 2.
inline NMapLift klein_one_valued(long p, long q) {
  NMapLift m;
  m.n = 1;
  m.factors.push_back({diag({Rat(p), Rat(q)}), {Rat(0), Rat(0)}});
  return m;
}

// Klein bottle x S^1: glide in the first two coordinates.
inline CrystalGroup klein3_group() {
  CrystalGroup g = torus_group(3);
  g.cosets.push_back({diag({-1, 1, 1}), {Rat(0), Rat(1, 2), Rat(0)}});
  return g;
}

// The reference map times x |-> rx on the extra circle.  Nielsen number |1-r|.
inline NMapLift klein3_map(long r) {
  NMapLift m;
  m.n = 2;
  RatMat phi = diag({Rat(0), Rat(1, 2), Rat(r)});
  m.factors.push_back({phi, {Rat(0), Rat(0), Rat(0)}});
  m.factors.push_back({phi, {Rat(0), Rat(-1, 4), Rat(0)}});
  return m;
}

// Paired branches on Klein x S^1: phi = diag(p, 3, r), offset (1/2, 0, 0).
// Nielsen number 2 |1-r| (|1-p| + |1+p|).
inline NMapLift klein3_pair_map(long p, long r) {
  NMapLift m;
  m.n = 2;
  RatMat phi = diag({Rat(p), Rat(3), Rat(r)});
  m.factors.push_back({phi, {Rat(0), Rat(0), Rat(0)}});
  m.factors.push_back({phi, {Rat(1, 2), Rat(0), Rat(0)}});
  return m;
}

// Flat 3-manifold with holonomy rotation by pi in the first two coordinates
// and glide along the third.
inline CrystalGroup dim3_g2_group() {
  CrystalGroup g = torus_group(3);
  g.cosets.push_back({diag({-1, -1, 1}), {Rat(0), Rat(0), Rat(1, 2)}});
  return g;
}

// Nielsen number 1.
inline NMapLift dim3_g2_map() {
  NMapLift m;
  m.n = 2;
  RatMat phi = diag({Rat(0), Rat(0), Rat(1, 2)});
  m.factors.push_back({phi, {Rat(0), Rat(0), Rat(0)}});
  m.factors.push_back({phi, {Rat(0), Rat(0), Rat(-1, 4)}});
  return m;
}

// The reference Klein 2-valued map extended by a third branch
// x |-> diag(0, q3)x + (1/2, 0); q3 odd, q3 != 1.
// Nielsen number 1 + |1 - q3|.
inline NMapLift klein_three_valued(long q3) {
  NMapLift m = klein_map_reference();
  m.n = 3;
  m.factors.push_back({diag({Rat(0), Rat(q3)}), {Rat(1, 2), Rat(0)}});
  return m;
}

// n branches sharing one integer linear part, separated by fractional offsets
// along e_1; branches never collide on the torus.  Nielsen n |det(I - phi)|.
inline NMapLift torus_shared_map(std::size_t n, const IntMat& phi) {
  NMapLift m;
  m.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    RatVec g(phi.rows(), Rat(0));
    Rat offset(static_cast<long>(i), static_cast<long>(n + 1));
    offset.canonicalize();
    g[0] = offset;
    m.factors.push_back({to_rat(phi), g});
  }
  return m;
}

// Branch linear parts genuinely distinct; disjoint because the offset 1/2
// cannot be matched by the integer row difference.  Nielsen 2 + 4 = 6.
inline NMapLift torus_distinct_map() {
  NMapLift m;
  m.n = 2;
  m.factors.push_back({diag({Rat(2), Rat(3)}), {Rat(0), Rat(0)}});
  m.factors.push_back({diag({Rat(2), Rat(5)}), {Rat(1, 2), Rat(0)}});
  return m;
}

// Torus map whose branch set is swapped by the unit translation e_1.
// Nielsen 1.
inline NMapLift torus_halfshift_map() {
  NMapLift m;
  m.n = 2;
  RatMat phi = diag({Rat(1, 2), Rat(2)});
  m.factors.push_back({phi, {Rat(0), Rat(0)}});
  m.factors.push_back({phi, {Rat(1, 2), Rat(0)}});
  return m;
}

// Crystallographic but not torsion free: the point rotation by pi is its own
// inverse, so the group is rejected by validation.
inline CrystalGroup p2_group() {
  CrystalGroup g = torus_group(2);
  g.cosets.push_back({diag({-1, -1}), {Rat(0), Rat(0)}});
  return g;
}

// Branches meet on the quotient: row one of the difference matrix reads
// -x_2 - t_1 = 1/2, solvable over x real, t integer.
inline NMapLift collision_map() {
  NMapLift m;
  m.n = 2;
  RatMat p1 = diag({Rat(2), Rat(3)});
  RatMat p2 = p1;
  p2(0, 1) = 1;
  m.factors.push_back({p1, {Rat(0), Rat(0)}});
  m.factors.push_back({p2, {Rat(1, 2), Rat(0)}});
  return m;
}

inline IntMat random_int_mat(std::mt19937& rng, std::size_t k, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMat m(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) m(r, c) = dist(rng);
  return m;
}

}  // namespace fixtures
