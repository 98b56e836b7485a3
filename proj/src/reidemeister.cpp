#include "nvmap/reidemeister.hpp"

#include <string>

namespace nvmap {

namespace {

struct Dsu {
  std::vector<std::size_t> parent;

  explicit Dsu(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // the smaller root wins, so class representatives are first-seen seeds
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b)
      parent[b] = a;
    else
      parent[a] = b;
  }
};

// Decides alpha2 = gamma * alpha1 * phi_i(gamma)^{-1} for gamma ranging over
// one affine family gamma(s) = gamma0 * (I, L*T*s), s in Z^k.  Returns the
// verified witness when solvable.
std::optional<CanonicalElement> solve_case(const CrystalGroup& g, const NMapLift& m,
                                           const InducedMorphism& ind, const TwistSystem& sys,
                                           std::size_t i, const TwistCase& tc,
                                           const AffineElement& e1, const AffineElement& e2) {
  const std::size_t k = g.dim;
  if (sigma_of(g, ind, {tc.coset, tc.w0})(i) != i) return std::nullopt;
  FactorImage fi = induced_factor(g, m, i, tc.gamma0);
  if (fi.j != i)
    throw IntegrityError("twisted case: branch moves although sigma fixes it");
  AffineElement d0 = reconstruct(g, fi.delta);

  // alpha2 * delta(s) = gamma(s) * alpha1, where gamma(s) and delta(s) share
  // the linear parts of gamma0 and delta0 across the family
  if (e2.linear * d0.linear != tc.gamma0.linear * e1.linear) return std::nullopt;

  RatMat lt = to_rat(g.lattice.basis()) * to_rat(sys.tame);
  RatMat bmat = tc.gamma0.linear * lt - e2.linear * d0.linear * m.factors[i].phi * lt;
  RatVec v = vec_sub(vec_add(e2.linear * d0.translation, e2.translation),
                     vec_add(tc.gamma0.linear * e1.translation, tc.gamma0.translation));
  auto sol = solve_mixed(RatMat(k, 0), bmat, v);
  if (!sol) return std::nullopt;

  // the family composes the tame translation on the right of gamma0
  AffineElement step = affine_identity(k);
  step.translation = lt * to_rat(sol->t);
  AffineElement gam = compose(tc.gamma0, step);
  auto wit = canonicalize(g, gam);
  if (!wit) throw IntegrityError("twisted witness: element leaves the group");
  FactorImage fw = induced_factor(g, m, i, gam);
  if (fw.j != i) throw IntegrityError("twisted witness: branch not fixed");
  AffineElement rhs = compose(compose(gam, e1), affine_invert(reconstruct(g, fw.delta)));
  if (!(rhs == e2)) throw IntegrityError("twisted witness failed re-verification");
  return wit;
}

EquivResult equivalent_in_system(const CrystalGroup& g, const NMapLift& m,
                                 const InducedMorphism& ind, const TwistSystem& sys,
                                 std::size_t i, const CanonicalElement& a1,
                                 const CanonicalElement& a2) {
  AffineElement e1 = reconstruct(g, a1), e2 = reconstruct(g, a2);
  for (const TwistCase& tc : sys.cases) {
    auto wit = solve_case(g, m, ind, sys, i, tc, e1, e2);
    if (wit) return {true, wit};
  }
  return {false, std::nullopt};
}

}  // namespace

TwistSystem build_twist_system(const CrystalGroup& g, const NMapLift& m,
                               const InducedMorphism& ind) {
  TwistSystem sys;
  sys.tame = tame_sublattice(g, m, ind);
  std::vector<IntVec> box = cokernel_reps(sys.tame, 100000);
  for (std::size_t c = 0; c < g.cosets.size(); ++c)
    for (const IntVec& w0 : box) sys.cases.push_back({c, w0, reconstruct(g, {c, w0})});
  return sys;
}

EquivResult twisted_equivalent(const CrystalGroup& g, const NMapLift& m,
                               const InducedMorphism& ind, std::size_t i,
                               const CanonicalElement& alpha1, const CanonicalElement& alpha2) {
  if (i >= m.n) throw DimensionError("twisted_equivalent: branch index out of range");
  TwistSystem sys = build_twist_system(g, m, ind);
  return equivalent_in_system(g, m, ind, sys, i, alpha1, alpha2);
}

ReidemeisterClassSet enumerate_classes(const CrystalGroup& g, const NMapLift& m,
                                       const InducedMorphism& ind, std::size_t i) {
  if (i >= m.n) throw DimensionError("enumerate_classes: branch index out of range");
  ReidemeisterClassSet out;
  out.factor = i;
  const std::size_t k = g.dim;
  RatMat id = RatMat::identity(k);

  std::vector<Rat> dets(g.cosets.size());
  for (std::size_t c = 0; c < g.cosets.size(); ++c) {
    dets[c] = det_exact(id - g.cosets[c].linear * m.factors[i].phi);
    if (dets[c] == 0) {
      out.infinite = true;
      return out;
    }
  }

  TwistSystem sys = build_twist_system(g, m, ind);
  RatMat lat = to_rat(g.lattice.basis());
  RatMat lat_inv = rat_inverse(lat);

  // Seeds: within one holonomy coset, acting by tame translations gamma moves
  // the lattice part by (I - A_c Phi_i) L T s, so coset residues of that
  // sublattice exhaust the classes up to the remaining finite twists.
  std::vector<CanonicalElement> seeds;
  std::vector<Rat> seed_det;
  for (std::size_t c = 0; c < g.cosets.size(); ++c) {
    RatMat wq = lat_inv * (id - g.cosets[c].linear * m.factors[i].phi) * lat * to_rat(sys.tame);
    auto wz = to_int(wq);
    if (!wz) throw IntegrityError("enumerate_classes: twisted translation operator not integral");
    Int prod = 1;
    for (const Int& d : snf(*wz)) prod *= d;
    if (Rat(prod) != rat_abs(det_exact(wq)))
      throw IntegrityError("enumerate_classes: invariant factor product disagrees with det");
    auto reps = cokernel_reps(*wz, 100000);
    if (Int(static_cast<unsigned long>(reps.size())) != prod)
      throw IntegrityError("enumerate_classes: residue count disagrees with invariant factors");
    for (const IntVec& w : reps) {
      seeds.push_back({c, w});
      seed_det.push_back(dets[c]);
    }
  }

  Dsu dsu(seeds.size());
  for (std::size_t p = 0; p < seeds.size(); ++p)
    for (std::size_t q = p + 1; q < seeds.size(); ++q) {
      if (dsu.find(p) == dsu.find(q)) continue;
      EquivResult eq = equivalent_in_system(g, m, ind, sys, i, seeds[p], seeds[q]);
      if (!eq.equivalent) continue;
      if (seed_det[p] != seed_det[q])
        throw IntegrityError("enumerate_classes: determinant not constant on a class");
      dsu.unite(p, q);
    }

  for (std::size_t s = 0; s < seeds.size(); ++s) {
    if (dsu.find(s) != s) continue;
    ReidemeisterClass cls;
    cls.rep = seeds[s];
    cls.det = seed_det[s];
    cls.index_sign = rat_sign(seed_det[s]);
    cls.essential = cls.index_sign != 0;
    out.classes.push_back(std::move(cls));
  }
  return out;
}

ExtendedCount reidemeister_number_lattice(const RatMat& m, const IntLattice& lattice,
                                          const IntLattice& sub) {
  const std::size_t k = lattice.dim();
  if (m.rows() != k || m.cols() != k)
    throw DimensionError("reidemeister_number_lattice: matrix shape");
  if (sub.dim() != k)
    throw DimensionError("reidemeister_number_lattice: ambient dims differ");

  ExtendedCount idx = lattice_index(lattice, sub);
  if (idx.infinite)
    throw SublatticeError("reidemeister_number_lattice: sub must have finite index");

  RatMat ms = m * to_rat(sub.basis());
  for (std::size_t j = 0; j < sub.rank(); ++j) {
    RatVec col(k);
    for (std::size_t r = 0; r < k; ++r) col[r] = ms(r, j);
    if (!lattice.coords_of(col))
      throw SublatticeError("reidemeister_number_lattice: matrix moves sub basis column " +
                            std::to_string(j) + " out of the lattice");
  }

  RatMat id = RatMat::identity(k);
  RatMat b = rat_inverse(to_rat(lattice.basis())) * (id - m) * to_rat(sub.basis());
  if (!to_int(b))
    throw IntegrityError("reidemeister_number_lattice: twisted operator not integral");
  Rat d = det_exact(b);
  if (d == 0) return ExtendedCount::inf();
  Int val = rat_to_int(rat_abs(d));
  if (Rat(idx.value) * rat_abs(det_exact(id - m)) != Rat(val))
    throw IntegrityError("reidemeister_number_lattice: index/determinant cross-check failed");
  return ExtendedCount::finite(val);
}

FixSubgroupResult coincidence_fix(const CrystalGroup& g, const NMapLift& m,
                                  const InducedMorphism& ind, std::size_t i,
                                  const CanonicalElement& beta) {
  if (i >= m.n) throw DimensionError("coincidence_fix: branch index out of range");
  const std::size_t k = g.dim;
  TwistSystem sys = build_twist_system(g, m, ind);
  RatMat lt = to_rat(g.lattice.basis()) * to_rat(sys.tame);
  AffineElement be = reconstruct(g, beta);
  AffineElement binv = affine_invert(be);
  CanonicalElement ident{0, IntVec(k, Int(0))};

  auto family_element = [&](const AffineElement& gamma0, const IntVec& s) {
    AffineElement step = affine_identity(k);
    step.translation = lt * to_rat(s);
    return compose(gamma0, step);
  };
  auto verify = [&](const AffineElement& gam) {
    CanonicalElement wit = canonicalize(g, gam).value();
    if (wit == ident) throw IntegrityError("coincidence_fix: identity offered as witness");
    FactorImage fw = induced_factor(g, m, i, gam);
    if (fw.j != i) throw IntegrityError("coincidence_fix: witness branch not fixed");
    AffineElement rhs = compose(compose(be, reconstruct(g, fw.delta)), binv);
    if (!(rhs == gam)) throw IntegrityError("coincidence_fix: witness failed re-verification");
    return wit;
  };

  for (const TwistCase& tc : sys.cases) {
    if (sigma_of(g, ind, {tc.coset, tc.w0})(i) != i) continue;
    FactorImage fi = induced_factor(g, m, i, tc.gamma0);
    if (fi.j != i) throw IntegrityError("coincidence_fix: branch moves although sigma fixes it");
    AffineElement d0 = reconstruct(g, fi.delta);

    // gamma(s) = beta * phi_i(gamma(s)) * beta^{-1} with
    // gamma(s) = (A_c, A_c L T s + a_g0), phi_i(gamma(s)) = (A_d0, A_d0 Phi_i L T s + a_d0)
    if (be.linear * d0.linear * binv.linear != tc.gamma0.linear) continue;
    RatMat bmat = tc.gamma0.linear * lt - be.linear * d0.linear * m.factors[i].phi * lt;
    RatVec v = vec_sub(
        vec_add(be.linear * d0.translation,
                vec_sub(be.translation, tc.gamma0.linear * be.translation)),
        tc.gamma0.translation);

    if (tc.coset == 0 && vec_is_zero(tc.w0)) {
      // the identity family: s = 0 is the trivial fixed element, so only a
      // kernel direction of the translation operator yields a witness
      if (!vec_is_zero(v))
        throw IntegrityError("coincidence_fix: identity case not homogeneous");
      if (det_exact(bmat) != 0) continue;
      auto ker = rat_kernel(bmat);
      if (ker.empty()) throw IntegrityError("coincidence_fix: singular operator without kernel");
      Int scale = 1;
      for (const Rat& x : ker[0]) scale = int_lcm(scale, rat_den(x));
      IntVec s(k);
      for (std::size_t r = 0; r < k; ++r) s[r] = rat_to_int(ker[0][r] * Rat(scale));
      return {false, verify(family_element(tc.gamma0, s))};
    }

    auto sol = solve_mixed(RatMat(k, 0), bmat, v);
    if (!sol) continue;
    return {false, verify(family_element(tc.gamma0, sol->t))};
  }
  return {true, std::nullopt};
}

}  // namespace nvmap
