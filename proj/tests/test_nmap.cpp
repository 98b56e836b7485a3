#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"

using namespace nvmap;

namespace {

bool has_issue(const std::vector<GroupIssue>& issues, const std::string& code) {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const GroupIssue& i) { return i.code == code; });
}

InducedMorphism induced_of(const CrystalGroup& g, const NMapLift& m) {
  MapValidation v = validate_map(g, m);
  REQUIRE(v.ok);
  REQUIRE(v.induced.has_value());
  return *v.induced;
}

}  // namespace

TEST_CASE("permutations") {
  Permutation id = Permutation::identity(3);
  CHECK(id.is_identity());
  CHECK(id.order() == 1);

  Permutation swap01({1, 0, 2});
  CHECK_FALSE(swap01.is_identity());
  CHECK(swap01.order() == 2);
  CHECK(swap01.inverse() == swap01);

  Permutation cyc({1, 2, 0});
  CHECK(cyc.order() == 3);
  CHECK(cyc.after(cyc).after(cyc) == id);
  CHECK(cyc.after(cyc.inverse()) == id);
  // composition order: (swap01 after cyc)(i) = swap01(cyc(i))
  CHECK(swap01.after(cyc)(1) == 2);
  CHECK(cyc.after(swap01)(1) == 1);
}

TEST_CASE("induced morphism of the reference Klein map") {
  CrystalGroup g = fixtures::klein_group();
  NMapLift m = fixtures::klein_map_reference();
  InducedMorphism ind = induced_of(g, m);

  REQUIRE(ind.lattice_gens.size() == 2);
  REQUIRE(ind.coset_gens.size() == 1);

  // translation by e1 acts trivially: Phi e1 = 0
  CHECK(ind.lattice_gens[0].sigma.is_identity());
  CHECK((ind.lattice_gens[0].phi[0] == CanonicalElement{0, {Int(0), Int(0)}}));
  CHECK((ind.lattice_gens[0].phi[1] == CanonicalElement{0, {Int(0), Int(0)}}));

  // translation by e2 maps to the glide on both branches
  CHECK(ind.lattice_gens[1].sigma.is_identity());
  CHECK((ind.lattice_gens[1].phi[0] == CanonicalElement{1, {Int(0), Int(0)}}));
  CHECK((ind.lattice_gens[1].phi[1] == CanonicalElement{1, {Int(0), Int(0)}}));

  // the glide swaps the branches
  CHECK(ind.coset_gens[0].sigma == Permutation({1, 0}));
  CHECK((ind.coset_gens[0].phi[0] == CanonicalElement{1, {Int(0), Int(0)}}));
  CHECK((ind.coset_gens[0].phi[1] == CanonicalElement{0, {Int(0), Int(0)}}));

  AffineElement b = g.cosets[1];
  FactorImage f0 = induced_factor(g, m, 0, b);
  CHECK(f0.j == 1);
  CHECK((f0.delta == CanonicalElement{1, {Int(0), Int(0)}}));
  FactorImage f1 = induced_factor(g, m, 1, b);
  CHECK(f1.j == 0);
  CHECK((f1.delta == CanonicalElement{0, {Int(0), Int(0)}}));
}

TEST_CASE("sigma of arbitrary elements and orbit data") {
  CrystalGroup g = fixtures::klein_group();
  NMapLift m = fixtures::klein_map_reference();
  InducedMorphism ind = induced_of(g, m);

  CHECK(sigma_of(g, ind, {0, {Int(1), Int(0)}}).is_identity());
  CHECK(sigma_of(g, ind, {0, {Int(0), Int(1)}}).is_identity());
  CHECK(sigma_of(g, ind, {1, {Int(0), Int(0)}}) == Permutation({1, 0}));
  CHECK(sigma_of(g, ind, {1, {Int(3), Int(-2)}}) == Permutation({1, 0}));

  SigmaData sd = sigma_data(g, ind, m.n);
  CHECK(sd.exponent == 2);
  REQUIRE(sd.orbits.size() == 1);
  CHECK((sd.orbits[0] == std::vector<std::size_t>{0, 1}));
  CHECK(sd.orbit_of[0] == 0);
  CHECK(sd.orbit_of[1] == 0);
}

TEST_CASE("factor images satisfy the chain rule") {
  CrystalGroup g = fixtures::klein_group();
  NMapLift m = fixtures::klein_map_reference();

  std::vector<CanonicalElement> sample = {
      {0, {Int(1), Int(0)}},  {0, {Int(0), Int(1)}}, {1, {Int(0), Int(0)}},
      {1, {Int(-1), Int(2)}}, {0, {Int(2), Int(-3)}}};
  for (const CanonicalElement& ce1 : sample)
    for (const CanonicalElement& ce2 : sample) {
      AffineElement g1 = reconstruct(g, ce1);
      AffineElement g2 = reconstruct(g, ce2);
      AffineElement prod = compose(g1, g2);
      for (std::size_t i = 0; i < m.n; ++i) {
        FactorImage whole = induced_factor(g, m, i, prod);
        FactorImage first = induced_factor(g, m, i, g1);
        FactorImage second = induced_factor(g, m, first.j, g2);
        CHECK(whole.j == second.j);
        AffineElement glued =
            compose(reconstruct(g, first.delta), reconstruct(g, second.delta));
        std::optional<CanonicalElement> canon = canonicalize(g, glued);
        REQUIRE(canon.has_value());
        CHECK(whole.delta == *canon);
      }
    }
}

TEST_CASE("map validation accepts the fixture maps") {
  CHECK(validate_map(fixtures::klein_group(), fixtures::klein_half_map(3)).ok);
  CHECK(validate_map(fixtures::klein_group(), fixtures::klein_half_map(-1)).ok);
  CHECK(validate_map(fixtures::klein_group(), fixtures::klein_pair_map(2, 3)).ok);
  CHECK(validate_map(fixtures::klein_group(), fixtures::klein_pair_map(1, 3)).ok);
  CHECK(validate_map(fixtures::klein_group(), fixtures::klein_one_valued(2, 3)).ok);
  CHECK(validate_map(fixtures::klein_group(), fixtures::klein_three_valued(3)).ok);
  CHECK(validate_map(fixtures::klein3_group(), fixtures::klein3_map(2)).ok);
  CHECK(validate_map(fixtures::klein3_group(), fixtures::klein3_pair_map(2, -2)).ok);

  // the same pair offset along the glide axis collides: the half shift
  // doubles to a deck translation through the glide
  MapValidation collide = validate_map(fixtures::klein_group(), [] {
    NMapLift m;
    m.n = 2;
    RatMat phi = fixtures::diag({Rat(2), Rat(2)});
    m.factors.push_back({phi, {Rat(0), Rat(0)}});
    m.factors.push_back({phi, {Rat(0), Rat(1, 2)}});
    return m;
  }());
  CHECK_FALSE(collide.ok);
  CHECK(has_issue(collide.issues, "branch_collision"));
  CHECK(validate_map(fixtures::dim3_g2_group(), fixtures::dim3_g2_map()).ok);
  CHECK(validate_map(fixtures::torus_group(2), fixtures::torus_distinct_map()).ok);
  CHECK(validate_map(fixtures::torus_group(2), fixtures::torus_halfshift_map()).ok);

  // half-integer second axis with a nonzero first entry has no induced image
  // for the second lattice generator
  MapValidation bad = validate_map(fixtures::klein_group(), [] {
    NMapLift m;
    m.n = 2;
    RatMat phi = fixtures::diag({Rat(2), Rat(1, 2)});
    m.factors.push_back({phi, {Rat(0), Rat(0)}});
    m.factors.push_back({phi, {Rat(0), Rat(-1, 4)}});
    return m;
  }());
  CHECK_FALSE(bad.ok);
  CHECK(has_issue(bad.issues, "no_induced_element"));
}

TEST_CASE("map validation rejects colliding branches") {
  MapValidation v = validate_map(fixtures::torus_group(2), fixtures::collision_map());
  CHECK_FALSE(v.ok);
  CHECK(has_issue(v.issues, "branch_collision"));
  CHECK_FALSE(v.induced.has_value());
}

TEST_CASE("map validation rejects maps without induced images") {
  NMapLift m;
  m.n = 1;
  m.factors.push_back({fixtures::diag({Rat(1, 2), Rat(1)}), {Rat(0), Rat(0)}});
  MapValidation v = validate_map(fixtures::torus_group(2), m);
  CHECK_FALSE(v.ok);
  CHECK(has_issue(v.issues, "no_induced_element"));

  NMapLift wrong;
  wrong.n = 2;
  wrong.factors.push_back({RatMat::identity(2), {Rat(0), Rat(0)}});
  MapValidation w = validate_map(fixtures::torus_group(2), wrong);
  CHECK_FALSE(w.ok);
  CHECK(has_issue(w.issues, "factor_count"));
}

TEST_CASE("tame sublattice") {
  CrystalGroup klein = fixtures::klein_group();
  IntMat t = tame_sublattice(klein, fixtures::klein_map_reference(),
                             induced_of(klein, fixtures::klein_map_reference()));
  IntMat expect(2, 2);
  expect(0, 0) = 1;
  expect(1, 1) = 2;
  CHECK(t == expect);

  CrystalGroup torus = fixtures::torus_group(2);
  IntMat phi(2, 2);
  phi(0, 0) = 2;
  phi(1, 1) = 3;
  NMapLift shared = fixtures::torus_shared_map(2, phi);
  CHECK(tame_sublattice(torus, shared, induced_of(torus, shared)) == IntMat::identity(2));

  NMapLift half = fixtures::torus_halfshift_map();
  IntMat th = tame_sublattice(torus, half, induced_of(torus, half));
  IntMat expect_half(2, 2);
  expect_half(0, 0) = 2;
  expect_half(1, 1) = 1;
  CHECK(th == expect_half);
}

TEST_CASE("lift obstruction detection") {
  CrystalGroup klein = fixtures::klein_group();
  NMapLift m = fixtures::klein_map_reference();
  InducedMorphism ind = induced_of(klein, m);

  LiftResult base = lift_check(klein, m, ind, IntLattice::standard(2));
  CHECK_FALSE(base.liftable);
  REQUIRE(base.obstruction.has_value());
  CHECK((base.obstruction->gen_coords == IntVec{Int(0), Int(1)}));
  CHECK((base.obstruction->ambient == RatVec{Rat(0), Rat(1)}));
  CHECK(base.obstruction->reason == "image_has_holonomy");
  REQUIRE(base.obstruction->image.has_value());
  CHECK(base.obstruction->image->coset == 1);

  LiftResult doubled = lift_check(klein, m, ind, IntLattice::scaled(2, 2));
  CHECK_FALSE(doubled.liftable);
  REQUIRE(doubled.obstruction.has_value());
  CHECK(doubled.obstruction->reason == "image_outside_sublattice");

  CrystalGroup torus = fixtures::torus_group(2);
  IntMat phi(2, 2);
  phi(0, 0) = 2;
  phi(1, 1) = 3;
  NMapLift shared = fixtures::torus_shared_map(2, phi);
  InducedMorphism tind = induced_of(torus, shared);
  CHECK(lift_check(torus, shared, tind, IntLattice::standard(2)).liftable);
  CHECK(lift_check(torus, shared, tind, IntLattice::scaled(2, 2)).liftable);
  CHECK(lift_check(torus, shared, tind, IntLattice::scaled(2, 3)).liftable);

  NMapLift half = fixtures::torus_halfshift_map();
  InducedMorphism hind = induced_of(torus, half);
  LiftResult hres = lift_check(torus, half, hind, IntLattice::standard(2));
  CHECK_FALSE(hres.liftable);
  REQUIRE(hres.obstruction.has_value());
  CHECK(hres.obstruction->reason == "sigma_nontrivial");
  CHECK((hres.obstruction->gen_coords == IntVec{Int(1), Int(0)}));
}
