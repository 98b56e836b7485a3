#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"

using namespace nvmap;

namespace {

bool has_issue(const std::vector<GroupIssue>& issues, const std::string& code) {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const GroupIssue& i) { return i.code == code; });
}

}  // namespace

TEST_CASE("affine arithmetic") {
  AffineElement b{fixtures::diag({-1, 1}), {Rat(0), Rat(1, 2)}};
  AffineElement b2 = compose(b, b);
  CHECK(b2.linear == RatMat::identity(2));
  CHECK((b2.translation == RatVec{Rat(0), Rat(1)}));

  AffineElement inv = affine_invert(b);
  CHECK(compose(b, inv) == affine_identity(2));
  CHECK(compose(inv, b) == affine_identity(2));

  CHECK((apply(b, {Rat(1, 3), Rat(1, 4)}) == RatVec{Rat(-1, 3), Rat(3, 4)}));
}

TEST_CASE("canonical form round trip") {
  CrystalGroup g = fixtures::klein_group();
  for (std::size_t c = 0; c < 2; ++c)
    for (long u = -2; u <= 2; ++u)
      for (long v = -2; v <= 2; ++v) {
        CanonicalElement e{c, {Int(u), Int(v)}};
        std::optional<CanonicalElement> back = canonicalize(g, reconstruct(g, e));
        REQUIRE(back.has_value());
        CHECK(*back == e);
      }

  // not in the group: fractional translation
  AffineElement alien{RatMat::identity(2), {Rat(1, 3), Rat(0)}};
  CHECK_FALSE(canonicalize(g, alien).has_value());
  // not in the group: unknown linear part
  AffineElement rot{fixtures::diag({1, -1}), {Rat(0), Rat(0)}};
  CHECK_FALSE(canonicalize(g, rot).has_value());
}

TEST_CASE("group validation accepts the shipped groups") {
  CHECK(validate_group(fixtures::torus_group(2)).ok);
  CHECK(validate_group(fixtures::torus_group(3)).ok);
  CHECK(validate_group(fixtures::klein_group()).ok);
  CHECK(validate_group(fixtures::klein3_group()).ok);
  CHECK(validate_group(fixtures::dim3_g2_group()).ok);
}

TEST_CASE("group validation rejects torsion with a witness") {
  CrystalGroup p2 = fixtures::p2_group();
  ValidationReport r = validate_group(p2);
  CHECK_FALSE(r.ok);
  CHECK(has_issue(r.issues, "torsion"));

  TorsionResult t = torsion_free_check(p2);
  CHECK_FALSE(t.torsion_free);
  REQUIRE(t.witness.has_value());
  AffineElement w = reconstruct(p2, *t.witness);
  CHECK(w.linear != RatMat::identity(2));
  CHECK(compose(w, w) == affine_identity(2));
}

TEST_CASE("group validation pinpoints structural defects") {
  CrystalGroup dup = fixtures::torus_group(2);
  dup.cosets.push_back({RatMat::identity(2), {Rat(0), Rat(1, 2)}});
  ValidationReport rd = validate_group(dup);
  CHECK_FALSE(rd.ok);
  CHECK(has_issue(rd.issues, "duplicate_linear"));

  CrystalGroup open_group = fixtures::torus_group(2);
  RatMat r90(2, 2);
  r90(0, 1) = -1;
  r90(1, 0) = 1;
  open_group.cosets.push_back({r90, {Rat(0), Rat(0)}});
  ValidationReport rc = validate_group(open_group);
  CHECK_FALSE(rc.ok);
  CHECK(has_issue(rc.issues, "coset_closure"));

  CrystalGroup skew = fixtures::torus_group(2);
  RatMat offdiag(2, 2);
  offdiag(0, 1) = Rat(1, 2);
  offdiag(1, 0) = 2;
  skew.cosets.push_back({offdiag, {Rat(0), Rat(0)}});
  ValidationReport ri = validate_group(skew);
  CHECK_FALSE(ri.ok);
  CHECK(has_issue(ri.issues, "lattice_invariance"));

  CrystalGroup unbounded = fixtures::torus_group(2);
  RatMat shear = RatMat::identity(2);
  shear(0, 1) = 1;
  unbounded.cosets.push_back({shear, {Rat(0), Rat(0)}});
  CHECK(has_issue(validate_group(unbounded).issues, "holonomy_order"));

  CrystalGroup headless = fixtures::klein_group();
  std::swap(headless.cosets[0], headless.cosets[1]);
  CHECK(has_issue(validate_group(headless).issues, "identity_first"));
}

TEST_CASE("matrix order") {
  RatMat r90(2, 2);
  r90(0, 1) = -1;
  r90(1, 0) = 1;
  CHECK(matrix_order(r90, 100) == 4);
  CHECK(matrix_order(RatMat::identity(3), 100) == 1);
  RatMat shear = RatMat::identity(2);
  shear(0, 1) = 1;
  CHECK_FALSE(matrix_order(shear, 100).has_value());
}

TEST_CASE("coset arithmetic") {
  CrystalGroup g = fixtures::klein_group();
  CHECK(coset_mul(g, 0, 1) == 1);
  CHECK(coset_mul(g, 1, 1) == 0);
  CHECK(coset_inv(g, 1) == 1);
  CHECK(coset_inv(g, 0) == 0);
}

TEST_CASE("holonomy quotient enumeration") {
  CrystalGroup g = fixtures::klein_group();
  std::vector<CanonicalElement> q1 = holonomy_quotient(g, IntLattice::standard(2));
  CHECK(q1.size() == 2);

  std::vector<CanonicalElement> q2 = holonomy_quotient(g, IntLattice::scaled(2, 2));
  CHECK(q2.size() == 8);
  for (std::size_t i = 0; i < q2.size(); ++i)
    for (std::size_t j = i + 1; j < q2.size(); ++j) CHECK(q2[i] != q2[j]);

  IntMat half(2, 2);
  half(0, 0) = 1;
  half(1, 1) = 2;
  std::vector<CanonicalElement> q3 =
      holonomy_quotient(g, IntLattice::from_generators(2, half));
  CHECK(q3.size() == 4);

  // sublattice not invariant under the glide linear part
  IntMat skew(2, 2);
  skew(0, 0) = 1;
  skew(1, 0) = 1;
  skew(1, 1) = 3;
  CHECK_THROWS_AS(holonomy_quotient(g, IntLattice::from_generators(2, skew)),
                  SublatticeError);

  // rank-deficient sublattice
  IntMat thin(2, 1);
  thin(0, 0) = 1;
  CHECK_THROWS_AS(holonomy_quotient(g, IntLattice::from_generators(2, thin)),
                  SublatticeError);
}
