#include "nvmap/group.hpp"

#include <string>

namespace nvmap {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

}  // namespace

AffineElement affine_identity(std::size_t dim) {
  return {RatMat::identity(dim), RatVec(dim, Rat(0))};
}

AffineElement compose(const AffineElement& f, const AffineElement& s) {
  return {f.linear * s.linear, vec_add(f.linear * s.translation, f.translation)};
}

AffineElement affine_invert(const AffineElement& e) {
  RatMat inv = rat_inverse(e.linear);
  return {inv, vec_neg(inv * e.translation)};
}

RatVec apply(const AffineElement& e, const RatVec& x) {
  return vec_add(e.linear * x, e.translation);
}

AffineElement reconstruct(const CrystalGroup& g, const CanonicalElement& e) {
  if (e.coset >= g.cosets.size()) throw DimensionError("reconstruct: coset index out of range");
  const AffineElement& rep = g.cosets[e.coset];
  RatVec shift = to_rat(g.lattice.basis()) * to_rat(e.coords);
  return {rep.linear, vec_add(rep.translation, shift)};
}

std::optional<CanonicalElement> canonicalize(const CrystalGroup& g, const AffineElement& e) {
  for (std::size_t c = 0; c < g.cosets.size(); ++c) {
    if (g.cosets[c].linear != e.linear) continue;
    RatVec d = vec_sub(e.translation, g.cosets[c].translation);
    auto coords = g.lattice.coords_of(d);
    if (!coords) return std::nullopt;
    return CanonicalElement{c, *coords};
  }
  return std::nullopt;
}

std::optional<unsigned long> matrix_order(const RatMat& m, unsigned long cap) {
  if (m.rows() != m.cols()) throw DimensionError("matrix_order: square matrix required");
  RatMat id = RatMat::identity(m.rows());
  RatMat p = m;
  for (unsigned long k = 1; k <= cap; ++k) {
    if (p == id) return k;
    p = p * m;
  }
  return std::nullopt;
}

std::size_t coset_mul(const CrystalGroup& g, std::size_t a, std::size_t b) {
  RatMat prod = g.cosets.at(a).linear * g.cosets.at(b).linear;
  for (std::size_t c = 0; c < g.cosets.size(); ++c)
    if (g.cosets[c].linear == prod) return c;
  throw IntegrityError("coset_mul: product of cosets " + idx(a) + ", " + idx(b) +
                       " leaves the holonomy set");
}

std::size_t coset_inv(const CrystalGroup& g, std::size_t a) {
  RatMat inv = rat_inverse(g.cosets.at(a).linear);
  for (std::size_t c = 0; c < g.cosets.size(); ++c)
    if (g.cosets[c].linear == inv) return c;
  throw IntegrityError("coset_inv: inverse of coset " + idx(a) + " leaves the holonomy set");
}

TorsionResult torsion_free_check(const CrystalGroup& g) {
  const std::size_t k = g.dim;
  RatMat lat = to_rat(g.lattice.basis());
  for (std::size_t c = 1; c < g.cosets.size(); ++c) {
    const AffineElement& rep = g.cosets[c];
    auto ord = matrix_order(rep.linear, 1000000);
    if (!ord) throw IntegrityError("torsion_free_check: coset " + idx(c) + " has unbounded order");
    // (A, a_c + L t)^ord = (I, S (a_c + L t)) with S = sum of powers of A;
    // the element is torsion iff that translation vanishes for some t.
    RatMat s(k, k);
    RatMat p = RatMat::identity(k);
    for (unsigned long j = 0; j < *ord; ++j) {
      s = s + p;
      p = p * rep.linear;
    }
    auto sol = solve_mixed(RatMat(k, 0), s * lat, vec_neg(s * rep.translation));
    if (sol) {
      return {false, CanonicalElement{c, sol->t}};
    }
  }
  return {true, std::nullopt};
}

ValidationReport validate_group(const CrystalGroup& g, const ValidateOptions& opt) {
  ValidationReport rep;
  auto bad = [&rep](const std::string& code, const std::string& detail) {
    rep.ok = false;
    rep.issues.push_back({code, detail});
  };

  const std::size_t k = g.dim;
  if (k == 0) {
    bad("dimension", "dimension must be positive");
    return rep;
  }
  if (g.lattice.dim() != k) {
    bad("lattice_dim", "lattice ambient dimension " + idx(g.lattice.dim()) +
                           " does not match group dimension " + idx(k));
    return rep;
  }
  if (g.lattice.rank() != k) {
    bad("lattice_rank", "translation lattice has rank " + idx(g.lattice.rank()) +
                            ", must span all of Q^" + idx(k));
    return rep;
  }
  if (g.cosets.empty()) {
    bad("no_cosets", "at least the identity coset is required");
    return rep;
  }
  for (std::size_t c = 0; c < g.cosets.size(); ++c) {
    const AffineElement& e = g.cosets[c];
    if (e.linear.rows() != k || e.linear.cols() != k || e.translation.size() != k) {
      bad("rep_shape", "coset " + idx(c) + " has wrong shape");
      return rep;
    }
  }
  if (g.cosets[0] != affine_identity(k)) {
    bad("identity_first", "cosets[0] must be the identity element");
    return rep;
  }

  for (std::size_t c = 0; c < g.cosets.size(); ++c) {
    if (det_exact(g.cosets[c].linear) == 0) {
      bad("rep_singular", "coset " + idx(c) + " has singular linear part");
      return rep;
    }
  }
  for (std::size_t a = 0; a < g.cosets.size(); ++a)
    for (std::size_t b = a + 1; b < g.cosets.size(); ++b)
      if (g.cosets[a].linear == g.cosets[b].linear)
        bad("duplicate_linear", "cosets " + idx(a) + " and " + idx(b) +
                                    " share a linear part; coset reps must be one per "
                                    "holonomy class (sublattices of the translation "
                                    "subgroup belong in a quotient argument instead)");
  if (!rep.ok) return rep;

  RatMat lat = to_rat(g.lattice.basis());
  for (std::size_t c = 1; c < g.cosets.size(); ++c) {
    if (!matrix_order(g.cosets[c].linear, opt.holonomy_order_cap)) {
      bad("holonomy_order", "coset " + idx(c) + " linear part order exceeds cap " +
                                std::to_string(opt.holonomy_order_cap));
      return rep;
    }
    RatMat img = g.cosets[c].linear * lat;
    for (std::size_t j = 0; j < k; ++j) {
      RatVec col(k);
      for (std::size_t i = 0; i < k; ++i) col[i] = img(i, j);
      if (!g.lattice.coords_of(col)) {
        bad("lattice_invariance", "coset " + idx(c) + " linear part moves lattice basis column " +
                                      idx(j) + " out of the lattice");
        break;
      }
    }
  }
  if (!rep.ok) return rep;

  for (std::size_t a = 0; a < g.cosets.size(); ++a)
    for (std::size_t b = 0; b < g.cosets.size(); ++b) {
      AffineElement prod = compose(g.cosets[a], g.cosets[b]);
      std::size_t c = g.cosets.size();
      for (std::size_t cc = 0; cc < g.cosets.size(); ++cc)
        if (g.cosets[cc].linear == prod.linear) {
          c = cc;
          break;
        }
      if (c == g.cosets.size()) {
        bad("coset_closure", "product of cosets " + idx(a) + ", " + idx(b) +
                                 " has a linear part outside the holonomy set");
        continue;
      }
      RatVec d = vec_sub(prod.translation, g.cosets[c].translation);
      if (!g.lattice.coords_of(d))
        bad("coset_translation", "product of cosets " + idx(a) + ", " + idx(b) +
                                     " differs from coset " + idx(c) +
                                     " by a non-lattice translation");
    }
  if (!rep.ok) return rep;

  TorsionResult tf = torsion_free_check(g);
  if (!tf.torsion_free)
    bad("torsion", "group has torsion: coset " + idx(tf.witness->coset) +
                       " with lattice coords " + vec_str(tf.witness->coords));
  return rep;
}

std::vector<CanonicalElement> holonomy_quotient(const CrystalGroup& g, const IntLattice& sub) {
  const std::size_t k = g.dim;
  if (sub.dim() != k)
    throw SublatticeError("holonomy_quotient: sublattice ambient dimension " + idx(sub.dim()) +
                          " does not match group dimension " + idx(k));
  if (sub.rank() != k)
    throw SublatticeError("holonomy_quotient: sublattice has rank " + idx(sub.rank()) +
                          ", finite index requires full rank " + idx(k));
  RatMat lat = to_rat(g.lattice.basis());
  RatMat lat_inv = rat_inverse(lat);
  for (std::size_t c = 1; c < g.cosets.size(); ++c) {
    // holonomy in lattice coordinates must preserve sub, else the covering
    // translation subgroup fails to be normal
    RatMat u = lat_inv * g.cosets[c].linear * lat;
    RatMat img = u * to_rat(sub.basis());
    for (std::size_t j = 0; j < sub.rank(); ++j) {
      RatVec col(k);
      for (std::size_t i = 0; i < k; ++i) col[i] = img(i, j);
      auto coords = sub.coords_of(col);
      if (!coords)
        throw SublatticeError("holonomy_quotient: sublattice is not invariant under coset " +
                              idx(c) + " (basis column " + idx(j) + ")");
    }
  }
  std::vector<IntVec> box = cokernel_reps(sub.basis(), 1000000);
  std::vector<CanonicalElement> reps;
  reps.reserve(g.cosets.size() * box.size());
  for (std::size_t c = 0; c < g.cosets.size(); ++c)
    for (const IntVec& w : box) reps.push_back({c, w});
  return reps;
}

}  // namespace nvmap
