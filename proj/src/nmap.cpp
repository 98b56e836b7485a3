#include "nvmap/nmap.hpp"

#include <string>

namespace nvmap {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

}  // namespace

Permutation::Permutation(std::vector<std::size_t> img) : img_(std::move(img)) {
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t v : img_) {
    if (v >= img_.size() || seen[v]) throw DimensionError("Permutation: not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = i;
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

unsigned long Permutation::order() const {
  Int l = 1;
  std::vector<bool> seen(img_.size(), false);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    unsigned long len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = img_[j];
      ++len;
    }
    l = int_lcm(l, Int(len));
  }
  if (!l.fits_ulong_p()) throw IntegrityError("Permutation::order: overflow");
  return l.get_ui();
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> img(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) img[img_[i]] = i;
  return Permutation(std::move(img));
}

Permutation Permutation::after(const Permutation& other) const {
  if (other.size() != size()) throw DimensionError("Permutation::after: size mismatch");
  std::vector<std::size_t> img(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) img[i] = img_[other.img_[i]];
  return Permutation(std::move(img));
}

namespace {

// All (j, delta) with F_i o gamma = delta o F_j.  Linear part forces
// Phi_i A_gamma = A_delta Phi_j and the translation of delta is then
// determined; group membership does the final filtering.
std::vector<FactorImage> match_factor(const CrystalGroup& g, const NMapLift& m, std::size_t i,
                                      const AffineElement& gamma) {
  std::vector<FactorImage> matches;
  RatMat lin_target = m.factors[i].phi * gamma.linear;
  RatVec tr_base = vec_add(m.factors[i].phi * gamma.translation, m.factors[i].g);
  for (std::size_t j = 0; j < m.n; ++j) {
    for (std::size_t d = 0; d < g.cosets.size(); ++d) {
      if (g.cosets[d].linear * m.factors[j].phi != lin_target) continue;
      RatVec tr = vec_sub(tr_base, g.cosets[d].linear * m.factors[j].g);
      auto can = canonicalize(g, {g.cosets[d].linear, tr});
      if (can) matches.push_back({j, *can});
    }
  }
  return matches;
}

}  // namespace

FactorImage induced_factor(const CrystalGroup& g, const NMapLift& m, std::size_t i,
                           const AffineElement& gamma) {
  auto matches = match_factor(g, m, i, gamma);
  if (matches.size() != 1)
    throw IntegrityError("induced_factor: " + idx(matches.size()) + " matches for branch " +
                         idx(i) + "; run validate_map first");
  return matches[0];
}

MapValidation validate_map(const CrystalGroup& g, const NMapLift& m) {
  MapValidation val;
  auto bad = [&val](const std::string& code, const std::string& detail) {
    val.ok = false;
    val.issues.push_back({code, detail});
  };

  const std::size_t k = g.dim;
  if (m.n == 0 || m.n != m.factors.size()) {
    bad("factor_count", "n = " + idx(m.n) + " but " + idx(m.factors.size()) + " factors given");
    return val;
  }
  for (std::size_t i = 0; i < m.n; ++i)
    if (m.factors[i].phi.rows() != k || m.factors[i].phi.cols() != k ||
        m.factors[i].g.size() != k) {
      bad("factor_shape", "factor " + idx(i) + " has wrong shape");
      return val;
    }

  RatMat lat = to_rat(g.lattice.basis());

  std::vector<std::pair<std::string, AffineElement>> gens;
  for (std::size_t j = 0; j < k; ++j) {
    RatVec col(k);
    for (std::size_t r = 0; r < k; ++r) col[r] = lat(r, j);
    gens.emplace_back("lattice generator " + idx(j), AffineElement{RatMat::identity(k), col});
  }
  for (std::size_t c = 1; c < g.cosets.size(); ++c)
    gens.emplace_back("coset " + idx(c) + " generator", g.cosets[c]);

  InducedMorphism ind;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const auto& [desc, gamma] = gens[gi];
    GeneratorImage image;
    image.phi.resize(m.n);
    std::vector<std::size_t> sigma_inv(m.n);
    bool gen_ok = true;
    for (std::size_t i = 0; i < m.n; ++i) {
      auto matches = match_factor(g, m, i, gamma);
      if (matches.empty()) {
        bad("no_induced_element", desc + ", branch " + idx(i) +
                                      ": no group element completes the diagram; the map does "
                                      "not descend to the quotient");
        gen_ok = false;
        continue;
      }
      if (matches.size() > 1) {
        bad("ambiguous_induced", desc + ", branch " + idx(i) + ": " + idx(matches.size()) +
                                     " group elements complete the diagram");
        gen_ok = false;
        continue;
      }
      sigma_inv[i] = matches[0].j;
      image.phi[i] = matches[0].delta;
    }
    if (!gen_ok) continue;
    {
      std::vector<bool> seen(m.n, false);
      bool bij = true;
      for (std::size_t v : sigma_inv) {
        if (seen[v]) {
          bij = false;
          break;
        }
        seen[v] = true;
      }
      if (!bij) {
        bad("non_permutation", desc + ": branch assignment is not a bijection");
        continue;
      }
    }
    image.sigma = Permutation(sigma_inv).inverse();
    if (gi < k)
      ind.lattice_gens.push_back(std::move(image));
    else
      ind.coset_gens.push_back(std::move(image));
  }

  // branch disjointness on the quotient: F_i(x) = gamma F_j(x) must have no
  // solution for i != j and any gamma
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = i + 1; j < m.n; ++j)
      for (std::size_t c = 0; c < g.cosets.size(); ++c) {
        RatMat a = m.factors[i].phi - g.cosets[c].linear * m.factors[j].phi;
        RatVec v = vec_add(g.cosets[c].translation,
                           vec_sub(g.cosets[c].linear * m.factors[j].g, m.factors[i].g));
        auto sol = solve_mixed(a, lat, v);
        if (sol)
          bad("branch_collision", "branches " + idx(i) + " and " + idx(j) +
                                      " meet on the quotient (coset " + idx(c) + ", x = " +
                                      vec_str(sol->x) + ")");
      }

  if (val.ok) val.induced = std::move(ind);
  return val;
}

Permutation sigma_of(const CrystalGroup& g, const InducedMorphism& ind,
                     const CanonicalElement& e) {
  if (ind.lattice_gens.size() != g.dim)
    throw DimensionError("sigma_of: induced morphism does not match the group");
  const std::size_t n = ind.lattice_gens.empty() ? 1 : ind.lattice_gens[0].sigma.size();
  Permutation s = e.coset == 0 ? Permutation::identity(n) : ind.coset_gens.at(e.coset - 1).sigma;
  for (std::size_t mm = 0; mm < g.dim; ++mm) {
    const Permutation& sm = ind.lattice_gens[mm].sigma;
    unsigned long ord = sm.order();
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), e.coords.at(mm).get_mpz_t(), Int(ord).get_mpz_t());
    for (unsigned long t = 0; t < r.get_ui(); ++t) s = sm.after(s);
  }
  return s;
}

SigmaData sigma_data(const CrystalGroup& g, const InducedMorphism& ind, std::size_t n) {
  SigmaData sd;
  std::vector<const Permutation*> gens;
  for (const auto& gi : ind.lattice_gens) gens.push_back(&gi.sigma);
  for (const auto& gi : ind.coset_gens) gens.push_back(&gi.sigma);
  Int e = 1;
  for (const Permutation* p : gens) e = int_lcm(e, Int(p->order()));
  if (!e.fits_ulong_p()) throw IntegrityError("sigma_data: exponent overflow");
  sd.exponent = e.get_ui();
  (void)g;

  sd.orbit_of.assign(n, n);
  for (std::size_t start = 0; start < n; ++start) {
    if (sd.orbit_of[start] != n) continue;
    std::vector<std::size_t> orbit{start};
    sd.orbit_of[start] = sd.orbits.size();
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (const Permutation* p : gens) {
        std::size_t img = (*p)(orbit[head]);
        if (sd.orbit_of[img] == n) {
          sd.orbit_of[img] = sd.orbits.size();
          orbit.push_back(img);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    sd.orbits.push_back(std::move(orbit));
  }
  return sd;
}

namespace {

// Image of a pure translation in the finite group S_n x| H^n that controls
// sigma and the holonomy cosets of the branch images.
struct WreathElem {
  Permutation sigma;
  std::vector<std::size_t> coset;

  bool operator==(const WreathElem& o) const { return sigma == o.sigma && coset == o.coset; }
};

WreathElem wreath_identity(std::size_t n) {
  return {Permutation::identity(n), std::vector<std::size_t>(n, 0)};
}

// element of u + v from elements of u and v: sigma multiplies, and
// phi_{u+v,i} = phi_{u,i} * phi_{v,sigma_u^{-1}(i)}
WreathElem wreath_mul(const CrystalGroup& g, const WreathElem& a, const WreathElem& b) {
  WreathElem r;
  r.sigma = a.sigma.after(b.sigma);
  Permutation ainv = a.sigma.inverse();
  r.coset.resize(a.coset.size());
  for (std::size_t i = 0; i < a.coset.size(); ++i)
    r.coset[i] = coset_mul(g, a.coset[i], b.coset[ainv(i)]);
  return r;
}

}  // namespace

IntMat tame_sublattice(const CrystalGroup& g, const NMapLift& m, const InducedMorphism& ind) {
  const std::size_t k = g.dim, n = m.n;
  std::vector<std::vector<WreathElem>> powers(k);  // powers[mm][e] = gen_mm^e
  Int total = 1;
  for (std::size_t mm = 0; mm < k; ++mm) {
    WreathElem gen;
    gen.sigma = ind.lattice_gens.at(mm).sigma;
    gen.coset.resize(n);
    for (std::size_t i = 0; i < n; ++i) gen.coset[i] = ind.lattice_gens[mm].phi[i].coset;
    WreathElem p = wreath_identity(n);
    powers[mm].push_back(p);
    while (true) {
      p = wreath_mul(g, p, gen);
      if (p == powers[mm][0]) break;
      powers[mm].push_back(p);
      if (powers[mm].size() > 1000000)
        throw IntegrityError("tame_sublattice: generator order blow-up");
    }
    total *= static_cast<unsigned long>(powers[mm].size());
  }
  if (total > 1000000) throw IntegrityError("tame_sublattice: case explosion");

  // kernel of Z^k -> wreath group: box residues that map to the identity,
  // plus the order multiples of the unit vectors
  std::vector<IntVec> kernel_gens;
  for (std::size_t mm = 0; mm < k; ++mm) {
    IntVec v(k, Int(0));
    v[mm] = static_cast<unsigned long>(powers[mm].size());
    kernel_gens.push_back(std::move(v));
  }
  std::vector<std::size_t> u(k, 0);
  while (true) {
    WreathElem e = wreath_identity(n);
    for (std::size_t mm = 0; mm < k; ++mm)
      if (u[mm]) e = wreath_mul(g, e, powers[mm][u[mm]]);
    if (e == wreath_identity(n)) {
      IntVec v(k);
      for (std::size_t mm = 0; mm < k; ++mm) v[mm] = static_cast<unsigned long>(u[mm]);
      kernel_gens.push_back(std::move(v));
    }
    std::size_t mm = k;
    while (mm > 0) {
      --mm;
      if (++u[mm] < powers[mm].size()) break;
      u[mm] = 0;
      if (mm == 0) {
        mm = k + 1;
        break;
      }
    }
    if (mm == k + 1 || k == 0) break;
  }

  IntMat gens_mat(k, kernel_gens.size());
  for (std::size_t c = 0; c < kernel_gens.size(); ++c)
    for (std::size_t r = 0; r < k; ++r) gens_mat(r, c) = kernel_gens[c][r];
  IntLattice tame = IntLattice::from_generators(k, gens_mat);
  if (tame.rank() != k) throw IntegrityError("tame_sublattice: rank drop");

  // shrink to the largest holonomy-invariant sublattice: intersect the images
  // under every holonomy matrix in lattice coordinates
  RatMat lat = to_rat(g.lattice.basis());
  RatMat lat_inv = rat_inverse(lat);
  IntLattice result = tame;
  for (std::size_t c = 1; c < g.cosets.size(); ++c) {
    auto uc = to_int(lat_inv * g.cosets[c].linear * lat);
    if (!uc) throw IntegrityError("tame_sublattice: holonomy not integral in lattice coords");
    result = lattice_intersect(result, IntLattice::from_generators(k, *uc * tame.basis()));
  }
  if (result.rank() != k) throw IntegrityError("tame_sublattice: invariant rank drop");
  return result.basis();
}

LiftResult lift_check(const CrystalGroup& g, const NMapLift& m, const InducedMorphism& ind,
                      const IntLattice& sub) {
  const std::size_t k = g.dim;
  if (sub.dim() != k) throw SublatticeError("lift_check: sublattice ambient dimension mismatch");
  if (sub.rank() != k)
    throw SublatticeError("lift_check: sublattice must have finite index (full rank)");
  RatMat lat = to_rat(g.lattice.basis());
  for (std::size_t j = 0; j < k; ++j) {
    IntVec gen(k);
    for (std::size_t r = 0; r < k; ++r) gen[r] = sub.basis()(r, j);
    RatVec ambient = lat * to_rat(gen);
    CanonicalElement e{0, gen};
    Permutation sig = sigma_of(g, ind, e);
    if (!sig.is_identity()) {
      std::size_t moved = 0;
      while (sig(moved) == moved) ++moved;
      return {false, LiftObstruction{gen, ambient, moved, std::nullopt, "sigma_nontrivial"}};
    }
    AffineElement gamma = reconstruct(g, e);
    for (std::size_t i = 0; i < m.n; ++i) {
      FactorImage fi = induced_factor(g, m, i, gamma);
      if (fi.delta.coset != 0)
        return {false, LiftObstruction{gen, ambient, i, fi.delta, "image_has_holonomy"}};
      if (!sub.coords_of(to_rat(fi.delta.coords)))
        return {false, LiftObstruction{gen, ambient, i, fi.delta, "image_outside_sublattice"}};
    }
  }
  return {true, std::nullopt};
}

}  // namespace nvmap
