#include "nvmap/nielsen.hpp"

#include <algorithm>
#include <string>

namespace nvmap {

Rat nielsen_raw(const std::vector<RatMat>& coset_linears,
                const std::vector<RatMat>& factor_linears) {
  if (coset_linears.empty()) throw DimensionError("nielsen_raw: empty coset list");
  const std::size_t k = coset_linears[0].rows();
  for (const RatMat& c : coset_linears)
    if (c.rows() != k || c.cols() != k) throw DimensionError("nielsen_raw: matrix shapes differ");
  for (const RatMat& f : factor_linears)
    if (f.rows() != k || f.cols() != k) throw DimensionError("nielsen_raw: matrix shapes differ");
  RatMat id = RatMat::identity(k);
  Rat sum = 0;
  for (const RatMat& c : coset_linears)
    for (const RatMat& f : factor_linears) sum += rat_abs(det_exact(id - c * f));
  return sum / Rat(static_cast<unsigned long>(coset_linears.size()));
}

NielsenReport nielsen_averaging(const CrystalGroup& g, const NMapLift& m, const IntLattice& sub) {
  std::vector<CanonicalElement> reps = holonomy_quotient(g, sub);
  NielsenReport rep;
  rep.method = NielsenMethod::Averaging;
  rep.quotient_size = reps.size();
  RatMat id = RatMat::identity(g.dim);
  Rat sum = 0;
  for (const CanonicalElement& e : reps) {
    std::vector<Rat> row;
    row.reserve(m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
      Rat d = rat_abs(det_exact(id - g.cosets[e.coset].linear * m.factors[i].phi));
      sum += d;
      row.push_back(std::move(d));
    }
    rep.det_table.push_back(std::move(row));
  }
  Rat value = sum / Rat(static_cast<unsigned long>(reps.size()));
  if (!rat_is_int(value))
    throw IntegralityViolation("averaging sum " + rat_str(value) +
                               " is not an integer; the inputs are not a valid group/map pair");
  rep.value = rat_num(value);
  return rep;
}

NielsenReport nielsen_via_classes(const CrystalGroup& g, const NMapLift& m,
                                  const InducedMorphism& ind) {
  NielsenReport rep;
  rep.method = NielsenMethod::Classes;
  SigmaData sd = sigma_data(g, ind, m.n);
  RatMat id = RatMat::identity(g.dim);

  // essential-class count per sigma orbit, for the representative-independence check
  std::vector<std::optional<Int>> orbit_count(sd.orbits.size());
  Rat total = 0;
  rep.class_counts.resize(m.n);
  for (std::size_t i = 0; i < m.n; ++i) {
    std::size_t zero = 0;
    for (std::size_t c = 0; c < g.cosets.size(); ++c)
      if (det_exact(id - g.cosets[c].linear * m.factors[i].phi) == 0) ++zero;
    if (zero == g.cosets.size()) {
      // every class is inessential, the infinite class set contributes nothing
      rep.class_counts[i] = ExtendedCount::inf();
      continue;
    }
    if (zero > 0)
      throw MixedDegeneracy("factor " + std::to_string(i) +
                            " mixes degenerate and nondegenerate holonomy cosets; its class "
                            "set is infinite with essential members, use the averaging method");
    ReidemeisterClassSet cs = enumerate_classes(g, m, ind, i);
    if (cs.infinite) throw IntegrityError("nielsen_via_classes: unexpected infinite class set");
    Int count(static_cast<unsigned long>(cs.classes.size()));
    for (const ReidemeisterClass& cls : cs.classes)
      if (!cls.essential) throw IntegrityError("nielsen_via_classes: inessential class survived");
    rep.class_counts[i] = ExtendedCount::finite(count);
    std::size_t orbit = sd.orbit_of[i];
    if (orbit_count[orbit] && *orbit_count[orbit] != count)
      throw IntegrityError("nielsen_via_classes: class counts differ inside a sigma orbit");
    orbit_count[orbit] = count;
    total += Rat(count) / Rat(static_cast<unsigned long>(sd.orbits[orbit].size()));
  }
  if (!rat_is_int(total))
    throw IntegralityViolation("class-route sum " + rat_str(total) + " is not an integer");
  rep.value = rat_num(total);
  return rep;
}

int fixed_point_index(const CrystalGroup& g, const NMapLift& m, std::size_t i,
                      const CanonicalElement& beta) {
  if (i >= m.n) throw DimensionError("fixed_point_index: branch index out of range");
  RatMat id = RatMat::identity(g.dim);
  return rat_sign(det_exact(id - g.cosets.at(beta.coset).linear * m.factors[i].phi));
}

RatVec find_displacement(const RatMat& phi, const RatVec& gvec) {
  const std::size_t k = phi.rows();
  if (phi.cols() != k || gvec.size() != k) throw DimensionError("find_displacement: shape");
  RatMat op = RatMat::identity(k) - phi;
  Rat d = det_exact(op);
  if (d != 0)
    throw NoEigenvalueOne("find_displacement: det(I-Phi) = " + rat_str(d) +
                          " is nonzero, the displaced map always has a fixed point");
  std::vector<RatVec> left = rat_kernel(transpose(op));
  if (left.empty())
    throw IntegrityError("find_displacement: singular operator with full image");
  const RatVec& y = left[0];
  std::size_t pick = 0;
  while (y[pick] == 0) ++pick;
  RatVec g0(k, Rat(0));
  g0[pick] = 1;
  g0 = vec_sub(g0, gvec);
  if (solve_mixed(op, RatMat(k, 0), vec_add(gvec, g0)))
    throw IntegrityError("find_displacement: displaced equation unexpectedly solvable");
  return g0;
}

namespace {

// canonical representative of y in the half-open fundamental cell
RatVec cell_reduce(const RatMat& lat, const RatMat& lat_inv, const RatVec& y) {
  RatVec xi = lat_inv * y;
  for (Rat& c : xi) c -= Rat(rat_floor(c));
  return lat * xi;
}

bool vec_less(const RatVec& a, const RatVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

FixedPointReport fixpoint_enumerate(const CrystalGroup& g, const NMapLift& m) {
  const std::size_t k = g.dim;
  RatMat id = RatMat::identity(k);
  RatMat lat = to_rat(g.lattice.basis());
  RatMat lat_inv = rat_inverse(lat);
  FixedPointReport out;

  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t c = 0; c < g.cosets.size(); ++c) {
      RatMat op = id - g.cosets[c].linear * m.factors[i].phi;
      RatVec shift = vec_add(g.cosets[c].linear * m.factors[i].g, g.cosets[c].translation);
      if (det_exact(op) == 0) {
        DegenerateBranch db;
        db.factor = i;
        db.coset = c;
        db.rank = rat_rank(op);
        db.solutions_exist = static_cast<bool>(solve_mixed(op, neg(lat), shift));
        out.degenerate.push_back(db);
        continue;
      }
      // t = lat_inv*op*lat * xi - lat_inv*shift over the closed cell xi in [0,1]^k
      RatMat coef = lat_inv * op * lat;
      RatVec tbase = vec_neg(lat_inv * shift);
      IntVec lo(k), hi(k);
      for (std::size_t r = 0; r < k; ++r) {
        Rat lor = tbase[r], hir = tbase[r];
        for (std::size_t j = 0; j < k; ++j) {
          if (coef(r, j) < 0)
            lor += coef(r, j);
          else
            hir += coef(r, j);
        }
        lo[r] = rat_ceil(lor);
        hi[r] = rat_floor(hir);
      }
      bool empty = false;
      for (std::size_t r = 0; r < k; ++r)
        if (lo[r] > hi[r]) empty = true;
      if (empty) continue;

      RatMat op_inv = rat_inverse(op);
      IntVec t = lo;
      while (true) {
        RatVec x = op_inv * vec_add(shift, lat * to_rat(t));
        RatVec xi = lat_inv * x;
        bool inside = true;
        for (std::size_t r = 0; r < k; ++r)
          if (xi[r] < 0 || xi[r] >= 1) {
            inside = false;
            break;
          }
        if (inside) {
          RatVec check = op * x;
          RatVec want = vec_add(shift, lat * to_rat(t));
          for (std::size_t r = 0; r < k; ++r)
            if (check[r] != want[r])
              throw IntegrityError("fixpoint_enumerate: solution failed re-substitution");
          out.raw.push_back({i, c, t, x});
        }
        std::size_t r = k;
        bool done = true;
        while (r > 0) {
          --r;
          if (t[r] < hi[r]) {
            t[r] += 1;
            for (std::size_t rr = r + 1; rr < k; ++rr) t[rr] = lo[rr];
            done = false;
            break;
          }
        }
        if (done) break;
      }
    }
  }

  // orbit-canonical point: lexicographic minimum of the cell representatives
  // over the holonomy action
  for (const RawFixSolution& sol : out.raw) {
    RatVec best = cell_reduce(lat, lat_inv, sol.x);
    for (std::size_t c = 0; c < g.cosets.size(); ++c) {
      RatVec cand = cell_reduce(lat, lat_inv, apply(g.cosets[c], sol.x));
      if (vec_less(cand, best)) best = cand;
    }
    bool known = false;
    for (const RatVec& p : out.points)
      if (p == best) {
        known = true;
        break;
      }
    if (!known) out.points.push_back(std::move(best));
  }

  // each manifold point must satisfy the membership x in f(x) exactly
  for (const RatVec& p : out.points) {
    bool member = false;
    for (std::size_t i = 0; i < m.n && !member; ++i)
      for (std::size_t c = 0; c < g.cosets.size() && !member; ++c) {
        RatMat op = id - g.cosets[c].linear * m.factors[i].phi;
        RatVec shift = vec_add(g.cosets[c].linear * m.factors[i].g, g.cosets[c].translation);
        RatVec t = lat_inv * vec_sub(op * p, shift);
        if (to_int(t)) member = true;
      }
    if (!member) throw IntegrityError("fixpoint_enumerate: manifold point fails membership");
  }
  return out;
}

}  // namespace nvmap
