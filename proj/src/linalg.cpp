#include "nvmap/linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>

namespace nvmap {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

void col_swap(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void col_negate(IntMat& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
}

// col_a := s*col_a + t*col_b, col_b := u*col_a_old + w*col_b_old
void col_combine(IntMat& m, std::size_t a, std::size_t b, const Int& s, const Int& t,
                 const Int& u, const Int& w) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int na = s * m(i, a) + t * m(i, b);
    Int nb = u * m(i, a) + w * m(i, b);
    m(i, a) = na;
    m(i, b) = nb;
  }
}

void col_addmul(IntMat& m, std::size_t dst, std::size_t src, const Int& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) = m(i, dst) + q * m(i, src);
}

}  // namespace

std::optional<Rat> rat_parse(const std::string& s) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && s[i] == '-') {
    negative = true;
    ++i;
  }
  std::size_t num_begin = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == num_begin) return std::nullopt;
  std::string num = s.substr(num_begin, i - num_begin);
  std::string den = "1";
  if (i < s.size()) {
    if (s[i] != '/') return std::nullopt;
    ++i;
    std::size_t den_begin = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == den_begin || i != s.size()) return std::nullopt;
    den = s.substr(den_begin, i - den_begin);
  }
  Int n(num), d(den);
  if (d == 0) return std::nullopt;
  if (negative) n = -n;
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

std::string mat_str(const RatMat& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += " ";
      s += rat_str(m(i, j));
    }
  }
  return s + "]";
}

std::string mat_str(const IntMat& m) { return mat_str(to_rat(m)); }

std::string vec_str(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += rat_str(v[i]);
  }
  return s + ")";
}

std::string vec_str(const IntVec& v) { return vec_str(to_rat(v)); }

Rat det_exact(const RatMat& m) {
  if (m.rows() != m.cols()) throw DimensionError("det_exact: square matrix required");
  const std::size_t n = m.rows();
  RatMat a = m;
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = npos;
    for (std::size_t r = c; r < n; ++r)
      if (a(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv == npos) return Rat(0);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rat f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) = a(r, j) - f * a(c, j);
    }
  }
  return det;
}

std::size_t rat_rank(const RatMat& m) {
  RatMat a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = npos;
    for (std::size_t r = rank; r < rows; ++r)
      if (a(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv == npos) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(rank, j));
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a(r, c) == 0) continue;
      Rat f = a(r, c) / a(rank, c);
      for (std::size_t j = c; j < cols; ++j) a(r, j) = a(r, j) - f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

RatMat rat_inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw DimensionError("rat_inverse: square matrix required");
  const std::size_t n = m.rows();
  RatMat a = m;
  RatMat inv = RatMat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = npos;
    for (std::size_t r = c; r < n; ++r)
      if (a(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv == npos) throw IntegrityError("rat_inverse: singular matrix");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    Rat d = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= d;
      inv(c, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Rat f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) = a(r, j) - f * a(c, j);
        inv(r, j) = inv(r, j) - f * inv(c, j);
      }
    }
  }
  return inv;
}

std::vector<RatVec> rat_kernel(const RatMat& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  RatMat a = m;
  // reduced row echelon with pivot bookkeeping
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = npos;
    for (std::size_t r = rank; r < rows; ++r)
      if (a(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv == npos) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(rank, j));
    Rat d = a(rank, c);
    for (std::size_t j = 0; j < cols; ++j) a(rank, j) /= d;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a(r, c) == 0) continue;
      Rat f = a(r, c);
      for (std::size_t j = 0; j < cols; ++j) a(r, j) = a(r, j) - f * a(rank, j);
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec x(cols, Rat(0));
    x[f] = 1;
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = -a(r, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

HnfResult hnf(const IntMat& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMat h = m;
  IntMat u = IntMat::identity(cols);
  std::size_t p = 0;
  for (std::size_t r = 0; r < rows && p < cols; ++r) {
    std::size_t j = p;
    while (j < cols && h(r, j) == 0) ++j;
    if (j == cols) continue;
    col_swap(h, p, j);
    col_swap(u, p, j);
    for (std::size_t c = p + 1; c < cols; ++c) {
      if (h(r, c) == 0) continue;
      Int a = h(r, p), b = h(r, c), g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Int bg = b / g, ag = a / g;
      // [[s, -b/g], [t, a/g]] has determinant 1
      col_combine(h, p, c, s, t, -bg, ag);
      col_combine(u, p, c, s, t, -bg, ag);
    }
    if (h(r, p) < 0) {
      col_negate(h, p);
      col_negate(u, p);
    }
    for (std::size_t c = 0; c < p; ++c) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(r, c).get_mpz_t(), h(r, p).get_mpz_t());
      col_addmul(h, c, p, -q);
      col_addmul(u, c, p, -q);
    }
    ++p;
  }
  return {h, u};
}

IntMat hnf_basis(const IntMat& m) {
  IntMat h = hnf(m).h;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < h.cols(); ++c) {
    bool zero = true;
    for (std::size_t r = 0; r < h.rows(); ++r)
      if (h(r, c) != 0) {
        zero = false;
        break;
      }
    if (zero) break;  // zero columns are trailing
    ++rank;
  }
  IntMat b(h.rows(), rank);
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0; c < rank; ++c) b(r, c) = h(r, c);
  return b;
}

std::vector<Int> snf(const IntMat& m) {
  IntMat a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  const std::size_t n = std::min(rows, cols);
  std::vector<Int> d(n, Int(0));
  std::size_t t = 0;
  while (t < n) {
    // locate a nonzero entry of minimal magnitude in the trailing block
    std::size_t pi = npos, pj = npos;
    Int best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (a(i, j) == 0) continue;
        Int v = abs(a(i, j));
        if (pi == npos || v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi == npos) break;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a(pi, j), a(t, j));
    for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, pj), a(i, t));

    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (a(i, t) == 0) continue;
      Int q = a(i, t) / a(t, t);
      for (std::size_t j = t; j < cols; ++j) a(i, j) = a(i, j) - q * a(t, j);
      if (a(i, t) != 0) clean = false;
    }
    if (!clean) continue;
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (a(t, j) == 0) continue;
      Int q = a(t, j) / a(t, t);
      for (std::size_t i = t; i < rows; ++i) a(i, j) = a(i, j) - q * a(i, t);
      if (a(t, j) != 0) clean = false;
    }
    if (!clean) continue;
    // corner isolated; enforce that it divides the rest of the block
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i)
      for (std::size_t j = t + 1; j < cols && divides; ++j)
        if (a(i, j) % a(t, t) != 0) {
          for (std::size_t jj = t; jj < cols; ++jj) a(t, jj) = a(t, jj) + a(i, jj);
          divides = false;
        }
    if (!divides) continue;
    d[t] = abs(a(t, t));
    ++t;
  }
  return d;
}

IntMat int_kernel(const IntMat& m) {
  HnfResult r = hnf(m);
  std::vector<std::size_t> zero_cols;
  for (std::size_t c = 0; c < r.h.cols(); ++c) {
    bool zero = true;
    for (std::size_t i = 0; i < r.h.rows(); ++i)
      if (r.h(i, c) != 0) {
        zero = false;
        break;
      }
    if (zero) zero_cols.push_back(c);
  }
  IntMat k(m.cols(), zero_cols.size());
  for (std::size_t idx = 0; idx < zero_cols.size(); ++idx)
    for (std::size_t i = 0; i < m.cols(); ++i) k(i, idx) = r.u(i, zero_cols[idx]);
  return k;
}

ExtendedCount cokernel_count(const IntMat& m) {
  std::vector<Int> d = snf(m);
  std::size_t nonzero = 0;
  Int prod = 1;
  for (const Int& x : d)
    if (x != 0) {
      ++nonzero;
      prod *= x;
    }
  if (nonzero < m.rows()) return ExtendedCount::inf();
  return ExtendedCount::finite(prod);
}

IntVec box_reduce(const IntMat& h, IntVec v) {
  const std::size_t n = h.rows();
  if (h.cols() != n || v.size() != n) throw DimensionError("box_reduce: shape");
  for (std::size_t i = 0; i < n; ++i) {
    if (h(i, i) <= 0) throw IntegrityError("box_reduce: matrix not positive lower triangular");
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v[i].get_mpz_t(), h(i, i).get_mpz_t());
    if (q == 0) continue;
    for (std::size_t r = i; r < n; ++r) v[r] = v[r] - q * h(r, i);
  }
  return v;
}

std::vector<IntVec> cokernel_reps(const IntMat& w, unsigned long cap) {
  IntMat h = hnf(w).h;
  const std::size_t n = w.rows();
  if (w.cols() != n) throw DimensionError("cokernel_reps: square matrix required");
  Int count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (h(i, i) == 0) throw IntegrityError("cokernel_reps: singular matrix");
    count *= h(i, i);
  }
  if (count > cap) throw IntegrityError("cokernel_reps: residue count " + count.get_str() +
                                        " exceeds cap");
  std::vector<IntVec> reps;
  IntVec v(n, Int(0));
  while (true) {
    reps.push_back(v);
    std::size_t i = n;
    while (i > 0) {
      --i;
      v[i] += 1;
      if (v[i] < h(i, i)) break;
      v[i] = 0;
      if (i == 0) return reps;
    }
    if (n == 0) return reps;
  }
}

std::optional<MixedSolution> solve_mixed(const RatMat& a, const RatMat& b, const RatVec& v0) {
  const std::size_t k = v0.size();
  if (a.rows() != k || b.rows() != k) throw DimensionError("solve_mixed: row counts must match v");
  const std::size_t p = a.cols(), q = b.cols();

  RatMat A = a;
  RatMat B = b;
  RatVec v = v0;
  std::vector<std::size_t> pivot_row_of_col(p, npos);
  std::vector<bool> used(k, false);

  // Gauss-Jordan on the rational unknowns; unused rows end with zero A-part.
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t pr = npos;
    for (std::size_t r = 0; r < k; ++r)
      if (!used[r] && A(r, c) != 0) {
        pr = r;
        break;
      }
    if (pr == npos) continue;
    used[pr] = true;
    pivot_row_of_col[c] = pr;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == pr || A(r, c) == 0) continue;
      Rat f = A(r, c) / A(pr, c);
      for (std::size_t cc = 0; cc < p; ++cc) A(r, cc) = A(r, cc) - f * A(pr, cc);
      for (std::size_t cc = 0; cc < q; ++cc) B(r, cc) = B(r, cc) - f * B(pr, cc);
      v[r] = v[r] - f * v[pr];
    }
  }

  std::vector<std::size_t> irows;
  for (std::size_t r = 0; r < k; ++r)
    if (!used[r]) irows.push_back(r);

  IntMat C(irows.size(), q);
  IntVec w(irows.size());
  for (std::size_t idx = 0; idx < irows.size(); ++idx) {
    std::size_t r = irows[idx];
    Int l = 1;
    for (std::size_t cc = 0; cc < q; ++cc) l = int_lcm(l, rat_den(B(r, cc)));
    for (std::size_t cc = 0; cc < q; ++cc) C(idx, cc) = rat_to_int(B(r, cc) * Rat(l));
    Rat wv = v[r] * Rat(l);
    if (!rat_is_int(wv)) return std::nullopt;
    w[idx] = rat_num(wv);
  }

  HnfResult hr = hnf(C);
  IntVec y(q, Int(0));
  std::size_t col = 0;
  for (std::size_t r = 0; r < irows.size(); ++r) {
    Int acc = 0;
    for (std::size_t l = 0; l < col; ++l) acc += hr.h(r, l) * y[l];
    if (col < q && hr.h(r, col) != 0) {
      Int rem = w[r] - acc;
      if (rem % hr.h(r, col) != 0) return std::nullopt;
      y[col] = rem / hr.h(r, col);
      ++col;
    } else if (acc != w[r]) {
      return std::nullopt;
    }
  }
  IntVec t = hr.u * y;

  RatVec x(p, Rat(0));
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t r = pivot_row_of_col[c];
    if (r == npos) continue;
    Rat bt = 0;
    for (std::size_t cc = 0; cc < q; ++cc) bt += B(r, cc) * Rat(t[cc]);
    x[c] = (v[r] - bt) / A(r, c);
  }

  RatVec lhs = vec_add(a * x, b * to_rat(t));
  for (std::size_t r = 0; r < k; ++r)
    if (lhs[r] != v0[r]) throw IntegrityError("solve_mixed: witness failed re-substitution");
  return MixedSolution{std::move(x), std::move(t)};
}

IntLattice IntLattice::standard(std::size_t dim) { return scaled(dim, Int(1)); }

IntLattice IntLattice::scaled(std::size_t dim, const Int& f) {
  IntMat g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) g(i, i) = f;
  return from_generators(dim, g);
}

IntLattice IntLattice::from_generators(std::size_t dim, const IntMat& gens) {
  if (gens.rows() != dim) throw DimensionError("IntLattice: generator rows != ambient dim");
  IntLattice l;
  l.dim_ = dim;
  l.basis_ = hnf_basis(gens);
  return l;
}

std::optional<IntVec> IntLattice::coords_of(const RatVec& v) const {
  if (v.size() != dim_) throw DimensionError("IntLattice::coords_of: shape");
  const std::size_t m = basis_.cols();
  // pivot row of column j is the first nonzero row (column echelon form)
  RatVec t(m, Rat(0));
  std::size_t row = 0;
  for (std::size_t j = 0; j < m; ++j) {
    while (row < dim_ && basis_(row, j) == 0) ++row;
    if (row == dim_) throw IntegrityError("IntLattice: malformed basis");
    Rat acc = 0;
    for (std::size_t l = 0; l < j; ++l) acc += Rat(basis_(row, l)) * t[l];
    t[j] = (v[row] - acc) / Rat(basis_(row, j));
  }
  RatMat bq = to_rat(basis_);
  RatVec check = bq * t;
  for (std::size_t i = 0; i < dim_; ++i)
    if (check[i] != v[i]) return std::nullopt;
  IntVec out(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (!rat_is_int(t[j])) return std::nullopt;
    out[j] = rat_num(t[j]);
  }
  return out;
}

bool IntLattice::contains(const IntLattice& other) const {
  if (other.dim_ != dim_) throw DimensionError("IntLattice::contains: ambient dims differ");
  for (std::size_t c = 0; c < other.basis_.cols(); ++c) {
    RatVec col(dim_);
    for (std::size_t i = 0; i < dim_; ++i) col[i] = Rat(other.basis_(i, c));
    if (!coords_of(col)) return false;
  }
  return true;
}

ExtendedCount lattice_index(const IntLattice& outer, const IntLattice& inner) {
  if (outer.dim() != inner.dim()) throw DimensionError("lattice_index: ambient dims differ");
  const std::size_t m_out = outer.rank(), m_in = inner.rank();
  IntMat x(m_out, m_in);
  for (std::size_t c = 0; c < m_in; ++c) {
    RatVec col(inner.dim());
    for (std::size_t i = 0; i < inner.dim(); ++i) col[i] = Rat(inner.basis()(i, c));
    auto coords = outer.coords_of(col);
    if (!coords)
      throw SublatticeError("lattice_index: basis column " + std::to_string(c) +
                            " = " + vec_str(col) + " is not in the outer lattice");
    for (std::size_t i = 0; i < m_out; ++i) x(i, c) = (*coords)[i];
  }
  if (m_in < m_out) return ExtendedCount::inf();
  if (m_in > m_out) throw IntegrityError("lattice_index: contained lattice with larger rank");
  Rat d = det_exact(to_rat(x));
  return ExtendedCount::finite(abs(rat_to_int(d)));
}

IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b) {
  if (a.dim() != b.dim()) throw DimensionError("lattice_intersect: ambient dims differ");
  const std::size_t k = a.dim(), ra = a.rank(), rb = b.rank();
  IntMat stacked(k, ra + rb);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < ra; ++c) stacked(i, c) = a.basis()(i, c);
    for (std::size_t c = 0; c < rb; ++c) stacked(i, ra + c) = -b.basis()(i, c);
  }
  IntMat ker = int_kernel(stacked);
  IntMat xpart(ra, ker.cols());
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t c = 0; c < ker.cols(); ++c) xpart(i, c) = ker(i, c);
  IntMat gens = a.basis() * xpart;
  return IntLattice::from_generators(k, gens);
}

}  // namespace nvmap
