#include "mrv/sections.hpp"

#include <map>
#include <stdexcept>

namespace mrv {

namespace {

void gen_monomials(int n, int var, i64 remaining, Monomial& cur, std::vector<Monomial>& out) {
  if (var == n) {
    cur[var] = static_cast<int>(remaining);
    out.push_back(cur);
    return;
  }
  for (i64 e = remaining; e >= 0; --e) {
    cur[var] = static_cast<int>(e);
    gen_monomials(n, var + 1, remaining - e, cur, out);
  }
}

void gen_subsets(int n, int p, int start, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == p) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i <= n; ++i) {
    cur.push_back(i);
    gen_subsets(n, p, i + 1, cur, out);
    cur.pop_back();
  }
}

i64 pivot_index(const ProjectivePoint& pt) {
  for (i64 i = 0; i < static_cast<i64>(pt.size()); ++i)
    if (pt[i] != 0) return i;
  throw std::invalid_argument("zero vector is not a projective point");
}

// Values of every degree-k monomial at every point, one row per point.
std::vector<std::vector<std::uint64_t>> monomial_values(const std::vector<Monomial>& monos,
                                                        const std::vector<ProjectivePoint>& pts,
                                                        const FieldSpec& f) {
  std::vector<std::vector<std::uint64_t>> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    vals[i].reserve(monos.size());
    for (const Monomial& m : monos) vals[i].push_back(eval_monomial(m, pts[i], f));
  }
  return vals;
}

}  // namespace

std::vector<Monomial> monomials(int n, i64 k) {
  if (n < 0) throw std::invalid_argument("monomials: n must be >= 0");
  std::vector<Monomial> out;
  if (k < 0) return out;
  Monomial cur(n + 1, 0);
  gen_monomials(n, 0, k, cur, out);
  return out;
}

std::uint64_t eval_monomial(const Monomial& m, const ProjectivePoint& pt, const FieldSpec& f) {
  if (m.size() != pt.size()) throw std::invalid_argument("monomial/point arity mismatch");
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    v = f.mul(v, f.pow(pt[i], m[i]));
  }
  return v;
}

std::vector<std::vector<int>> index_subsets(int n, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0 || p > n + 1) return out;
  std::vector<int> cur;
  cur.reserve(p);
  gen_subsets(n, p, 0, cur, out);
  return out;
}

FpMatrix eval_free(int n, const std::vector<i64>& twists,
                   const std::vector<ProjectivePoint>& pts, const FieldSpec& f) {
  i64 r = static_cast<i64>(twists.size());
  std::vector<std::vector<Monomial>> bases;
  i64 cols = 0;
  for (i64 k : twists) {
    bases.push_back(monomials(n, k));
    cols += static_cast<i64>(bases.back().size());
  }
  FpMatrix m(r * static_cast<i64>(pts.size()), cols);
  for (i64 pi = 0; pi < static_cast<i64>(pts.size()); ++pi) {
    i64 col0 = 0;
    for (i64 s = 0; s < r; ++s) {
      for (i64 j = 0; j < static_cast<i64>(bases[s].size()); ++j)
        m.at(pi * r + s, col0 + j) = eval_monomial(bases[s][j], pts[pi], f);
      col0 += static_cast<i64>(bases[s].size());
    }
  }
  return m;
}

FpMatrix eval_tangent(int n, i64 ell, const std::vector<ProjectivePoint>& pts,
                      const FieldSpec& f) {
  if (n < 1) throw std::invalid_argument("eval_tangent: n must be >= 1");
  if (ell <= -2) return FpMatrix(n * static_cast<i64>(pts.size()), 0);
  std::vector<Monomial> monos = monomials(n, ell + 1);
  i64 M = static_cast<i64>(monos.size());
  FpMatrix m(n * static_cast<i64>(pts.size()), (n + 1) * M);
  std::vector<std::vector<std::uint64_t>> vals = monomial_values(monos, pts, f);
  for (i64 pi = 0; pi < static_cast<i64>(pts.size()); ++pi) {
    const ProjectivePoint& P = pts[pi];
    i64 i0 = pivot_index(P);
    // Tangent fiber coordinates: all j != i0, in ascending order.
    i64 row = n * pi;
    for (i64 j = 0; j <= n; ++j) {
      if (j == i0) continue;
      for (i64 i = 0; i <= n; ++i) {
        // generator e_i * m maps to (delta_ij - P_j * delta_{i,i0}) * m(P)
        std::uint64_t coef = 0;
        if (i == j) coef = 1;
        if (i == i0) coef = f.sub(coef, P[j]);
        if (coef == 0) continue;
        for (i64 mi = 0; mi < M; ++mi)
          m.at(row, i * M + mi) = f.mul(coef, vals[pi][mi]);
      }
      ++row;
    }
  }
  return m;
}

FpMatrix koszul_contraction(int n, int p, i64 k, const FieldSpec& f) {
  if (n < 1 || p < 1 || p > n + 1)
    throw std::invalid_argument("koszul_contraction: need n >= 1, 1 <= p <= n+1");
  std::vector<std::vector<int>> dom_sets = index_subsets(n, p);
  std::vector<std::vector<int>> cod_sets = index_subsets(n, p - 1);
  std::vector<Monomial> dom_monos = monomials(n, k - p);
  std::vector<Monomial> cod_monos = monomials(n, k - p + 1);
  std::map<std::vector<int>, i64> cod_set_idx;
  for (i64 i = 0; i < static_cast<i64>(cod_sets.size()); ++i) cod_set_idx[cod_sets[i]] = i;
  std::map<Monomial, i64> cod_mono_idx;
  for (i64 i = 0; i < static_cast<i64>(cod_monos.size()); ++i) cod_mono_idx[cod_monos[i]] = i;

  i64 dM = static_cast<i64>(dom_monos.size());
  i64 cM = static_cast<i64>(cod_monos.size());
  FpMatrix m(static_cast<i64>(cod_sets.size()) * cM, static_cast<i64>(dom_sets.size()) * dM);
  for (i64 si = 0; si < static_cast<i64>(dom_sets.size()); ++si) {
    const std::vector<int>& S = dom_sets[si];
    for (int pos = 0; pos < p; ++pos) {
      std::vector<int> T = S;
      int var = T[pos];
      T.erase(T.begin() + pos);
      i64 ti = cod_set_idx.at(T);
      bool negative = (pos % 2) != 0;
      for (i64 mi = 0; mi < dM; ++mi) {
        Monomial prod = dom_monos[mi];
        prod[var] += 1;
        i64 ci = cod_mono_idx.at(prod);
        std::uint64_t v = negative ? f.p - 1 : 1;
        m.at(ti * cM + ci, si * dM + mi) = f.add(m.at(ti * cM + ci, si * dM + mi), v);
      }
    }
  }
  return m;
}

KoszulBasis koszul_basis(int n, int p, i64 k, const FieldSpec& f) {
  if (n < 1 || p < 0 || p > n + 1)
    throw std::invalid_argument("koszul_basis: need n >= 1, 0 <= p <= n+1");
  KoszulBasis b;
  b.n = n;
  b.p = p;
  b.k = k;
  if (p == 0) {
    i64 dim = o_dim(n, k);
    b.sections = FpMatrix(dim, dim);
    for (i64 i = 0; i < dim; ++i) b.sections.at(i, i) = 1;
  } else if (k - p < 0) {
    b.sections = FpMatrix(0, 0);
  } else {
    b.sections = kernel_basis(koszul_contraction(n, p, k, f), f);
  }
  if (b.sections.rows() != bott(n, p, k, 0))
    throw std::logic_error("koszul_basis: kernel dimension disagrees with the Bott number");
  return b;
}

FpMatrix eval_omega(int n, int p, i64 k, const std::vector<ProjectivePoint>& pts,
                    const FieldSpec& f) {
  KoszulBasis b = koszul_basis(n, p, k, f);
  std::vector<std::vector<int>> sets = index_subsets(n, p);
  std::vector<Monomial> monos = monomials(n, k - p);
  i64 S = static_cast<i64>(sets.size());
  i64 M = static_cast<i64>(monos.size());
  std::vector<std::vector<std::uint64_t>> vals = monomial_values(monos, pts, f);
  FpMatrix m(S * static_cast<i64>(pts.size()), b.sections.rows());
  for (i64 pi = 0; pi < static_cast<i64>(pts.size()); ++pi)
    for (i64 s = 0; s < b.sections.rows(); ++s)
      for (i64 si = 0; si < S; ++si) {
        std::uint64_t acc = 0;
        for (i64 mi = 0; mi < M; ++mi) {
          std::uint64_t c = b.sections.at(s, si * M + mi);
          if (c != 0) acc = f.add(acc, f.mul(c, vals[pi][mi]));
        }
        m.at(pi * S + si, s) = acc;
      }
  return m;
}

FpMatrix apply_quotient(const FpMatrix& m, i64 rows_per_point, i64 point_index,
                        const FpMatrix& q, const FieldSpec& f) {
  if (rows_per_point <= 0 || m.rows() % rows_per_point != 0)
    throw std::invalid_argument("apply_quotient: row count not a multiple of the block size");
  i64 npts = m.rows() / rows_per_point;
  if (point_index < 0 || point_index >= npts)
    throw std::invalid_argument("apply_quotient: point index out of range");
  if (q.cols() != rows_per_point)
    throw std::invalid_argument("apply_quotient: quotient shape mismatch");
  FpMatrix out(m.rows() - rows_per_point + q.rows(), m.cols());
  i64 row = 0;
  for (i64 pi = 0; pi < npts; ++pi) {
    if (pi != point_index) {
      for (i64 i = 0; i < rows_per_point; ++i, ++row)
        for (i64 j = 0; j < m.cols(); ++j) out.at(row, j) = m.at(pi * rows_per_point + i, j);
    } else {
      for (i64 qi = 0; qi < q.rows(); ++qi, ++row)
        for (i64 j = 0; j < m.cols(); ++j) {
          std::uint64_t acc = 0;
          for (i64 i = 0; i < rows_per_point; ++i)
            acc = f.add(acc, f.mul(q.at(qi, i), m.at(pi * rows_per_point + i, j)));
          out.at(row, j) = acc;
        }
    }
  }
  return out;
}

}  // namespace mrv
