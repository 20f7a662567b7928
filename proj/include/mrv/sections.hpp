#pragma once

#include <vector>

#include "mrv/exactdims.hpp"
#include "mrv/fp.hpp"

// Section spaces of the bundles under study, realized as explicit matrices
// over F_p: monomial bases, evaluation at points, and the Koszul-kernel
// model of twisted p-form sections.
//
// Evaluation matrices are laid out point-major: each point contributes a
// contiguous block of rows (one row per fiber coordinate of the target).
// Columns enumerate a basis of the section space.

namespace mrv {

// Exponent vector of length n+1 summing to the degree.
using Monomial = std::vector<int>;

// All degree-k monomials in x_0..x_n, exponent vectors in descending
// lexicographic order; empty for k < 0.  Size is o_dim(n, k).
std::vector<Monomial> monomials(int n, i64 k);

std::uint64_t eval_monomial(const Monomial& m, const ProjectivePoint& pt, const FieldSpec& f);

// Size-p subsets of {0..n} as sorted index vectors, in lexicographic order.
// Size is binom(n+1, p).
std::vector<std::vector<int>> index_subsets(int n, int p);

// Evaluation of H^0(O(k_1) + ... + O(k_r)) at the given points.
// Rows: r per point (one per summand).  Columns: summand-major, then the
// monomial basis of each summand's degree.
FpMatrix eval_free(int n, const std::vector<i64>& twists,
                   const std::vector<ProjectivePoint>& pts, const FieldSpec& f);

// Evaluation of H^0(T(l)) at the given points, presented on the generators
// e_i * m coming from the twisted Euler surjection O(l+1)^{n+1} -> T(l).
// Rows: n per point, the tangent fiber in the chart where the pivot
// coordinate (the normalized leading 1) is dropped.  Columns:
// (n+1) * o_dim(n, l+1) generators.  The column rank equals the rank of the
// honest section space because the presentation is surjective on H^0 for
// l >= -1; for l <= -2 the matrix has zero columns.
FpMatrix eval_tangent(int n, i64 ell, const std::vector<ProjectivePoint>& pts,
                      const FieldSpec& f);

// The Koszul contraction Lambda^p V (x) S_{k-p}  ->  Lambda^{p-1} V (x) S_{k-p+1},
// e_S (x) m  |->  sum_{i in S} sign(i, S) e_{S \ i} (x) x_i m.
// Coordinates on both sides are (subset, monomial) pairs, subset-major.
FpMatrix koszul_contraction(int n, int p, i64 k, const FieldSpec& f);

struct KoszulBasis {
  int n = 0;
  int p = 0;
  i64 k = 0;
  // One section per row; columns are the binom(n+1,p) * o_dim(n,k-p)
  // ambient coordinates (subset-major, then monomials of degree k-p).
  FpMatrix sections;
};

// Basis of H^0(Omega^p(k)) as the kernel of the Koszul contraction.
// Throws std::logic_error if the kernel dimension disagrees with the Bott
// number.  Requires n >= 1 and 0 <= p <= n+1.
KoszulBasis koszul_basis(int n, int p, i64 k, const FieldSpec& f);

// Evaluation of the Koszul-kernel sections at the given points.
// Rows: binom(n+1, p) ambient fiber coordinates per point (the values land
// in the rank-binom(n,p) form fiber, cut out by contraction with the point).
// Columns: one per basis section.
FpMatrix eval_omega(int n, int p, i64 k, const std::vector<ProjectivePoint>& pts,
                    const FieldSpec& f);

// Replace the row block of one point by a quotient composition q * block.
// m has rows_per_point rows per point; q is quot_dim x rows_per_point.
// The result keeps the block order and has q.rows() rows at that point.
FpMatrix apply_quotient(const FpMatrix& m, i64 rows_per_point, i64 point_index,
                        const FpMatrix& q, const FieldSpec& f);

}  // namespace mrv
