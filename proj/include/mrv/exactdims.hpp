#pragma once

#include <cstdint>
#include <vector>

// Exact integer dimension formulas for twisted free, tangent and p-form
// bundles on projective space, plus the closed-form resolution predictions
// built from them.  Everything here is deterministic integer arithmetic;
// any 64-bit overflow throws std::overflow_error instead of wrapping.

namespace mrv {

using i64 = std::int64_t;

// Overflow-checked signed 64-bit helpers.
i64 checked_add(i64 x, i64 y);
i64 checked_sub(i64 x, i64 y);
i64 checked_mul(i64 x, i64 y);

// Binomial coefficient, 0 when k < 0 or k > m or m < 0.
i64 binom(i64 m, i64 k);

// h^0(P^n, O(l)) = binom(n+l, n), 0 for l < 0.  Requires n >= 1.
i64 o_dim(int n, i64 l);

// h^0(P^n, T(l)) via the Euler sequence; (l+3 choose 1) pattern on P^1.
// Requires n >= 1.
i64 t_dim(int n, i64 l);

// h^q(P^n, Omega^p(k)) by the Bott formula.  Requires n >= 1 and
// 0 <= q <= n; p outside [0, n] gives 0.
i64 bott(int n, i64 p, i64 k, int q);

struct QrSplit {
  i64 t;  // t_dim(n, l)
  i64 q;  // floor(t / n)
  i64 r;  // t mod n, 0 <= r < n
};

// Split h^0(T(l)) into n-point fibers: t = n*q + r.  Requires n >= 1, l >= -1.
QrSplit qr_split(int n, i64 l);

// Checks n*o(n,l+1) - t(n-1,l) == t(n,l-1) and t(n,l-1) >= n*o(n,l).
// Requires n >= 2, l >= 0.
bool euler_identity_check(int n, i64 l);

// Smallest l with o_dim(n, l) > a.  Requires n >= 1, a >= 0.
i64 d_min(int n, i64 a);

struct Theorem1Prediction {
  int n;
  i64 a;
  i64 d;      // d_min(n, a)
  i64 h;      // bott(n, n-1, d+n-1, 0), equals t_dim(n, d-2)
  i64 a_nm2;  // predicted a_{n-2}
  i64 b_nm1;  // predicted b_{n-1}
};

// Predicted middle syzygy pair for a general points in P^n.
// Requires n >= 2, a >= 1.
Theorem1Prediction theorem1_prediction(int n, i64 a);

struct BettiEntry {
  i64 a = 0;
  i64 b = 0;
  bool a_known = true;  // false when the entry could not be computed
  bool b_known = true;
};

struct BettiTable {
  int n = 0;
  i64 a = 0;
  i64 d = 0;
  std::vector<BettiEntry> entries;  // indexed by p = 0..n
};

// Full predicted Betti table of the minimal resolution of a general points
// in P^n, from the Bott numbers.  Requires n >= 2, a >= 1.
BettiTable mrc_prediction(int n, i64 a);

}  // namespace mrv
