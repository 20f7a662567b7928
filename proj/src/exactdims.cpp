#include "mrv/exactdims.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace mrv {

i64 checked_add(i64 x, i64 y) {
  i64 r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("int64 add overflow");
  return r;
}

i64 checked_sub(i64 x, i64 y) {
  i64 r;
  if (__builtin_sub_overflow(x, y, &r)) throw std::overflow_error("int64 sub overflow");
  return r;
}

i64 checked_mul(i64 x, i64 y) {
  i64 r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("int64 mul overflow");
  return r;
}

i64 binom(i64 m, i64 k) {
  if (m < 0 || k < 0 || k > m) return 0;
  k = std::min(k, m - k);
  // After step i the accumulator is binom(m-k+i, i), so division is exact.
  // The 128-bit intermediate lets every representable result through.
  unsigned __int128 r = 1;
  for (i64 i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(m - k + i) / static_cast<unsigned __int128>(i);
    if (r > static_cast<unsigned __int128>(std::numeric_limits<i64>::max()))
      throw std::overflow_error("binom overflow");
  }
  return static_cast<i64>(r);
}

i64 o_dim(int n, i64 l) {
  if (n < 1) throw std::invalid_argument("o_dim: n must be >= 1");
  if (l < 0) return 0;
  return binom(checked_add(n, l), n);
}

i64 t_dim(int n, i64 l) {
  if (n < 1) throw std::invalid_argument("t_dim: n must be >= 1");
  if (n == 1) return o_dim(1, l + 2);
  if (l <= -2) return 0;
  return checked_sub(checked_mul(n + 1, o_dim(n, l + 1)), o_dim(n, l));
}

i64 bott(int n, i64 p, i64 k, int q) {
  if (n < 1) throw std::invalid_argument("bott: n must be >= 1");
  if (q < 0 || q > n) throw std::invalid_argument("bott: q must be in [0, n]");
  if (p < 0 || p > n) return 0;
  if (q == 0) {
    if (p == 0 && k == 0) return 1;
    if (k > p) return checked_mul(binom(k - 1, p), binom(k + n - p, n - p));
    return 0;
  }
  if (q == n) return bott(n, n - p, -k, 0);
  return (q == p && k == 0) ? 1 : 0;
}

QrSplit qr_split(int n, i64 l) {
  if (n < 1) throw std::invalid_argument("qr_split: n must be >= 1");
  if (l < -1) throw std::invalid_argument("qr_split: l must be >= -1");
  i64 t = t_dim(n, l);
  return {t, t / n, t % n};
}

bool euler_identity_check(int n, i64 l) {
  if (n < 2 || l < 0) throw std::invalid_argument("euler_identity_check: need n >= 2, l >= 0");
  i64 lhs = checked_sub(checked_mul(n, o_dim(n, l + 1)), t_dim(n - 1, l));
  i64 rhs = t_dim(n, l - 1);
  return lhs == rhs && rhs >= checked_mul(n, o_dim(n, l));
}

i64 d_min(int n, i64 a) {
  if (n < 1 || a < 0) throw std::invalid_argument("d_min: need n >= 1, a >= 0");
  i64 l = 0;
  while (o_dim(n, l) <= a) ++l;
  return l;
}

Theorem1Prediction theorem1_prediction(int n, i64 a) {
  if (n < 2 || a < 1) throw std::invalid_argument("theorem1_prediction: need n >= 2, a >= 1");
  i64 d = d_min(n, a);
  i64 h = bott(n, n - 1, d + n - 1, 0);
  if (h != t_dim(n, d - 2))
    throw std::logic_error("theorem1_prediction: h^0(Omega^{n-1}(d+n-1)) != t(n, d-2)");
  i64 na = checked_mul(n, a);
  return {n, a, d, h, std::max<i64>(0, na - h), std::max<i64>(0, h - na)};
}

BettiTable mrc_prediction(int n, i64 a) {
  if (n < 2 || a < 1) throw std::invalid_argument("mrc_prediction: need n >= 2, a >= 1");
  BettiTable tbl;
  tbl.n = n;
  tbl.a = a;
  tbl.d = d_min(n, a);
  tbl.entries.resize(n + 1);
  for (i64 p = 0; p <= n; ++p) {
    i64 ap = (p == n) ? 0
                      : std::max<i64>(0, checked_sub(checked_mul(binom(n, p + 1), a),
                                                     bott(n, p + 1, tbl.d + p + 1, 0)));
    i64 bp = std::max<i64>(0, checked_sub(bott(n, p, tbl.d + p, 0),
                                          checked_mul(binom(n, p), a)));
    tbl.entries[p] = {ap, bp, true, true};
  }
  if (tbl.entries[n].a != 0 || tbl.entries[n].b != 0)
    throw std::logic_error("mrc_prediction: a_n and b_n must vanish");
  if (tbl.entries[n - 1].a != checked_sub(a, o_dim(n, tbl.d - 1)))
    throw std::logic_error("mrc_prediction: a_{n-1} != a - o(n, d-1)");
  return tbl;
}

}  // namespace mrv
