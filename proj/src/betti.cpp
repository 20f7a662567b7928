#include "mrv/betti.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mrv/sections.hpp"

namespace mrv {

BettiTable betti_table(int n, i64 a, const TrialConfig& cfg,
                       std::vector<std::string>* warnings) {
  if (n < 1 || a < 1) throw std::invalid_argument("betti_table: need n >= 1, a >= 1");
  if (cfg.trials < 1) throw std::invalid_argument("TrialConfig: trials must be >= 1");
  BettiTable tbl;
  tbl.n = n;
  tbl.a = a;
  tbl.d = d_min(n, a);
  tbl.entries.assign(n + 1, BettiEntry{std::numeric_limits<i64>::max(),
                                       std::numeric_limits<i64>::max(), true, true});
  // a_p is read off the rank of the degree d+p+1 evaluation of (p+1)-forms;
  // that needs the next cohomology to vanish, which can fail only in the
  // extremes already fixed by hand below.
  for (i64 p = 0; p < n; ++p)
    if (bott(n, p + 1, tbl.d + p + 1, 1) != 0) tbl.entries[p].a_known = false;
  tbl.entries[n] = {0, std::numeric_limits<i64>::max(), true, true};

  for (int trial = 0; trial < cfg.trials; ++trial) {
    Sampler s(cfg.master_seed + trial);
    auto pts = random_points(n, a, cfg.field, s);
    for (i64 p = 0; p <= n; ++p) {
      i64 bp = checked_sub(bott(n, p, tbl.d + p, 0),
                           rank(eval_omega(n, p, tbl.d + p, pts, cfg.field), cfg.field));
      tbl.entries[p].b = std::min(tbl.entries[p].b, bp);
      if (p < n && tbl.entries[p].a_known) {
        i64 ap = checked_sub(checked_mul(binom(n, p + 1), a),
                             rank(eval_omega(n, p + 1, tbl.d + p + 1, pts, cfg.field), cfg.field));
        tbl.entries[p].a = std::min(tbl.entries[p].a, ap);
      }
    }
  }
  for (i64 p = 0; p < n; ++p)
    if (!tbl.entries[p].a_known) tbl.entries[p].a = 0;

  if (warnings) {
    if (tbl.entries[0].b != checked_sub(o_dim(n, tbl.d), a)) {
      std::ostringstream w;
      w << "b_0 = " << tbl.entries[0].b << " differs from o(n,d) - a = "
        << checked_sub(o_dim(n, tbl.d), a) << "; sampled points look special";
      warnings->push_back(w.str());
    }
    if (tbl.entries[n - 1].a_known &&
        tbl.entries[n - 1].a != checked_sub(a, o_dim(n, tbl.d - 1))) {
      std::ostringstream w;
      w << "a_{n-1} = " << tbl.entries[n - 1].a << " differs from a - o(n,d-1) = "
        << checked_sub(a, o_dim(n, tbl.d - 1)) << "; sampled points look special";
      warnings->push_back(w.str());
    }
  }
  return tbl;
}

MrcComparison compare_mrc(const BettiTable& computed, const BettiTable& predicted) {
  if (computed.n != predicted.n || computed.a != predicted.a)
    throw std::invalid_argument("compare_mrc: tables describe different (n, a)");
  int n = computed.n;
  MrcComparison cmp;
  cmp.computed = computed;
  cmp.predicted = predicted;
  cmp.a_match.assign(n + 1, true);
  cmp.b_match.assign(n + 1, true);
  cmp.all_match = true;
  for (i64 p = 0; p <= n; ++p) {
    const BettiEntry& c = cmp.computed.entries[p];
    const BettiEntry& q = cmp.predicted.entries[p];
    cmp.a_match[p] = c.a_known && c.a == q.a;
    cmp.b_match[p] = c.b == q.b;
    if (!c.a_known) {
      std::ostringstream w;
      w << "a_" << p << " not computable: h^1 does not vanish in degree " << cmp.computed.d + p + 1;
      cmp.warnings.push_back(w.str());
    }
    if (c.a_known && c.a < q.a) {
      std::ostringstream w;
      w << "a_" << p << " computed below prediction; semicontinuity violated, check the model";
      cmp.warnings.push_back(w.str());
    }
    if (c.b < q.b) {
      std::ostringstream w;
      w << "b_" << p << " computed below prediction; semicontinuity violated, check the model";
      cmp.warnings.push_back(w.str());
    }
    cmp.all_match = cmp.all_match && cmp.a_match[p] && cmp.b_match[p];
  }
  return cmp;
}

Theorem1Check theorem1_check(int n, i64 a, const TrialConfig& cfg) {
  Theorem1Check chk;
  chk.predicted = theorem1_prediction(n, a);
  BettiTable tbl = betti_table(n, a, cfg);
  chk.computed_a_nm2 = tbl.entries[n - 2].a;
  chk.computed_b_nm1 = tbl.entries[n - 1].b;
  chk.known = tbl.entries[n - 2].a_known;
  chk.match = chk.known && chk.computed_a_nm2 == chk.predicted.a_nm2 &&
              chk.computed_b_nm1 == chk.predicted.b_nm1;
  return chk;
}

}  // namespace mrv
