#include "mrv/maxrank.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "mrv/sections.hpp"

namespace mrv {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted_at_sample: return "refuted-at-sample";
    case Verdict::error: return "error";
  }
  return "error";
}

namespace {

Verdict settle(const std::vector<i64>& achieved, i64 expected) {
  bool hit = false;
  for (i64 r : achieved) {
    if (r > expected)
      throw std::logic_error("achieved rank exceeds the expected maximum; model inconsistent");
    hit |= (r == expected);
  }
  return hit ? Verdict::certified : Verdict::refuted_at_sample;
}

void require_valid(const TrialConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("TrialConfig: trials must be >= 1");
  if (cfg.quotient_samples < 1)
    throw std::invalid_argument("TrialConfig: quotient_samples must be >= 1");
  FieldSpec::validated(cfg.field.p);
}

// A miss is not a disproof: semicontinuity only certifies positively.
void finalize(RankReport& rep) {
  rep.verdict = settle(rep.achieved, rep.expected);
  if (rep.verdict == Verdict::refuted_at_sample)
    rep.note =
        "no sample reached the expected rank; sampled points or quotients may be "
        "special - retry with a different seed or prime";
}

}  // namespace

RankReport verify_sigma(int n, i64 ell, i64 a, const TrialConfig& cfg) {
  if (n < 1 || a < 0) throw std::invalid_argument("verify_sigma: need n >= 1, a >= 0");
  require_valid(cfg);
  RankReport rep;
  std::ostringstream lbl;
  lbl << "sigma(n=" << n << ", l=" << ell << ", a=" << a << ")";
  rep.statement = lbl.str();
  rep.space_dim = t_dim(n, ell);
  rep.target_dim = checked_mul(n, a);
  rep.expected = std::min(rep.space_dim, rep.target_dim);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Sampler s(cfg.master_seed + trial);
    auto pts = random_points(n, a, cfg.field, s);
    rep.achieved.push_back(rank(eval_tangent(n, ell, pts, cfg.field), cfg.field));
  }
  finalize(rep);
  return rep;
}

RankReport verify_tau(int n, i64 ell, const TrialConfig& cfg) {
  if (n < 1 || ell < -1) throw std::invalid_argument("verify_tau: need n >= 1, l >= -1");
  require_valid(cfg);
  QrSplit sp = qr_split(n, ell);
  RankReport rep;
  std::ostringstream lbl;
  lbl << "tau(n=" << n << ", l=" << ell << ", q=" << sp.q << ", r=" << sp.r << ")";
  rep.statement = lbl.str();
  rep.space_dim = sp.t;
  rep.target_dim = sp.t;  // n*q + r, a square problem by construction
  rep.expected = sp.t;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Sampler s(cfg.master_seed + trial);
    if (sp.r == 0) {
      auto pts = random_points(n, sp.q, cfg.field, s);
      rep.achieved.push_back(rank(eval_tangent(n, ell, pts, cfg.field), cfg.field));
    } else {
      auto pts = random_points(n, sp.q + 1, cfg.field, s);
      FpMatrix m = eval_tangent(n, ell, pts, cfg.field);
      i64 best = 0;
      for (int qs = 0; qs < cfg.quotient_samples; ++qs) {
        FpMatrix quot = random_surjection(n, sp.r, cfg.field, s);
        best = std::max(best, rank(apply_quotient(m, n, sp.q, quot, cfg.field), cfg.field));
      }
      rep.achieved.push_back(best);
    }
  }
  finalize(rep);
  return rep;
}

RankReport verify_omega(int n, int p, i64 k, i64 a, const TrialConfig& cfg) {
  if (n < 1 || p < 0 || p > n || a < 0)
    throw std::invalid_argument("verify_omega: need n >= 1, 0 <= p <= n, a >= 0");
  require_valid(cfg);
  RankReport rep;
  std::ostringstream lbl;
  lbl << "omega(n=" << n << ", p=" << p << ", k=" << k << ", a=" << a << ")";
  rep.statement = lbl.str();
  rep.space_dim = bott(n, p, k, 0);
  rep.target_dim = checked_mul(binom(n, p), a);
  rep.expected = std::min(rep.space_dim, rep.target_dim);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Sampler s(cfg.master_seed + trial);
    auto pts = random_points(n, a, cfg.field, s);
    rep.achieved.push_back(rank(eval_omega(n, p, k, pts, cfg.field), cfg.field));
  }
  finalize(rep);
  return rep;
}

ConsistencyReport consistency_tangent_omega(int n, i64 ell, i64 a, const TrialConfig& cfg) {
  if (n < 1 || a < 0 || ell < n)
    throw std::invalid_argument("consistency_tangent_omega: need n >= 1, a >= 0, l >= n");
  require_valid(cfg);
  ConsistencyReport rep;
  {
    std::ostringstream lbl;
    lbl << "sigma(n=" << n << ", l=" << ell - n - 1 << ", a=" << a << ")";
    rep.tangent.statement = lbl.str();
  }
  {
    std::ostringstream lbl;
    lbl << "omega(n=" << n << ", p=" << n - 1 << ", k=" << ell << ", a=" << a << ")";
    rep.omega.statement = lbl.str();
  }
  rep.tangent.space_dim = t_dim(n, ell - n - 1);
  rep.tangent.target_dim = checked_mul(n, a);
  rep.tangent.expected = std::min(rep.tangent.space_dim, rep.tangent.target_dim);
  rep.omega.space_dim = bott(n, n - 1, ell, 0);
  rep.omega.target_dim = checked_mul(binom(n, n - 1), a);
  rep.omega.expected = std::min(rep.omega.space_dim, rep.omega.target_dim);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Sampler s(cfg.master_seed + trial);
    auto pts = random_points(n, a, cfg.field, s);  // shared between both models
    rep.tangent.achieved.push_back(rank(eval_tangent(n, ell - n - 1, pts, cfg.field), cfg.field));
    rep.omega.achieved.push_back(rank(eval_omega(n, n - 1, ell, pts, cfg.field), cfg.field));
  }
  finalize(rep.tangent);
  finalize(rep.omega);
  rep.consistent = rep.tangent.expected == rep.omega.expected &&
                   rep.tangent.achieved == rep.omega.achieved;
  return rep;
}

}  // namespace mrv
