#pragma once

#include <string>
#include <vector>

#include "mrv/exactdims.hpp"
#include "mrv/fp.hpp"

// Randomized certification that evaluation maps of section spaces at general
// points reach the maximal possible rank.  Rank is lower semicontinuous, so
// a single sample achieving the expected rank certifies the generic
// statement over the chosen prime; never reaching it over several trials is
// reported, not proven.

namespace mrv {

struct TrialConfig {
  FieldSpec field{};
  int trials = 5;
  std::uint64_t master_seed = 0;
  int quotient_samples = 3;  // random quotients tried per trial when needed
};

enum class Verdict { certified, refuted_at_sample, error };
std::string to_string(Verdict v);

struct RankReport {
  std::string statement;        // short human-readable label
  i64 space_dim = 0;            // dimension of the section space
  i64 target_dim = 0;           // total fiber dimension imposed
  i64 expected = 0;             // min(space_dim, target_dim)
  std::vector<i64> achieved;    // best rank reached in each trial
  Verdict verdict = Verdict::error;
  std::string note;
};

// Rank of H^0(T(l)) evaluated at a general points of P^n.
RankReport verify_sigma(int n, i64 ell, i64 a, const TrialConfig& cfg);

// The critical square case for T(l): q points plus, when the fiber split
// leaves a remainder r > 0, a random r-dimensional quotient at one more
// point.  Expected rank is the full h^0(T(l)).
RankReport verify_tau(int n, i64 ell, const TrialConfig& cfg);

// Rank of H^0(Omega^p(k)) evaluated at a general points of P^n.
RankReport verify_omega(int n, int p, i64 k, i64 a, const TrialConfig& cfg);

struct ConsistencyReport {
  RankReport tangent;
  RankReport omega;
  bool consistent = false;  // equal expectations and per-trial ranks
};

// Cross-check of the two evaluation models through Omega^{n-1}(l) = T(l-n-1):
// both sides are evaluated at the same sampled points in each trial.
ConsistencyReport consistency_tangent_omega(int n, i64 ell, i64 a, const TrialConfig& cfg);

}  // namespace mrv
