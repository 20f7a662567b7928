#pragma once

#include <string>
#include <vector>

#include "mrv/exactdims.hpp"
#include "mrv/maxrank.hpp"

// Graded Betti numbers of a general points in P^n, computed from evaluation
// ranks of twisted p-form sections, and their comparison against the
// closed-form predictions.

namespace mrv {

// Computed table: per trial, a fresh point sample; every entry takes the
// minimum over trials (rank is generically maximal, so cokernel and kernel
// dimensions are generically minimal).  Entries whose rank computation
// would be polluted by higher cohomology are flagged a_known = false.
BettiTable betti_table(int n, i64 a, const TrialConfig& cfg,
                       std::vector<std::string>* warnings = nullptr);

struct MrcComparison {
  BettiTable computed;
  BettiTable predicted;
  std::vector<bool> a_match;  // per p; true when unknown entries are excluded
  std::vector<bool> b_match;
  bool all_match = false;
  std::vector<std::string> warnings;
};

// Entry-by-entry diff; throws std::invalid_argument when the tables do not
// describe the same (n, a).
MrcComparison compare_mrc(const BettiTable& computed, const BettiTable& predicted);

struct Theorem1Check {
  Theorem1Prediction predicted;
  i64 computed_a_nm2 = 0;
  i64 computed_b_nm1 = 0;
  bool known = true;
  bool match = false;
};

// Checks just the middle pair (a_{n-2}, b_{n-1}) against its prediction.
Theorem1Check theorem1_check(int n, i64 a, const TrialConfig& cfg);

}  // namespace mrv
