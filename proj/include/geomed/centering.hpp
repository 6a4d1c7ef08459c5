#pragma once

#include <span>
#include <vector>

#include "geomed/core.hpp"
#include "geomed/rng.hpp"
#include "geomed/spectral.hpp"

namespace geomed {

struct CenterOutcome {
  std::vector<double> x;
  double value = 0.0;  // f_t(x)
  int iters = 0;
  double ball_radius = 0.0;  // 1/(49 t)
  std::vector<double> anchor;
};

struct CenterOptions {
  bool early_exit = true;  // off in paper_faithful mode
  // Reuse a surrogate built by the caller instead of running ApproxMinEig at
  // the anchor (practical-mode line search shares one per search).
  const RankOneSurrogate* shared_q = nullptr;
  // Optional feasible-start hint; used only if it does not increase f_t.
  std::span<const double> warm_start;
};

// Minimize f_t over the ball |x - y| <= 1/(49 t): build the rank-1 surrogate
// Q at y, then iterate exact ball-constrained steps on the model
// <grad f_t(x_i), x - x_i> + 4 |x - x_i|^2_Q for k = ceil(64 ln(1/eps))
// steps. Iterations that reach a bitwise fixed point stop early (the
// remaining steps would be identity).
CenterOutcome local_center(const PointSet& ps, std::span<const double> y,
                           double t, double eps, Rng& rng,
                           const CenterOptions& opts = {},
                           SolveCounters* counters = nullptr);

}  // namespace geomed
