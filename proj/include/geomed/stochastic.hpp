#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "geomed/core.hpp"
#include "geomed/rng.hpp"

namespace geomed {

struct CrudeEstimate {
  std::vector<double> center;  // one of the input points
  std::size_t center_index = 0;
  double radius = 0.0;  // 65th percentile of distances to the first sample
  std::size_t k_samples = 0;
};

struct SgdParams {
  long steps = 0;           // T = ceil((60/eps)^2)
  double eta = 0.0;         // (6 lambda / N) sqrt(2/T)
  double ball_radius = 0.0; // 6 lambda
  std::vector<double> start;
};

// Order statistic at 1-based index ceil(pct/100 * len) of the ascending sort.
double percentile_radius(std::vector<double> dists, int pct);

// Percentile-based constant approximation: sample S1, S2 of size K, pick the
// member of S2 with the smallest 65th-percentile distance to S1. Sampling is
// without replacement when K <= n (uniform case); weighted instances sample
// with replacement proportional to weight.
CrudeEstimate crude_approximate(const PointSet& ps, std::size_t K, Rng& rng);

SgdParams make_sgd_params(const CrudeEstimate& crude, double n_eff, double eps);

// Projected stochastic subgradient descent inside the crude ball; outputs the
// uniform average of all T iterates. O(d) per step after the crude phase.
MedianResult approximate_median(const PointSet& ps, double eps, Rng& rng);

// Right-hand side of the robustness bound
// (2n - 2|S|)/(n - 2|S|) * max_{i not in S} |a_i - x|; test-facing.
double robust_bound_check(const PointSet& ps, std::span<const double> x,
                          std::span<const std::size_t> S);

}  // namespace geomed
