#pragma once

#include "geomed/core.hpp"
#include "geomed/line_search.hpp"
#include "geomed/rng.hpp"

namespace geomed {

// t-schedule: t_i = t1 (1+beta)^(i-1), t1 = 1/(400 f_tilde), up to
// t_star = 2 N / (eps_star f_tilde).
ScheduleParams central_path_schedule(double f_tilde, double n_eff,
                                     const SolverConfig& cfg);
ScheduleParams central_path_schedule(const PointSet& ps,
                                     const SolverConfig& cfg);

// Interior-point driver: start at the mean, center once, then alternate
// ApproxMinEig and LineSearch along the schedule; output the final iterate
// (or the mean if it somehow scored better - never worse than the
// 2-approximation).
MedianResult accurate_median(const PointSet& ps, const SolverConfig& cfg,
                             Rng& rng);

}  // namespace geomed
