#pragma once

#include <functional>
#include <span>
#include <vector>

#include "geomed/centering.hpp"
#include "geomed/core.hpp"
#include "geomed/rng.hpp"

namespace geomed {

struct SearchInterval {
  double lo = 0.0;
  double hi = 0.0;
  double lipschitz = 1.0;  // L > 0
  double tol = 1.0;        // additive oracle error bound

  // ceil(log_{3/2}(L (hi - lo) / tol)), clamped at 0
  long budget() const;
};

// Trisection over a noisy additive oracle, keeping the best queried point.
// Output value is within 4 tol of the interval minimum when |oracle - f| <=
// tol and f is convex L-Lipschitz. At most 2 budget + 1 fresh evaluations.
double one_dim_minimizer(const SearchInterval& iv,
                         const std::function<double(double)>& oracle);

// Schedule constants of the outer driver; the line search needs f_tilde for
// the conservative +-6 f_tilde search interval.
struct ScheduleParams {
  double f_tilde = 0.0;  // f(x0)
  double t1 = 0.0;       // 1 / (400 f_tilde)
  double growth = 1.0;   // 1 + beta
  double t_star = 0.0;   // 2 N / (eps_star f_tilde)
  long k = 0;            // max i with t_i <= t_star
};

struct LineSearchResult {
  std::vector<double> x;
  double ft_value = 0.0;  // f_{t_next} at x
  double alpha = 0.0;
  long probes = 0;  // distinct LocalCenter anchors evaluated
};

// Line search along dir (unit norm or zero) from y: minimize
// q(alpha) = f_{t'}(LocalCenter(y + alpha dir, t', eps_O)) by trisection and
// return the centered point at the best alpha. dir = 0 collapses to a single
// centering call (the oracle is constant in alpha). In practical mode a
// caller-supplied eigendirection (the driver computes one per outer step
// anyway) is rescaled into the shared surrogate instead of re-running the
// power method per probe.
LineSearchResult line_search(const PointSet& ps, std::span<const double> y,
                             double t, double t_next,
                             std::span<const double> dir, double eps,
                             const ScheduleParams& sched,
                             const SolverConfig& cfg, Rng& rng,
                             SolveCounters* counters = nullptr,
                             const EigEstimate* dir_eig = nullptr);

}  // namespace geomed
