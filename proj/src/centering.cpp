#include "geomed/centering.hpp"

#include <cmath>
#include <cstring>

#include "geomed/penalized.hpp"
#include "geomed/vecops.hpp"

namespace geomed {

CenterOutcome local_center(const PointSet& ps, std::span<const double> y,
                           double t, double eps, Rng& rng,
                           const CenterOptions& opts, SolveCounters* counters) {
  if (!(t > 0.0)) throw std::invalid_argument("local_center: t must be positive");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("local_center: eps must be in (0,1)");
  const std::size_t d = ps.d;
  if (counters) ++counters->local_centers;

  CenterOutcome out;
  out.ball_radius = 1.0 / (49.0 * t);
  out.anchor.assign(y.begin(), y.end());
  const double alpha = out.ball_radius * out.ball_radius;

  PathState st;
  std::vector<double> grad(d);
  double value = 0.0;
  std::vector<double> x(y.begin(), y.end());
  if (!opts.warm_start.empty()) {
    // start from the hint clipped into the ball; the start point only
    // changes the step count, descent still lands at the ball minimum
    x.assign(opts.warm_start.begin(), opts.warm_start.end());
    std::vector<double> diff(d);
    sub(x, y, diff);
    const double dn = nrm2(diff);
    if (dn > out.ball_radius) {
      const double c = out.ball_radius / dn;
      for (std::size_t j = 0; j < d; ++j) x[j] = y[j] + c * diff[j];
    }
  }
  eval_ft_inplace(ps, x, t, st, &grad, &value, counters);

  RankOneSurrogate q;
  if (opts.shared_q) {
    q = *opts.shared_q;
  } else {
    PathState st_anchor;
    const PathState* eig_state = &st;
    if (!opts.warm_start.empty()) {
      eval_ft_inplace(ps, y, t, st_anchor, nullptr, nullptr, counters);
      eig_state = &st_anchor;
    }
    q = make_surrogate(approx_min_eig(*eig_state, std::min(eps, 0.2499), rng,
                                      /*iter_constant=*/10.0, counters,
                                      opts.early_exit));
  }
  // v = sqrt(drop/scale) u puts Q in the I - v v^T form of the ball QP
  const double rho = q.scale > 0.0 ? q.drop / q.scale : 0.0;
  std::vector<double> v(q.u);
  scal(std::sqrt(std::max(rho, 0.0)), v);

  const long k_steps = std::max<long>(
      static_cast<long>(std::ceil(64.0 * std::log(1.0 / eps))), 1);
  thread_local std::vector<double> qinv_g, z, x_next, x_prev2;
  qinv_g.resize(d);
  z.resize(d);
  x_next.resize(d);
  x_prev2.clear();
  double value_prev = value;
  double eta_ws = 0.0;  // boundary-root warm start across steps

  auto bits_equal = [d](const std::vector<double>& a,
                        const std::vector<double>& b) {
    return !b.empty() &&
           std::memcmp(a.data(), b.data(), d * sizeof(double)) == 0;
  };

  for (long i = 0; i < k_steps; ++i) {
    surrogate_solve(q, grad, qinv_g);
    for (std::size_t j = 0; j < d; ++j) z[j] = x[j] - qinv_g[j] / 8.0;
    ball_rank1_qp_into(y, z, v, alpha, x_next, &eta_ws);
    if (counters) ++counters->inner_steps;
    ++out.iters;
    if (bits_equal(x_next, x)) break;  // fixed point: rest is identity
    if (bits_equal(x_next, x_prev2)) {
      // 2-cycle: the remaining iterations alternate; parity picks the state
      // the full-length loop would end on
      const long remaining = k_steps - 1 - i;
      if (remaining % 2 == 0) {
        x.swap(x_next);
        eval_ft_inplace(ps, x, t, st, &grad, &value, counters);
      }
      break;
    }
    x_prev2 = x;
    x.swap(x_next);
    value_prev = value;
    eval_ft_inplace(ps, x, t, st, &grad, &value, counters);
    if (!std::isfinite(value))
      throw SolverError("local_center: non-finite objective");
    if (opts.early_exit) {
      const double gap_est = std::max(value_prev - value, 0.0);
      if (nrm2(grad) * out.ball_radius <=
          1e-3 * eps * std::max(gap_est, 1e-300))
        break;
      if (std::abs(value_prev - value) < 1e-15 * std::abs(value)) break;
    }
  }

  out.x = std::move(x);
  out.value = value;
  return out;
}

}  // namespace geomed
