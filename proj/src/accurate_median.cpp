#include "geomed/accurate_median.hpp"

#include <cmath>

#include "geomed/oracles.hpp"
#include "geomed/penalized.hpp"
#include "geomed/spectral.hpp"
#include "geomed/vecops.hpp"

namespace geomed {

ScheduleParams central_path_schedule(double f_tilde, double n_eff,
                                     const SolverConfig& cfg) {
  if (!(f_tilde > 0.0))
    throw SolverError("central_path_schedule: f_tilde must be positive "
                      "(degenerate input not short-circuited)");
  ScheduleParams sp;
  sp.f_tilde = f_tilde;
  sp.t1 = 1.0 / (400.0 * f_tilde);
  sp.growth = 1.0 + cfg.step_factor;
  sp.t_star = 2.0 * n_eff / (cfg.eps_star() * f_tilde);
  sp.k = static_cast<long>(
             std::floor(std::log(sp.t_star / sp.t1) / std::log(sp.growth))) +
         1;
  return sp;
}

ScheduleParams central_path_schedule(const PointSet& ps,
                                     const SolverConfig& cfg) {
  return central_path_schedule(eval_f(ps, mean_point(ps)), ps.total_weight(),
                               cfg);
}

MedianResult accurate_median(const PointSet& ps, const SolverConfig& cfg,
                             Rng& rng) {
  cfg.validate();
  MedianResult res;
  res.method = "accurate";
  res.seed = cfg.seed;

  if (ps.n == 1 || all_points_identical(ps)) {
    res.x.assign(ps.point(0), ps.point(0) + ps.d);
    res.objective = eval_f(ps, res.x);
    return res;
  }

  auto [psn, norm] = normalize(ps);
  SolveCounters counters;
  const double n_eff = psn.total_weight();
  const std::vector<double> x0 = mean_point(psn);
  const double f_tilde = eval_f(psn, x0);
  const ScheduleParams sched = central_path_schedule(f_tilde, n_eff, cfg);
  if (sched.k + 1 > cfg.max_outer_iters)
    throw SolverError("accurate_median: schedule exceeds max_outer_iters");

  const double eps_v = cfg.eps_v(n_eff);
  const double eps_c = cfg.eps_c(n_eff);

  const std::vector<double> zero_dir;
  LineSearchResult ls = line_search(psn, x0, sched.t1, sched.t1, zero_dir,
                                    eps_c, sched, cfg, rng, &counters);
  std::vector<double> x = std::move(ls.x);

  double t = sched.t1;
  for (long i = 1; i <= sched.k; ++i) {
    const double t_next = t * sched.growth;
    PathState st = make_path_state(psn, x, t);
    ++counters.ft_evals;
    EigEstimate eig =
        approx_min_eig(st, eps_v, rng, cfg.power_iter_constant, &counters,
                       cfg.mode == Mode::practical);
    ls = line_search(psn, x, t, t_next, eig.u, eps_c, sched, cfg, rng,
                     &counters, &eig);
    x = std::move(ls.x);
    if (!all_finite(x)) throw SolverError("accurate_median: non-finite iterate");
    t = t_next;
  }

  // success-probability amplification: never return worse than the mean
  if (eval_f(psn, x) > f_tilde) x = x0;

  if (cfg.mode == Mode::practical && cfg.weiszfeld_polish) {
    x = weiszfeld_polish_steps(psn, x, 50);
  }

  res.x = norm.unapply_point(x);
  res.objective = eval_f(ps, res.x);
  res.outer_iters = sched.k + 1;
  res.inner_evals = counters.ft_evals;
  return res;
}

}  // namespace geomed
