#include "geomed/line_search.hpp"

#include <cmath>
#include <map>

#include "geomed/penalized.hpp"
#include "geomed/spectral.hpp"
#include "geomed/vecops.hpp"

namespace geomed {

long SearchInterval::budget() const {
  const double len = hi - lo;
  if (!(len > 0.0) || !(lipschitz > 0.0) || !(tol > 0.0)) return 0;
  const double arg = lipschitz * len / tol;
  if (arg <= 1.0) return 0;
  return static_cast<long>(std::ceil(std::log(arg) / std::log(1.5)));
}

double one_dim_minimizer(const SearchInterval& iv,
                         const std::function<double(double)>& oracle) {
  if (!(iv.lo <= iv.hi)) throw std::invalid_argument("one_dim_minimizer: lo > hi");
  auto eval = [&](double a) {
    const double v = oracle(a);
    if (!std::isfinite(v))
      throw SolverError("one_dim_minimizer: non-finite oracle value");
    return v;
  };
  double best_x = iv.lo;
  double best_v = eval(best_x);
  double yl = iv.lo, yu = iv.hi;
  const long budget = iv.budget();
  for (long i = 0; i < budget; ++i) {
    const double zl = (2.0 * yl + yu) / 3.0;
    const double zu = (yl + 2.0 * yu) / 3.0;
    const double gl = eval(zl);
    const double gu = eval(zu);
    if (gl <= gu) {  // ties keep the left branch
      yu = zu;
      if (gl <= best_v) {
        best_v = gl;
        best_x = zl;
      }
    } else {
      yl = zl;
      if (gu <= best_v) {
        best_v = gu;
        best_x = zu;
      }
    }
  }
  return best_x;
}

LineSearchResult line_search(const PointSet& ps, std::span<const double> y,
                             double t, double t_next,
                             std::span<const double> dir, double eps,
                             const ScheduleParams& sched,
                             const SolverConfig& cfg, Rng& rng,
                             SolveCounters* counters,
                             const EigEstimate* dir_eig) {
  if (!(t > 0.0) || !(t_next >= t))
    throw std::invalid_argument("line_search: need 0 < t <= t_next");
  const std::size_t d = ps.d;
  const double n_eff = ps.total_weight();
  const double eps_o = cfg.eps_line_oracle(eps, n_eff);
  const bool practical = cfg.mode == Mode::practical;
  const double ball_radius = 1.0 / (49.0 * t_next);

  CenterOptions lc_opts;
  lc_opts.early_exit = practical;

  LineSearchResult res;

  const double dir_norm = dir.empty() ? 0.0 : nrm2(dir);
  if (dir_norm == 0.0) {
    // constant oracle: the trisection would return its first query
    CenterOutcome c = local_center(ps, y, t_next, eps_o, rng, lc_opts, counters);
    res.x = std::move(c.x);
    res.ft_value = c.value;
    res.alpha = 0.0;
    res.probes = 1;
    return res;
  }

  // The practical interval covers the central-path movement bound 6 beta / t
  // plus centering slack, instead of the conservative +-6 f_tilde.
  SearchInterval iv;
  if (practical) {
    const double half = (6.0 * cfg.step_factor + 0.04) / t_next;
    iv.lo = -half;
    iv.hi = half;
  } else {
    iv.lo = -6.0 * sched.f_tilde;
    iv.hi = 6.0 * sched.f_tilde;
  }
  iv.lipschitz = t_next * n_eff;
  iv.tol = eps_o;
  if (practical) {
    // Anchor offsets well below the centering ball radius cannot move the
    // ball minimum, so alpha only needs resolving to a fraction of it.
    iv.tol = std::max(iv.tol, iv.lipschitz * ball_radius / 8.0);
  }

  // One surrogate per search in practical mode; the anchors all live in an
  // O(1/t) ball where the Hessian moves by at most a constant factor.
  RankOneSurrogate shared_q;
  if (practical) {
    PathState st = make_path_state(ps, y, t_next);
    if (counters) ++counters->ft_evals;
    if (dir_eig && !dir_eig->degenerate) {
      // rescale the caller's direction at t_next: lambda = u^T H u at y
      std::vector<double> hu(d);
      hess_matvec(st, dir_eig->u, hu);
      EigEstimate e;
      e.u = dir_eig->u;
      e.t2w = st.t2w();
      e.lambda = std::clamp(dot(e.u, hu), 0.0, e.t2w);
      shared_q = make_surrogate(e);
    } else {
      shared_q = make_surrogate(approx_min_eig(st, std::min(eps_o, 0.2499),
                                               rng, cfg.power_iter_constant,
                                               counters, /*rayleigh_exit=*/true));
    }
    lc_opts.shared_q = &shared_q;
  }

  struct Probe {
    double value;
    std::vector<double> x;
  };
  std::map<double, Probe> memo;
  std::vector<double> anchor(d);
  const Probe* best = nullptr;  // incumbent; points toward the minimizer

  auto oracle = [&](double a) {
    auto it = memo.find(a);
    if (it != memo.end()) return it->second.value;
    for (std::size_t j = 0; j < d; ++j) anchor[j] = y[j] + a * dir[j];
    if (practical && best) lc_opts.warm_start = best->x;
    CenterOutcome c = local_center(ps, anchor, t_next, eps_o, rng, lc_opts,
                                   counters);
    auto [pos, inserted] =
        memo.emplace(a, Probe{c.value, std::move(c.x)});
    if (!best || pos->second.value < best->value) best = &pos->second;
    ++res.probes;
    return pos->second.value;
  };

  const double alpha_best = one_dim_minimizer(iv, oracle);
  Probe& chosen = memo.at(alpha_best);
  res.x = std::move(chosen.x);
  res.ft_value = chosen.value;
  res.alpha = alpha_best;
  return res;
}

}  // namespace geomed
