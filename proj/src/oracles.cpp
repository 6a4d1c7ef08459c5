#include "geomed/oracles.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "geomed/penalized.hpp"
#include "geomed/vecops.hpp"

namespace geomed {

namespace {

constexpr double kDenomFloor = 1e-300;

// subgradient of f at x excluding exact hits; returns sum of unit directions
// (weighted) and the weight of the coincident point if any
struct SubgradInfo {
  std::vector<double> g;
  double coincident_weight = 0.0;
  std::ptrdiff_t coincident_index = -1;
};

SubgradInfo subgradient_parts(const PointSet& ps, std::span<const double> x) {
  SubgradInfo info;
  info.g.assign(ps.d, 0.0);
  for (std::size_t i = 0; i < ps.n; ++i) {
    const double* a = ps.point(i);
    const double dist = std::sqrt(dist2(x, {a, ps.d}));
    if (dist < 1e-14 * (1.0 + nrm2(x))) {
      info.coincident_weight += ps.weight(i);
      info.coincident_index = static_cast<std::ptrdiff_t>(i);
      continue;
    }
    const double c = ps.weight(i) / dist;
    for (std::size_t j = 0; j < ps.d; ++j) info.g[j] += c * (x[j] - a[j]);
  }
  return info;
}

// one damped Newton step on f (smooth part); returns true on progress
bool newton_step_f(const PointSet& ps, std::vector<double>& x, double& fx) {
  const std::size_t d = ps.d;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < ps.n; ++i) {
    const double* a = ps.point(i);
    const double dist = std::max(std::sqrt(dist2(x, {a, d})), kDenomFloor);
    const double w = ps.weight(i);
    Eigen::VectorXd r(d);
    for (std::size_t j = 0; j < d; ++j) r[j] = x[j] - a[j];
    g += (w / dist) * r;
    H += (w / dist) * Eigen::MatrixXd::Identity(d, d) -
         (w / (dist * dist * dist)) * (r * r.transpose());
  }
  // tiny ridge keeps the collinear case solvable
  H += 1e-14 * H.trace() * Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd step = H.ldlt().solve(g);
  const double gn = g.norm();
  double scale = 1.0;
  for (int halving = 0; halving < 60; ++halving) {
    std::vector<double> trial(x);
    for (std::size_t j = 0; j < d; ++j) trial[j] -= scale * step[j];
    const double ft = eval_f(ps, trial);
    bool ok = ft < fx;
    if (!ok && ft <= fx * (1.0 + 1e-14)) {
      // value stalled at its ulp; accept on gradient reduction
      ok = nrm2(subgradient_parts(ps, trial).g) < 0.5 * gn;
    }
    if (ok) {
      x = std::move(trial);
      fx = ft;
      return true;
    }
    scale *= 0.5;
  }
  return false;
}

}  // namespace

std::vector<double> weiszfeld_polish_steps(const PointSet& ps,
                                           std::span<const double> x0,
                                           int steps) {
  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> next(ps.d);
  for (int it = 0; it < steps; ++it) {
    double denom = 0.0;
    fill_zero(next);
    for (std::size_t i = 0; i < ps.n; ++i) {
      const double* a = ps.point(i);
      const double dist =
          std::max(std::sqrt(dist2(x, {a, ps.d})), kDenomFloor);
      const double c = ps.weight(i) / dist;
      denom += c;
      for (std::size_t j = 0; j < ps.d; ++j) next[j] += c * a[j];
    }
    for (std::size_t j = 0; j < ps.d; ++j) next[j] /= denom;
    if (eval_f(ps, next) >= eval_f(ps, x)) break;
    x = next;
  }
  return x;
}

ReferenceSolution weiszfeld_reference(const PointSet& ps, double tol) {
  ReferenceSolution ref;
  ref.method = "weiszfeld_polished";

  if (ps.n == 1 || all_points_identical(ps)) {
    ref.x.assign(ps.point(0), ps.point(0) + ps.d);
    ref.objective = eval_f(ps, ref.x);
    ref.certified = true;
    return ref;
  }

  auto [psn, norm] = normalize(ps);
  std::vector<double> x = mean_point(psn);
  double fx = eval_f(psn, x);
  const double w_total = psn.total_weight();
  const int max_iters = 2000;

  for (int it = 0; it < max_iters; ++it) {
    ++ref.iters;
    const SubgradInfo sg = subgradient_parts(psn, x);
    const double gn = nrm2(sg.g);
    if (sg.coincident_index >= 0) {
      // vertex test: optimal iff the pull of the others is dominated by the
      // coincident weight
      if (gn <= sg.coincident_weight * (1.0 + 1e-12)) {
        ref.grad_norm = std::max(gn - sg.coincident_weight, 0.0);
        ref.certified = true;
        break;
      }
      // step off the vertex along the descent direction
      const double kick = 1e-8 * (1.0 + nrm2(x));
      for (std::size_t j = 0; j < psn.d; ++j) x[j] -= kick * sg.g[j] / gn;
      fx = eval_f(psn, x);
      continue;
    }
    if (gn <= tol * w_total) {
      ref.grad_norm = gn;
      ref.certified = true;
      break;
    }
    // Weiszfeld while far, Newton polish once close
    if (gn > 1e-3 * w_total) {
      x = weiszfeld_polish_steps(psn, x, 1);
      fx = eval_f(psn, x);
    } else if (!newton_step_f(psn, x, fx)) {
      // no Newton progress; certify with what we have
      ref.grad_norm = gn;
      ref.certified = gn <= 1e-9 * w_total;
      break;
    }
  }
  if (!ref.certified && ref.grad_norm == 0.0)
    ref.grad_norm = nrm2(subgradient_parts(psn, x).g);

  ref.x = norm.unapply_point(x);
  ref.objective = eval_f(ps, ref.x);
  return ref;
}

ReferenceSolution grid_reference(const PointSet& ps, int refinements) {
  if (ps.d > 3)
    throw std::invalid_argument("grid_reference: only d <= 3 supported");
  ReferenceSolution ref;
  ref.method = "grid";
  std::vector<double> lo(ps.d), hi(ps.d);
  for (std::size_t j = 0; j < ps.d; ++j) {
    lo[j] = hi[j] = ps.coords[j];
    for (std::size_t i = 1; i < ps.n; ++i) {
      lo[j] = std::min(lo[j], ps.coords[i * ps.d + j]);
      hi[j] = std::max(hi[j], ps.coords[i * ps.d + j]);
    }
  }
  std::vector<double> center(ps.d), best(ps.d), probe(ps.d);
  for (std::size_t j = 0; j < ps.d; ++j) center[j] = 0.5 * (lo[j] + hi[j]);
  best = center;
  double best_f = eval_f(ps, best);
  std::vector<double> half(ps.d);
  for (std::size_t j = 0; j < ps.d; ++j)
    half[j] = std::max(0.5 * (hi[j] - lo[j]), 1e-12);

  const int side = 9;  // per-axis samples per refinement
  for (int r = 0; r < refinements; ++r) {
    const std::size_t cells = static_cast<std::size_t>(
        std::pow(static_cast<double>(side), static_cast<double>(ps.d)));
    for (std::size_t c = 0; c < cells; ++c) {
      std::size_t rem = c;
      for (std::size_t j = 0; j < ps.d; ++j) {
        const int idx = static_cast<int>(rem % side);
        rem /= side;
        probe[j] = center[j] + half[j] * (2.0 * idx / (side - 1) - 1.0);
      }
      const double f = eval_f(ps, probe);
      if (f < best_f) {
        best_f = f;
        best = probe;
      }
    }
    center = best;
    for (double& h : half) h *= 0.45;
  }
  ref.x = best;
  ref.objective = best_f;
  ref.certified = true;
  ref.iters = refinements;
  return ref;
}

std::vector<double> central_path_reference(const PointSet& ps, double t,
                                           double tol,
                                           std::span<const double> start) {
  if (!(t > 0.0))
    throw std::invalid_argument("central_path_reference: t must be positive");
  const std::size_t d = ps.d;
  std::vector<double> x =
      start.empty() ? mean_point(ps) : std::vector<double>(start.begin(), start.end());

  PathState st;
  std::vector<double> grad(d);
  double value = 0.0;
  eval_ft_inplace(ps, x, t, st, &grad, &value);

  // fp summation noise in the gradient scales like t W eps; below that the
  // damped phase cannot certify strict decrease
  const double noise_floor =
      256.0 * 2.220446049250313e-16 * t * ps.total_weight();

  for (int it = 0; it < 500; ++it) {
    if (nrm2(grad) <= tol) return x;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(d, d);
    const double t2 = t * t;
    for (std::size_t i = 0; i < ps.n; ++i) {
      const double* a = ps.point(i);
      const double g = st.g[i];
      const double c = ps.weight(i) * t2 / (1.0 + g);
      Eigen::VectorXd r(d);
      for (std::size_t j = 0; j < d; ++j) r[j] = x[j] - a[j];
      H += c * Eigen::MatrixXd::Identity(d, d) -
           (c * t2 / (g * (1.0 + g))) * (r * r.transpose());
    }
    Eigen::VectorXd gv(d);
    for (std::size_t j = 0; j < d; ++j) gv[j] = grad[j];
    Eigen::VectorXd step = H.ldlt().solve(gv);
    const double gn = nrm2(grad);
    double scale = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 60; ++halving) {
      std::vector<double> trial(x);
      for (std::size_t j = 0; j < d; ++j) trial[j] -= scale * step[j];
      PathState st_trial;
      std::vector<double> grad_trial(d);
      double value_trial = 0.0;
      eval_ft_inplace(ps, trial, t, st_trial, &grad_trial, &value_trial);
      // in the quadratic tail the decrease is below the value's ulp; accept
      // on gradient reduction instead
      const bool ok = value_trial < value ||
                      (value_trial <= value * (1.0 + 1e-14) &&
                       nrm2(grad_trial) < 0.5 * gn);
      if (ok) {
        x = std::move(trial);
        st = std::move(st_trial);
        grad = std::move(grad_trial);
        value = value_trial;
        moved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!moved) break;
  }
  if (nrm2(grad) > std::max(tol, noise_floor))
    throw SolverError("central_path_reference: Newton did not converge");
  return x;
}

double fd_gradient_check(const ValueGradFn& fn, std::span<const double> x,
                         double h) {
  const std::size_t d = x.size();
  std::vector<double> grad(d), dummy(d);
  fn(x, grad);
  const double gn = std::max(nrm2(grad), 1e-30);
  std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
  double worst = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    const double fp = fn(xp, dummy);
    const double fm = fn(xm, dummy);
    xp[j] = x[j];
    xm[j] = x[j];
    const double fd = (fp - fm) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - grad[j]) / gn);
  }
  return worst;
}

double fd_hessian_check(const GradFn& grad_fn, const HessVecFn& hess_fn,
                        std::span<const double> x, std::span<const double> z,
                        double h) {
  const std::size_t d = x.size();
  std::vector<double> hz(d), gp(d), gm(d);
  hess_fn(x, z, hz);
  const double hn = std::max(nrm2(hz), 1e-30);
  const double zn = std::max(nrm2(z), 1e-30);
  std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
  for (std::size_t j = 0; j < d; ++j) {
    xp[j] += h * z[j] / zn;
    xm[j] -= h * z[j] / zn;
  }
  grad_fn(xp, gp);
  grad_fn(xm, gm);
  double worst = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double fd = zn * (gp[j] - gm[j]) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - hz[j]) / hn);
  }
  return worst;
}

}  // namespace geomed
