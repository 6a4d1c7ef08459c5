#include "geomed/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "geomed/vecops.hpp"
#include "geomed/weighted.hpp"

namespace geomed {

namespace {

std::vector<std::size_t> sample_indices(const PointSet& ps, std::size_t K,
                                        Rng& rng) {
  std::vector<std::size_t> out(K);
  if (ps.weighted()) {
    AliasSampler alias(ps.weights);
    for (std::size_t k = 0; k < K; ++k) out[k] = alias.sample(rng);
    return out;
  }
  if (K <= ps.n) {
    // partial Fisher-Yates, without replacement
    std::vector<std::size_t> idx(ps.n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t k = 0; k < K; ++k) {
      const std::size_t j = k + rng.uniform_index(ps.n - k);
      std::swap(idx[k], idx[j]);
      out[k] = idx[k];
    }
  } else {
    for (std::size_t k = 0; k < K; ++k) out[k] = rng.uniform_index(ps.n);
  }
  return out;
}

}  // namespace

double percentile_radius(std::vector<double> dists, int pct) {
  if (dists.empty())
    throw std::invalid_argument("percentile_radius: empty input");
  const std::size_t len = dists.size();
  std::size_t idx = static_cast<std::size_t>(
      std::ceil(static_cast<double>(pct) * static_cast<double>(len) / 100.0));
  idx = std::clamp<std::size_t>(idx, 1, len);
  std::nth_element(dists.begin(), dists.begin() + (idx - 1), dists.end());
  return dists[idx - 1];
}

CrudeEstimate crude_approximate(const PointSet& ps, std::size_t K, Rng& rng) {
  if (K < 1) throw std::invalid_argument("crude_approximate: K must be >= 1");
  const std::vector<std::size_t> s1 = sample_indices(ps, K, rng);
  const std::vector<std::size_t> s2 = sample_indices(ps, K, rng);

  CrudeEstimate best;
  best.k_samples = K;
  double best_alpha = std::numeric_limits<double>::infinity();
  std::vector<double> dists(K);
  for (std::size_t ii = 0; ii < K; ++ii) {
    const std::size_t i = s2[ii];
    for (std::size_t jj = 0; jj < K; ++jj)
      dists[jj] = std::sqrt(dist2(ps.row(i), ps.row(s1[jj])));
    const double alpha = percentile_radius(dists, 65);
    if (alpha < best_alpha) {
      best_alpha = alpha;
      best.center_index = i;
    }
  }
  best.radius = best_alpha;
  best.center.assign(ps.point(best.center_index),
                     ps.point(best.center_index) + ps.d);
  return best;
}

SgdParams make_sgd_params(const CrudeEstimate& crude, double n_eff,
                          double eps) {
  SgdParams p;
  const double ratio = 60.0 / eps;
  p.steps = static_cast<long>(std::ceil(ratio * ratio));
  p.eta = (6.0 * crude.radius / n_eff) * std::sqrt(2.0 / p.steps);
  p.ball_radius = 6.0 * crude.radius;
  p.start = crude.center;
  return p;
}

MedianResult approximate_median(const PointSet& ps, double eps, Rng& rng) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("approximate_median: eps must be in (0,1)");
  MedianResult res;
  res.method = "stochastic";
  res.seed = rng.base_seed();
  const std::size_t d = ps.d;
  const double n_eff = ps.total_weight();

  const std::size_t K =
      static_cast<std::size_t>(std::ceil(60.0 / eps));  // ceil(sqrt(T))
  const CrudeEstimate crude = crude_approximate(ps, K, rng);
  const SgdParams sgd = make_sgd_params(crude, n_eff, eps);

  const bool weighted = ps.weighted();
  AliasSampler alias = weighted ? AliasSampler(ps.weights) : AliasSampler();

  std::vector<double> x = sgd.start;
  std::vector<double> avg(d, 0.0);
  const double r2_max = sgd.ball_radius * sgd.ball_radius;
  for (long k = 0; k < sgd.steps; ++k) {
    axpy(1.0, x, avg);  // average of x^(1..T), accumulated before the update
    const std::size_t i =
        weighted ? alias.sample(rng) : rng.uniform_index(ps.n);
    const double* a = ps.point(i);
    const double dist = std::sqrt(dist2(x, {a, d}));
    if (dist > 0.0) {
      const double c = sgd.eta * n_eff / dist;
      for (std::size_t j = 0; j < d; ++j) x[j] -= c * (x[j] - a[j]);
    }
    // project back onto the crude ball
    double dev2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double e = x[j] - sgd.start[j];
      dev2 += e * e;
    }
    if (dev2 > r2_max) {
      const double c = sgd.ball_radius / std::sqrt(dev2);
      for (std::size_t j = 0; j < d; ++j)
        x[j] = sgd.start[j] + c * (x[j] - sgd.start[j]);
    }
  }
  scal(1.0 / static_cast<double>(sgd.steps), avg);

  res.x = std::move(avg);
  res.objective = eval_f(ps, res.x);
  res.outer_iters = sgd.steps;
  res.inner_evals = static_cast<long>(K) * static_cast<long>(K) + sgd.steps;
  return res;
}

double robust_bound_check(const PointSet& ps, std::span<const double> x,
                          std::span<const std::size_t> S) {
  const double n = static_cast<double>(ps.n);
  const double s = static_cast<double>(S.size());
  if (!(s < n / 2.0))
    throw std::invalid_argument("robust_bound_check: need |S| < n/2");
  std::vector<bool> in_s(ps.n, false);
  for (std::size_t i : S) in_s[i] = true;
  double max_dist = 0.0;
  for (std::size_t i = 0; i < ps.n; ++i) {
    if (in_s[i]) continue;
    max_dist = std::max(max_dist, std::sqrt(dist2(x, ps.row(i))));
  }
  return (2.0 * n - 2.0 * s) / (n - 2.0 * s) * max_dist;
}

}  // namespace geomed
