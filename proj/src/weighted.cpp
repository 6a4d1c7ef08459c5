#include "geomed/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "geomed/accurate_median.hpp"
#include "geomed/stochastic.hpp"

namespace geomed {

RoundedWeights round_weights(std::span<const double> w, double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("round_weights: eps must be in (0,1)");
  RoundedWeights rw;
  rw.eps_prime = eps / 5.0;
  rw.W = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(rw.W > 0.0))
    throw std::invalid_argument("round_weights: weights sum to zero");
  const double n = static_cast<double>(w.size());
  const double scale = n / (rw.eps_prime * rw.W);
  rw.w1.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double w0 = scale * w[i];
    rw.W0 += w0;
    rw.w1[i] = std::floor(w0);
    rw.W1 += rw.w1[i];
  }
  if (!(rw.W1 > 0.0))
    throw SolverError("round_weights: all rounded weights are zero");
  return rw;
}

AliasSampler::AliasSampler(std::span<const double> w) {
  const std::size_t n = w.size();
  if (n == 0) throw std::invalid_argument("AliasSampler: empty weights");
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(total > 0.0))
    throw std::invalid_argument("AliasSampler: weights must not all be zero");
  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(w[i] >= 0.0))
      throw std::invalid_argument("AliasSampler: negative weight");
    scaled[i] = w[i] * static_cast<double>(n) / total;
  }
  std::vector<std::size_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    (scaled[i] < 1.0 ? small : large).push_back(i);
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    const std::size_t l = large.back();
    small.pop_back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (std::size_t i : large) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
  for (std::size_t i : small) {  // rounding leftovers
    prob_[i] = 1.0;
    alias_[i] = i;
  }
}

std::size_t AliasSampler::sample(Rng& rng) const {
  const std::size_t idx = rng.uniform_index(prob_.size());
  return rng.uniform() < prob_[idx] ? idx : alias_[idx];
}

namespace {

bool integral_small_sum(const PointSet& ps, double eps) {
  if (!ps.weighted()) return true;
  double sum = 0.0;
  for (double w : ps.weights) {
    if (w != std::floor(w)) return false;
    sum += w;
  }
  return sum <= 5.0 * static_cast<double>(ps.n) / eps;
}

}  // namespace

MedianResult weighted_median(const PointSet& ps, double eps,
                             const SolverConfig& cfg, Rng& rng,
                             MethodChoice choice) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("weighted_median: eps must be in (0,1)");

  PointSet solve_ps;
  double target = eps;
  const bool passthrough = integral_small_sum(ps, eps);
  if (passthrough) {
    solve_ps = ps;  // weights already integral with bounded sum (or absent)
  } else {
    const RoundedWeights rw = round_weights(ps.weights, eps);
    solve_ps = PointSet::create(ps.coords, ps.n, ps.d, rw.w1);
    target = eps / 5.0;
  }

  const bool use_stochastic =
      choice == MethodChoice::stochastic ||
      (choice == MethodChoice::auto_rule &&
       eps > 1.0 / std::sqrt(static_cast<double>(ps.n)));
  MedianResult res;
  if (use_stochastic) {
    res = approximate_median(solve_ps, target, rng);
  } else {
    SolverConfig inner = cfg;
    inner.eps = target;
    res = accurate_median(solve_ps, inner, rng);
  }
  res.objective = eval_f(ps, res.x);  // original weights
  return res;
}

}  // namespace geomed
