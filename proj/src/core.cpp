#include "geomed/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "geomed/parallel.hpp"
#include "geomed/vecops.hpp"

namespace geomed {

PointSet PointSet::create(std::vector<double> coords, std::size_t n,
                          std::size_t d, std::vector<double> weights) {
  if (n < 1 || d < 1) throw std::invalid_argument("PointSet: need n >= 1, d >= 1");
  if (coords.size() != n * d)
    throw std::invalid_argument("PointSet: coords size != n*d");
  if (!all_finite(coords))
    throw std::invalid_argument("PointSet: non-finite coordinate");
  if (!weights.empty()) {
    if (weights.size() != n)
      throw std::invalid_argument("PointSet: weights size != n");
    double sum = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0) || !std::isfinite(w))
        throw std::invalid_argument("PointSet: weights must be finite and >= 0");
      sum += w;
    }
    if (sum <= 0.0)
      throw std::invalid_argument("PointSet: weights must not all be zero");
    // drop zero-weight points; they contribute nothing to f
    if (std::any_of(weights.begin(), weights.end(),
                    [](double w) { return w == 0.0; })) {
      std::vector<double> c2, w2;
      c2.reserve(coords.size());
      w2.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (weights[i] == 0.0) continue;
        c2.insert(c2.end(), coords.begin() + i * d, coords.begin() + (i + 1) * d);
        w2.push_back(weights[i]);
      }
      coords = std::move(c2);
      weights = std::move(w2);
      n = weights.size();
    }
  }
  PointSet ps;
  ps.coords = std::move(coords);
  ps.weights = std::move(weights);
  ps.n = n;
  ps.d = d;
  ps.total_weight_ =
      ps.weights.empty()
          ? static_cast<double>(n)
          : std::accumulate(ps.weights.begin(), ps.weights.end(), 0.0);
  return ps;
}

SolverConfig SolverConfig::make(double eps, Mode mode, std::uint64_t seed) {
  SolverConfig cfg;
  cfg.eps = eps;
  cfg.mode = mode;
  cfg.step_factor = (mode == Mode::paper_faithful) ? 1.0 / 600.0 : 1.0 / 60.0;
  cfg.seed = seed;
  cfg.validate();
  return cfg;
}

void SolverConfig::validate() const {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("SolverConfig: eps must be in (0,1)");
  if (!(step_factor > 0.0))
    throw std::invalid_argument("SolverConfig: step_factor must be positive");
  if (mode == Mode::paper_faithful && step_factor > 1.0 / 600.0 + 1e-18)
    throw std::invalid_argument(
        "SolverConfig: paper_faithful requires step_factor <= 1/600");
  if (max_outer_iters < 1)
    throw std::invalid_argument("SolverConfig: max_outer_iters must be >= 1");
}

double SolverConfig::eps_v(double n_eff) const {
  const double r = eps_star() / (7.0 * n_eff);
  const double base = 0.125 * r * r;
  if (mode == Mode::practical) return std::max(base, kTolFloor);
  return base;
}

double SolverConfig::eps_c(double n_eff) const {
  return std::pow(eps_v(n_eff) / 36.0, 1.5);
}

double SolverConfig::eps_line_oracle(double eps_arg, double n_eff) const {
  const double r = eps_arg * eps_star() / (160.0 * n_eff * n_eff);
  const double base = r * r;
  if (mode == Mode::practical) return std::max(base, kTolFloor);
  return base;
}

double eval_f(const PointSet& ps, std::span<const double> x) {
  if (x.size() != ps.d) throw std::invalid_argument("eval_f: dimension mismatch");
  if (!all_finite(x)) throw std::invalid_argument("eval_f: non-finite x");
  const bool wide = ps.d > 64;
  if (ps.n <= par::kBlock) {
    double f = 0.0;
    for (std::size_t i = 0; i < ps.n; ++i) {
      const double d2 =
          wide ? dist2_compensated(x, ps.row(i)) : dist2(x, ps.row(i));
      f += ps.weight(i) * std::sqrt(d2);
    }
    return f;
  }
  std::vector<double> partial(par::num_blocks(ps.n), 0.0);
  par::for_blocks(ps.n, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double d2 = wide ? dist2_compensated(x, ps.row(i))
                             : dist2(x, ps.row(i));
      s += ps.weight(i) * std::sqrt(d2);
    }
    partial[b] = s;
  });
  double f = 0.0;
  for (double p : partial) f += p;
  return f;
}

std::vector<double> mean_point(const PointSet& ps) {
  std::vector<double> m(ps.d, 0.0);
  const std::size_t nb = par::num_blocks(ps.n);
  std::vector<double> partial(nb * ps.d, 0.0);
  par::for_blocks(ps.n, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    double* acc = partial.data() + b * ps.d;
    for (std::size_t i = lo; i < hi; ++i) {
      const double w = ps.weight(i);
      const double* a = ps.point(i);
      for (std::size_t j = 0; j < ps.d; ++j) acc[j] += w * a[j];
    }
  });
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t j = 0; j < ps.d; ++j) m[j] += partial[b * ps.d + j];
  const double w_total = ps.total_weight();
  for (double& v : m) v /= w_total;
  return m;
}

bool all_points_identical(const PointSet& ps) {
  const double* first = ps.point(0);
  for (std::size_t i = 1; i < ps.n; ++i) {
    const double* a = ps.point(i);
    for (std::size_t j = 0; j < ps.d; ++j)
      if (a[j] != first[j]) return false;
  }
  return true;
}

PointSet Normalization::apply(const PointSet& ps) const {
  std::vector<double> c(ps.coords.size());
  const double inv = 1.0 / scale;
  for (std::size_t i = 0; i < ps.n; ++i)
    for (std::size_t j = 0; j < ps.d; ++j)
      c[i * ps.d + j] = (ps.coords[i * ps.d + j] - shift[j]) * inv;
  return PointSet::create(std::move(c), ps.n, ps.d, ps.weights);
}

std::vector<double> Normalization::apply_point(std::span<const double> x) const {
  std::vector<double> y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) y[j] = (x[j] - shift[j]) / scale;
  return y;
}

std::vector<double> Normalization::unapply_point(
    std::span<const double> x) const {
  std::vector<double> y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) y[j] = x[j] * scale + shift[j];
  return y;
}

std::pair<PointSet, Normalization> normalize(const PointSet& ps) {
  Normalization norm;
  norm.shift.resize(ps.d);
  // coordinate-wise median; lower of the two middle order statistics for
  // even counts
  std::vector<double> col(ps.n);
  for (std::size_t j = 0; j < ps.d; ++j) {
    for (std::size_t i = 0; i < ps.n; ++i) col[i] = ps.coords[i * ps.d + j];
    const std::size_t mid = (ps.n - 1) / 2;
    std::nth_element(col.begin(), col.begin() + mid, col.end());
    norm.shift[j] = col[mid];
  }
  std::vector<double> shifted(ps.coords.size());
  for (std::size_t i = 0; i < ps.n; ++i)
    for (std::size_t j = 0; j < ps.d; ++j)
      shifted[i * ps.d + j] = ps.coords[i * ps.d + j] - norm.shift[j];
  PointSet tmp = PointSet::create(std::move(shifted), ps.n, ps.d, ps.weights);
  const std::vector<double> m = mean_point(tmp);
  const double f_mean = eval_f(tmp, m);
  norm.scale = f_mean > 0.0 ? f_mean / tmp.total_weight() : 1.0;
  if (norm.scale == 1.0) return {std::move(tmp), std::move(norm)};
  const double inv = 1.0 / norm.scale;
  for (double& v : tmp.coords) v *= inv;
  PointSet out = PointSet::create(std::move(tmp.coords), tmp.n, tmp.d,
                                  std::move(tmp.weights));
  return {std::move(out), std::move(norm)};
}

}  // namespace geomed
