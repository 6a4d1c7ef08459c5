#include "geomed/serial_ref.hpp"

#include <cmath>

#include "geomed/vecops.hpp"

namespace geomed::serial {

double eval_f(const PointSet& ps, std::span<const double> x) {
  double f = 0.0;
  for (std::size_t i = 0; i < ps.n; ++i)
    f += ps.weight(i) * std::sqrt(dist2(x, ps.row(i)));
  return f;
}

void eval_ft(const PointSet& ps, std::span<const double> x, double t,
             PathState& state, std::vector<double>& grad, double& value) {
  const std::size_t n = ps.n, d = ps.d;
  state.ps = &ps;
  state.t = t;
  state.x.assign(x.begin(), x.end());
  state.g.resize(n);
  grad.assign(d, 0.0);
  value = 0.0;
  const double t2 = t * t;
  double w = 0.0, winv_g = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* a = ps.point(i);
    const double m = ps.weight(i);
    const double g = std::sqrt(1.0 + t2 * dist2(x, {a, d}));
    state.g[i] = g;
    const double inv1g = 1.0 / (1.0 + g);
    w += m * inv1g;
    winv_g += m * inv1g / g;
    value += m * (g - std::log1p(g));
    const double c = m * t2 * inv1g;
    for (std::size_t j = 0; j < d; ++j) grad[j] += c * (x[j] - a[j]);
  }
  state.w = w;
  state.gbar = w / winv_g;
}

void hess_matvec(const PathState& state, std::span<const double> z,
                 std::span<double> out) {
  const PointSet& ps = *state.ps;
  const std::size_t d = ps.d;
  const double t2 = state.t * state.t;
  const double* x = state.x.data();
  fill_zero(out);
  for (std::size_t i = 0; i < ps.n; ++i) {
    const double* a = ps.point(i);
    const double g = state.g[i];
    const double c = ps.weight(i) * t2 / (1.0 + g);
    double proj = 0.0;
    for (std::size_t j = 0; j < d; ++j) proj += (x[j] - a[j]) * z[j];
    const double cr = c * t2 * proj / (g * (1.0 + g));
    for (std::size_t j = 0; j < d; ++j) out[j] += c * z[j] - cr * (x[j] - a[j]);
  }
}

void amat_matvec(const PathState& state, std::span<const double> z,
                 std::span<double> out) {
  const PointSet& ps = *state.ps;
  const std::size_t d = ps.d;
  const double t = state.t;
  const double t4 = t * t * t * t;
  const double* x = state.x.data();
  fill_zero(out);
  for (std::size_t i = 0; i < ps.n; ++i) {
    const double* a = ps.point(i);
    const double g = state.g[i];
    double proj = 0.0;
    for (std::size_t j = 0; j < d; ++j) proj += (x[j] - a[j]) * z[j];
    const double c = ps.weight(i) * t4 * proj / ((1.0 + g) * (1.0 + g) * g);
    for (std::size_t j = 0; j < d; ++j) out[j] += c * (x[j] - a[j]);
  }
}

}  // namespace geomed::serial
