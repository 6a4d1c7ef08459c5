#include "geomed/penalized.hpp"

#include <cmath>
#include <stdexcept>

#include "geomed/parallel.hpp"
#include "geomed/vecops.hpp"

namespace geomed {

namespace {

void check_state(const PathState& state, std::size_t zdim) {
  if (!state.ps) throw std::invalid_argument("PathState: no point set attached");
  if (zdim != state.ps->d || state.x.size() != state.ps->d)
    throw std::invalid_argument("PathState: dimension mismatch");
}

}  // namespace

void eval_ft_inplace(const PointSet& ps, std::span<const double> x, double t,
                     PathState& state, std::vector<double>* grad,
                     double* value, SolveCounters* counters) {
  if (!(t > 0.0)) throw std::invalid_argument("eval_ft: t must be positive");
  if (x.size() != ps.d) throw std::invalid_argument("eval_ft: dimension mismatch");

  const std::size_t n = ps.n, d = ps.d;
  state.ps = &ps;
  state.t = t;
  state.x.assign(x.begin(), x.end());
  state.g.resize(n);

  const double t2 = t * t;
  const bool wide = d > 64;
  double w = 0.0, winv_g = 0.0, val = 0.0;

  if (n <= par::kBlock) {
    // single block: accumulate directly (same order as the blocked path)
    if (grad) grad->assign(d, 0.0);
    double* const gacc = grad ? grad->data() : nullptr;
    for (std::size_t i = 0; i < n; ++i) {
      const double* a = ps.point(i);
      const double m = ps.weight(i);
      const double s = wide ? dist2_compensated(x, {a, d}) : dist2(x, {a, d});
      const double g = std::sqrt(1.0 + t2 * s);
      state.g[i] = g;
      const double inv1g = 1.0 / (1.0 + g);
      w += m * inv1g;
      winv_g += m * inv1g / g;
      if (value) val += m * (g - std::log1p(g));
      if (gacc) {
        const double c = m * t2 * inv1g;
        for (std::size_t j = 0; j < d; ++j) gacc[j] += c * (x[j] - a[j]);
      }
    }
  } else {
    const std::size_t nb = par::num_blocks(n);
    // per-block partials: [w, winv_g, value, grad(d)]
    const std::size_t stride = 3 + (grad ? d : 0);
    thread_local std::vector<double> partial;
    partial.assign(nb * stride, 0.0);
    double* const pbuf = partial.data();  // lambdas do not capture thread_local

    par::for_blocks(n, [&, pbuf](std::size_t b, std::size_t lo,
                                 std::size_t hi) {
      double* acc = pbuf + b * stride;
      for (std::size_t i = lo; i < hi; ++i) {
        const double* a = ps.point(i);
        const double m = ps.weight(i);
        const double s =
            wide ? dist2_compensated(x, {a, d}) : dist2(x, {a, d});
        const double g = std::sqrt(1.0 + t2 * s);
        state.g[i] = g;
        const double inv1g = 1.0 / (1.0 + g);
        acc[0] += m * inv1g;
        acc[1] += m * inv1g / g;
        if (value) acc[2] += m * (g - std::log1p(g));
        if (grad) {
          const double c = m * t2 * inv1g;
          double* gacc = acc + 3;
          for (std::size_t j = 0; j < d; ++j) gacc[j] += c * (x[j] - a[j]);
        }
      }
    });

    if (grad) grad->assign(d, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
      const double* acc = partial.data() + b * stride;
      w += acc[0];
      winv_g += acc[1];
      val += acc[2];
      if (grad)
        for (std::size_t j = 0; j < d; ++j) (*grad)[j] += acc[3 + j];
    }
  }
  state.w = w;
  state.gbar = w / winv_g;
  if (value) {
    if (!std::isfinite(val))
      throw SolverError("eval_ft: non-finite objective (normalization failure)");
    *value = val;
  }
  if (counters) ++counters->ft_evals;
}

ObjectiveEval eval_ft(const PointSet& ps, std::span<const double> x, double t,
                      SolveCounters* counters) {
  ObjectiveEval out;
  eval_ft_inplace(ps, x, t, out.state, &out.grad, &out.value, counters);
  return out;
}

PathState make_path_state(const PointSet& ps, std::span<const double> x,
                          double t) {
  PathState st;
  eval_ft_inplace(ps, x, t, st, nullptr, nullptr, nullptr);
  return st;
}

void hess_matvec(const PathState& state, std::span<const double> z,
                 std::span<double> out) {
  check_state(state, z.size());
  const PointSet& ps = *state.ps;
  const std::size_t n = ps.n, d = ps.d;
  const double t2 = state.t * state.t;
  const double* x = state.x.data();

  if (n <= par::kBlock) {
    fill_zero(out);
    for (std::size_t i = 0; i < n; ++i) {
      const double* a = ps.point(i);
      const double g = state.g[i];
      const double c = ps.weight(i) * t2 / (1.0 + g);
      double proj = 0.0;
      for (std::size_t j = 0; j < d; ++j) proj += (x[j] - a[j]) * z[j];
      const double cr = c * t2 * proj / (g * (1.0 + g));
      for (std::size_t j = 0; j < d; ++j)
        out[j] += c * z[j] - cr * (x[j] - a[j]);
    }
    return;
  }

  const std::size_t nb = par::num_blocks(n);
  thread_local std::vector<double> partial;
  partial.assign(nb * d, 0.0);
  double* const pbuf = partial.data();

  par::for_blocks(n, [&, pbuf](std::size_t b, std::size_t lo, std::size_t hi) {
    double* acc = pbuf + b * d;
    for (std::size_t i = lo; i < hi; ++i) {
      const double* a = ps.point(i);
      const double g = state.g[i];
      const double c = ps.weight(i) * t2 / (1.0 + g);
      double proj = 0.0;
      for (std::size_t j = 0; j < d; ++j) proj += (x[j] - a[j]) * z[j];
      const double cr = c * t2 * proj / (g * (1.0 + g));
      for (std::size_t j = 0; j < d; ++j)
        acc[j] += c * z[j] - cr * (x[j] - a[j]);
    }
  });

  fill_zero(out);
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t j = 0; j < d; ++j) out[j] += partial[b * d + j];
}

void amat_matvec(const PathState& state, std::span<const double> z,
                 std::span<double> out) {
  check_state(state, z.size());
  const PointSet& ps = *state.ps;
  const std::size_t n = ps.n, d = ps.d;
  const double t4 = state.t * state.t * state.t * state.t;
  const double* x = state.x.data();

  if (n <= par::kBlock) {
    fill_zero(out);
    for (std::size_t i = 0; i < n; ++i) {
      const double* a = ps.point(i);
      const double g = state.g[i];
      double proj = 0.0;
      for (std::size_t j = 0; j < d; ++j) proj += (x[j] - a[j]) * z[j];
      const double c =
          ps.weight(i) * t4 * proj / ((1.0 + g) * (1.0 + g) * g);
      for (std::size_t j = 0; j < d; ++j) out[j] += c * (x[j] - a[j]);
    }
    return;
  }

  const std::size_t nb = par::num_blocks(n);
  thread_local std::vector<double> partial;
  partial.assign(nb * d, 0.0);
  double* const pbuf = partial.data();

  par::for_blocks(n, [&, pbuf](std::size_t b, std::size_t lo, std::size_t hi) {
    double* acc = pbuf + b * d;
    for (std::size_t i = lo; i < hi; ++i) {
      const double* a = ps.point(i);
      const double g = state.g[i];
      double proj = 0.0;
      for (std::size_t j = 0; j < d; ++j) proj += (x[j] - a[j]) * z[j];
      const double c =
          ps.weight(i) * t4 * proj / ((1.0 + g) * (1.0 + g) * g);
      for (std::size_t j = 0; j < d; ++j) acc[j] += c * (x[j] - a[j]);
    }
  });

  fill_zero(out);
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t j = 0; j < d; ++j) out[j] += partial[b * d + j];
}

double optimal_alpha(const PathState& state, std::size_t i) {
  return (1.0 + state.g[i]) / state.t;
}

}  // namespace geomed
