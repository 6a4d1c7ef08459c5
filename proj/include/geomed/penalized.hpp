#pragma once

#include <span>
#include <vector>

#include "geomed/core.hpp"

namespace geomed {

// f_t(x) = sum_i m_i [ g_i - ln(1 + g_i) ],  g_i = sqrt(1 + t^2 |x - a_i|^2).
// All kernels run in O(nd) without materializing any d x d matrix; per-point
// terms carry the multiplicity m_i so weighted instances behave as implicit
// multisets.

struct ObjectiveEval {
  double value = 0.0;
  std::vector<double> grad;
  PathState state;
};

// Fills state (g, w, gbar) and, when grad/value are non-null, the gradient
// grad f_t(x) = sum_i m_i t^2 (x - a_i) / (1 + g_i) and the value. Buffers are
// reused across calls; this is the hot-path entry point.
void eval_ft_inplace(const PointSet& ps, std::span<const double> x, double t,
                     PathState& state, std::vector<double>* grad,
                     double* value, SolveCounters* counters = nullptr);

ObjectiveEval eval_ft(const PointSet& ps, std::span<const double> x, double t,
                      SolveCounters* counters = nullptr);

PathState make_path_state(const PointSet& ps, std::span<const double> x,
                          double t);

// out = hess f_t(x) z = sum_i m_i t^2/(1+g_i) [ z - t^2 <x-a_i, z> (x-a_i) /
// (g_i (1+g_i)) ]
void hess_matvec(const PathState& state, std::span<const double> z,
                 std::span<double> out);

// out = A z with A = sum_i m_i t^4 (x-a_i)(x-a_i)^T / ((1+g_i)^2 g_i);
// hess f_t(x) = t^2 w_t(x) I - A.
void amat_matvec(const PathState& state, std::span<const double> z,
                 std::span<double> out);

// Per-point barrier minimizer alpha_i* = (1 + g_i) / t. Test-facing: confirms
// f_t is the partial minimization of the barrier form.
double optimal_alpha(const PathState& state, std::size_t i);

}  // namespace geomed
