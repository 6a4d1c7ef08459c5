#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "geomed/core.hpp"

// Independent reference solvers and checkers used by tests, selftest and
// acceptance; never on the main solve path.
namespace geomed {

struct ReferenceSolution {
  std::vector<double> x;
  double objective = 0.0;
  double grad_norm = 0.0;  // optimality residual (0 when vertex-certified)
  std::string method;      // weiszfeld_polished | dense_newton_path | grid
  bool certified = false;
  int iters = 0;
};

// Reweighted-least-squares iteration with a vertex optimality test and a
// damped Newton polish; certifies the objective to relative tol.
ReferenceSolution weiszfeld_reference(const PointSet& ps, double tol = 1e-12);

// Coarse-to-fine grid search, d <= 3 only; fallback certificate generator.
ReferenceSolution grid_reference(const PointSet& ps, int refinements = 40);

// x_t to gradient tolerance via damped Newton with the dense Hessian.
// Optional start point chains path points cheaply across a t sweep.
std::vector<double> central_path_reference(const PointSet& ps, double t,
                                           double tol,
                                           std::span<const double> start = {});

// A handful of plain Weiszfeld steps; optional final polish for the solver.
std::vector<double> weiszfeld_polish_steps(const PointSet& ps,
                                           std::span<const double> x0,
                                           int steps);

// Central-difference checks. fn fills grad and returns the value.
using ValueGradFn =
    std::function<double(std::span<const double>, std::span<double>)>;

// max over coordinates of |analytic - central difference| / scale
double fd_gradient_check(const ValueGradFn& fn, std::span<const double> x,
                         double h);

// compares hess_vec(x, z) against finite differences of the gradient
using GradFn = std::function<void(std::span<const double>, std::span<double>)>;
using HessVecFn = std::function<void(
    std::span<const double>, std::span<const double>, std::span<double>)>;
double fd_hessian_check(const GradFn& grad_fn, const HessVecFn& hess_fn,
                        std::span<const double> x, std::span<const double> z,
                        double h);

}  // namespace geomed
