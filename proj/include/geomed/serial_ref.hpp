#pragma once

#include <span>
#include <vector>

#include "geomed/core.hpp"

// Plain sequential reference kernels with naive left-to-right accumulation.
// Kept for testing the OpenMP blocked kernels and for the kernel benchmark;
// never used on the solve path.
namespace geomed::serial {

double eval_f(const PointSet& ps, std::span<const double> x);

// value + gradient + state of f_t in one pass
void eval_ft(const PointSet& ps, std::span<const double> x, double t,
             PathState& state, std::vector<double>& grad, double& value);

void hess_matvec(const PathState& state, std::span<const double> z,
                 std::span<double> out);

void amat_matvec(const PathState& state, std::span<const double> z,
                 std::span<double> out);

}  // namespace geomed::serial
