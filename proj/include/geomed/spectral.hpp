#pragma once

#include <functional>
#include <span>
#include <vector>

#include "geomed/core.hpp"
#include "geomed/rng.hpp"

namespace geomed {

using LinOp = std::function<void(std::span<const double>, std::span<double>)>;

struct PowerResult {
  std::vector<double> u;
  bool degenerate = false;  // operator applied to the start vector vanished
  int iters = 0;
};

// Power iteration on a symmetric PSD operator: normal start vector, k
// applications, per-step normalization. Exits early once the iterate locks
// bitwise (a fixed point or 2-cycle reproduces the full-k output exactly, by
// parity), so that exit never changes the result. rayleigh_exit additionally
// stops once the eigenvalue estimate plateaus; with clustered top eigenvalues
// the direction keeps rotating inside the top space, where any member serves
// the surrogate equally well (practical mode only).
PowerResult power_method(const LinOp& op, std::size_t dim, long k, Rng& rng,
                         SolveCounters* counters = nullptr,
                         bool rayleigh_exit = false);

// Approximate minimum-eigen direction of hess f_t(x): u = top eigenvector of
// A, lambda = u^T hess f_t(x) u. Degenerate A (all points at x) yields u = e1
// and lambda = t^2 w, for which the surrogate is exact.
struct EigEstimate {
  std::vector<double> u;
  double lambda = 0.0;
  double t2w = 0.0;
  bool degenerate = false;
};

EigEstimate approx_min_eig(const PathState& state, double eps, Rng& rng,
                           double iter_constant = 10.0,
                           SolveCounters* counters = nullptr,
                           bool rayleigh_exit = false);

// Q = scale * I - drop * u u^T with 0 <= drop <= scale; spectral
// 4-approximation of the Hessian when the eigenvector estimate is good.
struct RankOneSurrogate {
  double scale = 0.0;
  double drop = 0.0;
  std::vector<double> u;
};

RankOneSurrogate make_surrogate(const EigEstimate& eig);

// out = Q z
void surrogate_apply(const RankOneSurrogate& q, std::span<const double> z,
                     std::span<double> out);

// out = Q^{-1} b via Sherman-Morrison, O(d). Throws on singular Q (lambda=0).
void surrogate_solve(const RankOneSurrogate& q, std::span<const double> b,
                     std::span<double> out);

// argmin_{|x-y|^2 <= alpha} |x - z|^2_{I - v v^T} for |v| < 1, alpha >= 0.
// Interior candidate plus the real roots of the secular quartic in
// eta = 1 + lambda; at most 5 cases, O(d) once the quartic is solved.
std::vector<double> ball_rank1_qp(std::span<const double> y,
                                  std::span<const double> z,
                                  std::span<const double> v, double alpha);

// Allocation-free variant for hot loops. eta_state (optional) carries the
// boundary root across consecutive calls; a guarded Newton refines it and
// falls back to the companion solve when the guard fails.
void ball_rank1_qp_into(std::span<const double> y, std::span<const double> z,
                        std::span<const double> v, double alpha,
                        std::span<double> x, double* eta_state = nullptr);

// Real roots of x^4 + a3 x^3 + a2 x^2 + a1 x + a0 via companion-matrix
// eigenvalues plus two Newton polish steps; roots with small imaginary part
// are accepted as real. Exposed for tests.
std::vector<double> solve_monic_quartic(double a3, double a2, double a1,
                                        double a0);

}  // namespace geomed
