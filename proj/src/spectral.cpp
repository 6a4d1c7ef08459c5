#include "geomed/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <limits>

#include <Eigen/Eigenvalues>
#include <bit>

#include "geomed/parallel.hpp"

#include "geomed/penalized.hpp"
#include "geomed/vecops.hpp"

namespace geomed {

namespace {

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Below this dimension A is assembled densely and A^k x is computed by
// binary powering: O(n d^2 + d^3 log k) instead of k O(nd) matvecs.
constexpr std::size_t kDenseEigDim = 64;

Eigen::MatrixXd assemble_amat(const PathState& state) {
  const PointSet& ps = *state.ps;
  const std::size_t n = ps.n, d = ps.d;
  const double t = state.t;
  const double t4 = t * t * t * t;
  const std::size_t nb = par::num_blocks(n);
  std::vector<Eigen::MatrixXd> partial(nb, Eigen::MatrixXd::Zero(d, d));
  const double* x = state.x.data();
  par::for_blocks(n, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    Eigen::MatrixXd& acc = partial[b];
    Eigen::VectorXd r(d);
    for (std::size_t i = lo; i < hi; ++i) {
      const double* a = ps.point(i);
      for (std::size_t j = 0; j < d; ++j) r[j] = x[j] - a[j];
      const double g = state.g[i];
      const double c = ps.weight(i) * t4 / ((1.0 + g) * (1.0 + g) * g);
      acc.selfadjointView<Eigen::Lower>().rankUpdate(r, c);
    }
  });
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(d, d);
  for (const auto& p : partial) A += p;
  return A.selfadjointView<Eigen::Lower>();
}

// normalize(A^k x0) via binary powering with rescaling (positive scalars
// cancel in the normalization)
bool dense_power(const Eigen::MatrixXd& A, long k, Eigen::VectorXd x,
                 std::vector<double>& out) {
  Eigen::MatrixXd B = A;
  long e = k;
  while (e > 0) {
    if (e & 1) {
      x = B * x;
      const double nn = x.norm();
      if (nn == 0.0) return false;
      x /= nn;
    }
    e >>= 1;
    if (e > 0) {
      B = B * B;
      const double m = B.cwiseAbs().maxCoeff();
      if (m == 0.0) return false;
      B /= m;
    }
  }
  const double nn = x.norm();
  if (nn == 0.0) return false;
  out.assign(x.data(), x.data() + x.size());
  const double inv = 1.0 / nn;
  for (double& v : out) v *= inv;
  return true;
}

}  // namespace

PowerResult power_method(const LinOp& op, std::size_t dim, long k, Rng& rng,
                         SolveCounters* counters, bool rayleigh_exit) {
  if (k < 1) throw std::invalid_argument("power_method: k must be >= 1");
  PowerResult res;
  res.u.resize(dim);
  for (double& v : res.u) v = rng.normal();
  const double n0 = nrm2(res.u);
  if (n0 == 0.0) {
    res.degenerate = true;
  } else {
    scal(1.0 / n0, res.u);
    std::vector<double> next(dim), prev1, prev2;
    double rayleigh_prev = -1.0;
    for (long i = 0; i < k; ++i) {
      op(res.u, next);
      const double nn = nrm2(next);
      if (counters) ++counters->power_iters;
      ++res.iters;
      if (nn == 0.0) {
        res.degenerate = true;
        break;
      }
      scal(1.0 / nn, next);
      prev2 = std::move(prev1);
      prev1 = res.u;
      res.u = next;
      next.resize(dim);
      if (bits_equal(res.u, prev1)) break;  // fixed point: rest is identity
      if (!prev2.empty() && bits_equal(res.u, prev2)) {
        // 2-cycle: remaining iterations alternate, pick by parity
        const long remaining = k - 1 - i;
        if (remaining % 2 == 1) res.u = prev1;
        break;
      }
      if (rayleigh_exit && i > 0 && std::abs(nn - rayleigh_prev) <= 1e-8 * nn)
        break;
      rayleigh_prev = nn;
    }
  }
  if (res.degenerate) {
    std::fill(res.u.begin(), res.u.end(), 0.0);
    if (dim > 0) res.u[0] = 1.0;
  }
  return res;
}

EigEstimate approx_min_eig(const PathState& state, double eps, Rng& rng,
                           double iter_constant, SolveCounters* counters,
                           bool rayleigh_exit) {
  if (!(eps > 0.0) || !(eps < 0.25))
    throw std::invalid_argument("approx_min_eig: need 0 < eps < 1/4");
  const std::size_t d = state.ps->d;
  const double n_eff = std::max(state.ps->total_weight(), 2.0);
  const long k = std::max<long>(
      static_cast<long>(std::ceil(iter_constant * std::log(n_eff * 3.0 / eps))),
      1);

  EigEstimate est;
  if (d <= kDenseEigDim) {
    const Eigen::MatrixXd A = assemble_amat(state);
    Eigen::VectorXd x0(d);
    for (std::size_t j = 0; j < d; ++j) x0[j] = rng.normal();
    est.degenerate = !dense_power(A, k, std::move(x0), est.u);
    if (est.degenerate) {
      est.u.assign(d, 0.0);
      est.u[0] = 1.0;
    }
    if (counters) counters->power_iters += static_cast<long>(std::bit_width(
        static_cast<unsigned long long>(k)));
  } else {
    LinOp amat = [&state](std::span<const double> z, std::span<double> out) {
      amat_matvec(state, z, out);
    };
    PowerResult pr = power_method(amat, d, k, rng, counters, rayleigh_exit);
    est.u = std::move(pr.u);
    est.degenerate = pr.degenerate;
  }
  est.t2w = state.t2w();
  std::vector<double> hz(d);
  hess_matvec(state, est.u, hz);
  est.lambda = dot(est.u, hz);
  est.lambda = std::clamp(est.lambda, 0.0, est.t2w);
  return est;
}

RankOneSurrogate make_surrogate(const EigEstimate& eig) {
  RankOneSurrogate q;
  q.scale = eig.t2w;
  q.drop = std::max(eig.t2w - eig.lambda, 0.0);
  q.u = eig.u;
  return q;
}

void surrogate_apply(const RankOneSurrogate& q, std::span<const double> z,
                     std::span<double> out) {
  const double uz = dot(q.u, z);
  for (std::size_t j = 0; j < z.size(); ++j)
    out[j] = q.scale * z[j] - q.drop * uz * q.u[j];
}

void surrogate_solve(const RankOneSurrogate& q, std::span<const double> b,
                     std::span<double> out) {
  const double small = q.scale - q.drop;
  if (!(small > 0.0))
    throw SolverError("surrogate_solve: singular surrogate (lambda = 0)");
  // Q^{-1} = scale^{-1} (I + rho/(1-rho) u u^T), rho = drop/scale
  const double rho = q.drop / q.scale;
  const double ub = dot(q.u, b);
  const double c = rho / (1.0 - rho) * ub;
  const double inv = 1.0 / q.scale;
  for (std::size_t j = 0; j < b.size(); ++j)
    out[j] = inv * (b[j] + c * q.u[j]);
}

namespace {

int monic_quartic_roots(double a3, double a2, double a1, double a0,
                        double out[4]) {
  Eigen::Matrix4d comp = Eigen::Matrix4d::Zero();
  comp(1, 0) = 1.0;
  comp(2, 1) = 1.0;
  comp(3, 2) = 1.0;
  comp(0, 3) = -a0;
  comp(1, 3) = -a1;
  comp(2, 3) = -a2;
  comp(3, 3) = -a3;
  Eigen::EigenSolver<Eigen::Matrix4d> es(comp, /*computeEigenvectors=*/false);
  int count = 0;
  for (int i = 0; i < 4; ++i) {
    std::complex<double> r = es.eigenvalues()[i];
    for (int it = 0; it < 2; ++it) {
      const std::complex<double> p =
          (((r + a3) * r + a2) * r + a1) * r + a0;
      const std::complex<double> dp = ((4.0 * r + 3.0 * a3) * r + 2.0 * a2) * r + a1;
      if (std::abs(dp) < 1e-300) break;
      r -= p / dp;
    }
    if (std::abs(r.imag()) <= 1e-8 * (1.0 + std::abs(r.real())))
      out[count++] = r.real();
  }
  return count;
}

}  // namespace

std::vector<double> solve_monic_quartic(double a3, double a2, double a1,
                                        double a0) {
  double buf[4];
  const int count = monic_quartic_roots(a3, a2, a1, a0, buf);
  return {buf, buf + count};
}

namespace {

// One boundary root exists for eta > |v|^2 (the constraint residual is
// strictly decreasing there), so a guarded Newton from the previous step's
// root replaces the companion solve inside the centering loop.
bool quartic_newton(double a3, double a2, double a1, double a0, double s,
                    double& eta) {
  double r = eta;
  for (int it = 0; it < 12; ++it) {
    const double p = (((r + a3) * r + a2) * r + a1) * r + a0;
    const double dp = ((4.0 * r + 3.0 * a3) * r + 2.0 * a2) * r + a1;
    if (dp == 0.0) return false;
    const double step = p / dp;
    r -= step;
    if (!(r > s)) return false;
    if (std::abs(step) <= 1e-14 * (std::abs(r) + 1.0)) {
      const double p2 = (((r + a3) * r + a2) * r + a1) * r + a0;
      const double scale = std::abs(r * r * r * r) + std::abs(a3 * r * r * r) +
                           std::abs(a2 * r * r) + std::abs(a1 * r) +
                           std::abs(a0) + 1e-300;
      if (std::abs(p2) <= 1e-9 * scale) {
        eta = r;
        return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace

void ball_rank1_qp_into(std::span<const double> y, std::span<const double> z,
                        std::span<const double> v, double alpha,
                        std::span<double> x, double* eta_state) {
  if (alpha < 0.0) throw std::invalid_argument("ball_rank1_qp: alpha < 0");
  const std::size_t d = y.size();
  const double s = nrm2sq(v);
  if (!(s < 1.0)) throw std::invalid_argument("ball_rank1_qp: need |v| < 1");

  thread_local std::vector<double> r_buf, rho_buf, qr_buf, xi_buf;
  r_buf.resize(d);
  std::span<double> r(r_buf);
  sub(z, y, r);
  const double r2 = nrm2sq(r);
  if (r2 <= alpha) {  // unconstrained optimum
    std::copy(z.begin(), z.end(), x.begin());
    return;
  }
  if (alpha == 0.0) {
    std::copy(y.begin(), y.end(), x.begin());
    return;
  }

  const double sqa = std::sqrt(alpha);
  if (s < 1e-30) {
    // Euclidean projection (degenerate rank-1 part)
    const double c = sqa / std::sqrt(r2);
    for (std::size_t j = 0; j < d; ++j) x[j] = y[j] + c * r[j];
    return;
  }

  // Rescale to the unit ball: rho = (z-y)/sqrt(alpha); eta is invariant.
  rho_buf.resize(d);
  qr_buf.resize(d);
  xi_buf.resize(d);
  std::span<double> rho(rho_buf), qr(qr_buf), xi(xi_buf);
  for (std::size_t j = 0; j < d; ++j) rho[j] = r[j] / sqa;
  const double vrho = dot(v, rho);
  for (std::size_t j = 0; j < d; ++j) qr[j] = rho[j] - vrho * v[j];
  const double c1 = nrm2sq(qr);
  const double c2_lin = (1.0 - s) * vrho;  // v^T Q rho
  const double c2 = c2_lin * c2_lin;

  // eta^2 (eta-s)^2 = c1 (eta-s)^2 + c2 (2 eta - s), monic in eta
  const double a3 = -2.0 * s;
  const double a2 = s * s - c1;
  const double a1 = 2.0 * c1 * s - 2.0 * c2;
  const double a0 = c2 * s - c1 * s * s;
  double roots[4];
  int nroots = 0;
  if (eta_state && *eta_state > s) {
    double eta = *eta_state;
    if (quartic_newton(a3, a2, a1, a0, s, eta)) {
      roots[0] = eta;
      nroots = 1;
    }
  }
  if (nroots == 0) nroots = monic_quartic_roots(a3, a2, a1, a0, roots);

  double best_obj = std::numeric_limits<double>::infinity();
  bool found = false;
  double best_eta = 0.0;
  const double vqr = dot(v, qr);
  for (int ri = 0; ri < nroots; ++ri) {
    const double eta = roots[ri];
    if (!(eta > s)) continue;
    // xi = (eta I - v v^T)^{-1} Q rho, Sherman-Morrison
    const double cc = vqr / (eta - s);
    double feas = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      xi[j] = (qr[j] + cc * v[j]) / eta;
      feas += xi[j] * xi[j];
    }
    if (feas > 1.0 + 1e-6) continue;
    if (feas > 1.0) {  // pull an imprecise boundary root back onto the ball
      const double shrink = 1.0 / std::sqrt(feas);
      for (double& c : xi) c *= shrink;
    }
    double obj = 0.0, vd = 0.0;
    for (std::size_t j = 0; j < d; ++j) vd += v[j] * (xi[j] - rho[j]);
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = xi[j] - rho[j];
      obj += diff * (diff - vd * v[j]);
    }
    if (obj < best_obj) {
      best_obj = obj;
      best_eta = eta;
      for (std::size_t j = 0; j < d; ++j) x[j] = y[j] + sqa * xi[j];
      found = true;
    }
  }
  if (!found) {
    // numerically no usable root; fall back to the Euclidean projection
    const double c = sqa / std::sqrt(r2);
    for (std::size_t j = 0; j < d; ++j) x[j] = y[j] + c * r[j];
  } else if (eta_state) {
    *eta_state = best_eta;
  }
}

std::vector<double> ball_rank1_qp(std::span<const double> y,
                                  std::span<const double> z,
                                  std::span<const double> v, double alpha) {
  std::vector<double> x(y.size());
  ball_rank1_qp_into(y, z, v, alpha, x);
  return x;
}

}  // namespace geomed
