#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geomed/accurate_median.hpp"
#include "geomed/generate.hpp"
#include "geomed/line_search.hpp"
#include "geomed/oracles.hpp"
#include "geomed/penalized.hpp"
#include "geomed/spectral.hpp"
#include "geomed/vecops.hpp"
#include "test_support.hpp"

using namespace geomed;

TEST_CASE("interval budget formula") {
  SearchInterval iv;
  iv.lo = 0.0;
  iv.hi = 1.0;
  iv.lipschitz = 1.0;
  iv.tol = 1e-3;
  CHECK(iv.budget() ==
        static_cast<long>(std::ceil(std::log(1e3) / std::log(1.5))));
  iv.tol = 10.0;  // already resolved
  CHECK(iv.budget() == 0);
  iv.hi = iv.lo;
  CHECK(iv.budget() == 0);
}

TEST_CASE("one_dim_minimizer on |a - 0.3|") {
  SearchInterval iv;
  iv.lo = 0.0;
  iv.hi = 1.0;
  iv.lipschitz = 1.0;
  iv.tol = 1e-3;
  const double x =
      one_dim_minimizer(iv, [](double a) { return std::abs(a - 0.3); });
  CHECK(std::abs(x - 0.3) <= 4e-3);
}

TEST_CASE("one_dim_minimizer on a constant") {
  SearchInterval iv;
  iv.lo = -2.0;
  iv.hi = 5.0;
  iv.lipschitz = 1.0;
  iv.tol = 1e-6;
  const double x = one_dim_minimizer(iv, [](double) { return 7.0; });
  CHECK(x >= iv.lo);
  CHECK(x <= iv.hi);
}

TEST_CASE("one_dim_minimizer under bounded noise") {
  Rng rng(11);
  for (int seed = 0; seed < 500; ++seed) {
    Rng r = rng.split(seed);
    const double eps = 1e-4;
    SearchInterval iv;
    iv.lo = 0.0;
    iv.hi = 1.0;
    iv.lipschitz = 2.0;
    iv.tol = eps;
    auto noisy = [&](double a) {
      const double f = (a - 0.25) * (a - 0.25);
      return f + eps * (2.0 * r.uniform() - 1.0);
    };
    const double x = one_dim_minimizer(iv, noisy);
    const double fx = (x - 0.25) * (x - 0.25);
    CHECK(fx <= 4.0 * eps);
  }
}

TEST_CASE("query count and best-so-far contract") {
  SearchInterval iv;
  iv.lo = 0.0;
  iv.hi = 1.0;
  iv.lipschitz = 3.0;
  iv.tol = 1e-5;
  long calls = 0;
  double best_seen = 1e300;
  double returned_value = 0.0;
  const double x = one_dim_minimizer(iv, [&](double a) {
    ++calls;
    const double v = std::cosh(a - 0.6180339887);
    best_seen = std::min(best_seen, v);
    return v;
  });
  CHECK(calls == 2 * iv.budget() + 1);
  returned_value = std::cosh(x - 0.6180339887);
  CHECK(returned_value == doctest::Approx(best_seen).epsilon(1e-15));
}

TEST_CASE("line_search fixed point at a symmetric center") {
  const PointSet corners =
      PointSet::create({1, 1, 1, -1, -1, 1, -1, -1}, 4, 2);
  const std::vector<double> center{0, 0};
  const std::vector<double> dir{std::sqrt(0.5), std::sqrt(0.5)};
  const double t = 1.0;
  SUBCASE("verbatim algorithm") {
    SolverConfig cfg = SolverConfig::make(1e-3, Mode::paper_faithful, 3);
    const ScheduleParams sched =
        central_path_schedule(eval_f(corners, mean_point(corners)), 4.0, cfg);
    Rng rng(3);
    const LineSearchResult out = line_search(
        corners, center, t, t * sched.growth, dir, 1e-6, sched, cfg, rng);
    CHECK(nrm2(out.x) <= 1e-8);
  }
  SUBCASE("practical mode (looser exit)") {
    SolverConfig cfg = SolverConfig::make(1e-3, Mode::practical, 3);
    const ScheduleParams sched =
        central_path_schedule(eval_f(corners, mean_point(corners)), 4.0, cfg);
    Rng rng(3);
    const LineSearchResult out = line_search(
        corners, center, t, t * sched.growth, dir, 1e-6, sched, cfg, rng);
    CHECK(nrm2(out.x) <= 1e-6);
  }
}

TEST_CASE("line_search tracks the central path (oracle check)") {
  // paper-faithful probes, oracle-built y on the path
  Rng rng(7);
  const PointSet ps0 = gen::gaussian(5, 2, rng);
  auto [ps, norm] = normalize(ps0);
  SolverConfig cfg = SolverConfig::make(1e-2, Mode::paper_faithful, 5);
  const double n_eff = ps.total_weight();
  const ScheduleParams sched =
      central_path_schedule(eval_f(ps, mean_point(ps)), n_eff, cfg);

  for (double t : {0.3, 1.0, 7.0}) {
    const double t_next = t * (1.0 + 1.0 / 600.0);
    const std::vector<double> xt = central_path_reference(ps, t, 1e-12);
    const std::vector<double> xt_next =
        central_path_reference(ps, t_next, 1e-12, xt);
    const PathState st = make_path_state(ps, xt, t);
    Rng r = rng.split(static_cast<std::uint64_t>(t * 100));
    const EigEstimate eig = approx_min_eig(st, cfg.eps_v(n_eff), r);
    const double eps = 1e-8;
    const LineSearchResult out =
        line_search(ps, xt, t, t_next, eig.u, eps, sched, cfg, r);
    // below the representable f_t gap the position cannot improve; allow
    // the double-precision floor sqrt(4 ulp(f) / mu) on top of eps/t'
    const Eigen::MatrixXd H = testsup::dense_hessian(ps, xt_next, t_next);
    const double mu =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(H).eigenvalues()[0];
    const double f_val = eval_ft(ps, xt_next, t_next).value;
    const double fp_floor = std::sqrt(4.0 * 2.220446049250313e-16 * f_val / mu);
    CHECK(std::sqrt(dist2(out.x, xt_next)) <= eps / t_next + 2.0 * fp_floor);
  }
}

TEST_CASE("line_search with zero direction recenters") {
  Rng rng(9);
  const PointSet ps0 = gen::gaussian(5, 2, rng);
  auto [ps, norm] = normalize(ps0);
  SolverConfig cfg = SolverConfig::make(1e-2, Mode::paper_faithful, 5);
  const double n_eff = ps.total_weight();
  const ScheduleParams sched =
      central_path_schedule(eval_f(ps, mean_point(ps)), n_eff, cfg);
  const double t = 2.0;
  const std::vector<double> xt = central_path_reference(ps, t, 1e-12);
  // y within 1/(100 t) of x_t
  std::vector<double> y(xt);
  y[0] += 0.7 / (100.0 * t);
  y[1] -= 0.4 / (100.0 * t);
  Rng r(17);
  const double eps = 1e-8;
  const LineSearchResult out =
      line_search(ps, y, t, t, {}, eps, sched, cfg, r);
  CHECK(out.probes == 1);
  CHECK(std::sqrt(dist2(out.x, xt)) <= eps / t + 2e-12);
}

TEST_CASE("probe oracle is convex along alpha (spot check)") {
  Rng rng(13);
  const PointSet ps0 = gen::gaussian(6, 2, rng);
  auto [ps, norm] = normalize(ps0);
  const double t = 3.0;
  const std::vector<double> xt = central_path_reference(ps, t, 1e-12);
  const std::vector<double> dir{0.6, 0.8};
  const double radius = 1.0 / (49.0 * t);
  auto g = [&](double a) {
    std::vector<double> anchor(xt);
    anchor[0] += a * dir[0];
    anchor[1] += a * dir[1];
    const auto xmin = testsup::ball_ft_min_oracle(ps, anchor, t, radius);
    return eval_ft(ps, xmin, t).value;
  };
  Rng r(31);
  for (int rep = 0; rep < 12; ++rep) {
    double a1 = 0.5 * r.normal(), a3 = 0.5 * r.normal();
    if (a3 < a1) std::swap(a1, a3);
    const double lam = r.uniform();
    const double a2 = lam * a1 + (1.0 - lam) * a3;
    const double chord = lam * g(a1) + (1.0 - lam) * g(a3);
    CHECK(g(a2) <= chord + 1e-6);
  }
}
