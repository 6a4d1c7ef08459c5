// geomed: geometric median solver CLI.
//   solve    -- compute a (1+eps)-approximate geometric median of a point file
//   bench    -- generator-driven timing table (CSV)
//   selftest -- oracle-backed invariant suite on built-in micro instances
//
// Exit codes: 0 success, 2 input error, 3 solver failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geomed/accurate_median.hpp"
#include "geomed/core.hpp"
#include "geomed/generate.hpp"
#include "geomed/io.hpp"
#include "geomed/oracles.hpp"
#include "geomed/parallel.hpp"
#include "geomed/penalized.hpp"
#include "geomed/spectral.hpp"
#include "geomed/stochastic.hpp"
#include "geomed/vecops.hpp"
#include "geomed/weighted.hpp"

namespace {

using namespace geomed;
using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
      .count();
}

MedianResult solve_instance(const PointSet& ps, const std::string& method,
                            const SolverConfig& cfg) {
  Rng rng(cfg.seed);
  if (method == "weiszfeld") {
    const ReferenceSolution ref = weiszfeld_reference(ps, 1e-12);
    MedianResult res;
    res.x = ref.x;
    res.objective = ref.objective;
    res.method = "weiszfeld";
    res.outer_iters = ref.iters;
    res.seed = cfg.seed;
    return res;
  }
  if (ps.weighted()) {
    MethodChoice choice = MethodChoice::auto_rule;
    if (method == "accurate") choice = MethodChoice::accurate;
    if (method == "stochastic") choice = MethodChoice::stochastic;
    MedianResult res = weighted_median(ps, cfg.eps, cfg, rng, choice);
    res.seed = cfg.seed;
    return res;
  }
  const bool stochastic =
      method == "stochastic" ||
      (method == "auto" &&
       cfg.eps > 1.0 / std::sqrt(static_cast<double>(ps.n)));
  if (stochastic) {
    MedianResult res = approximate_median(ps, cfg.eps, rng);
    res.seed = cfg.seed;
    return res;
  }
  return accurate_median(ps, cfg, rng);
}

struct SolveArgs {
  std::string input;
  std::string method = "auto";
  double eps = 1e-3;
  std::uint64_t seed = 0;
  std::string mode = "practical";
  std::string weights = "none";
  std::string output = "json";
};

int run_solve(const SolveArgs& args) {
  PointSet ps = [&] {
    if (args.weights == "none") return parse_points(args.input);
    if (args.weights == "last_column")
      return parse_points(args.input, WeightsMode::last_column);
    if (args.weights.rfind("file:", 0) == 0)
      return parse_points_with_weight_file(args.input, args.weights.substr(5));
    throw std::invalid_argument("bad --weights value: " + args.weights);
  }();
  SolverConfig cfg = SolverConfig::make(
      args.eps,
      args.mode == "paper_faithful" ? Mode::paper_faithful : Mode::practical,
      args.seed);
  const auto t0 = clock_type::now();
  const MedianResult res = solve_instance(ps, args.method, cfg);
  const double wall = ms_since(t0);
  if (args.output == "csv_row")
    std::cout << result_to_csv_row(res, args.eps, wall) << "\n";
  else
    std::cout << result_to_json(res, args.eps, wall) << "\n";
  return 0;
}

struct BenchArgs {
  std::string gen = "gaussian";
  std::size_t max_n = 4096;
  std::size_t d = 8;
  double eps = 1e-3;
  std::uint64_t seed = 1;
  std::string methods = "accurate,stochastic";
  int threads = 0;
};

int run_bench(const BenchArgs& args) {
  if (args.threads > 0) par::set_thread_cap(args.threads);
  std::vector<std::string> methods;
  {
    std::string cur;
    for (char c : args.methods + ",") {
      if (c == ',') {
        if (!cur.empty()) methods.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
  }
  std::printf("n,d,eps,method,wall_ms,objective_ratio\n");
  std::vector<double> log_n, log_ms;  // accurate rows, for the slope footer
  for (std::size_t n = 512; n <= args.max_n; n *= 2) {
    Rng gen_rng = Rng(args.seed).split(n);
    const PointSet ps = gen::by_name(args.gen, n, args.d, gen_rng);
    const ReferenceSolution ref = weiszfeld_reference(ps, 1e-12);
    for (const std::string& m : methods) {
      SolverConfig cfg = SolverConfig::make(args.eps, Mode::practical,
                                            args.seed + n);
      const auto t0 = clock_type::now();
      const MedianResult res = solve_instance(ps, m, cfg);
      const double wall = ms_since(t0);
      const double ratio = res.objective / ref.objective;
      std::printf("%zu,%zu,%s,%s,%s,%s\n", n, args.d,
                  format_double(args.eps).c_str(), m.c_str(),
                  format_double(wall).c_str(), format_double(ratio).c_str());
      if (m == "accurate") {
        log_n.push_back(std::log(static_cast<double>(n)));
        log_ms.push_back(std::log(std::max(wall, 1e-6)));
      }
    }
  }
  if (log_n.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(log_n.size());
    for (std::size_t i = 0; i < log_n.size(); ++i) {
      sx += log_n[i];
      sy += log_ms[i];
      sxx += log_n[i] * log_n[i];
      sxy += log_n[i] * log_ms[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    std::printf("# loglog_slope,accurate,%s\n", format_double(slope).c_str());
  }
  return 0;
}

int run_selftest(std::uint64_t seed) {
  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++failures;
  };
  Rng rng(seed);

  {  // gradient of f_t vs central differences
    Rng r = rng.split(1);
    const PointSet ps = gen::gaussian(24, 4, r);
    std::vector<double> x(4);
    for (double& v : x) v = r.normal();
    double worst = 0.0;
    for (double t : {0.5, 5.0, 50.0}) {
      worst = std::max(
          worst, fd_gradient_check(
                     [&](std::span<const double> p, std::span<double> g) {
                       ObjectiveEval e = eval_ft(ps, p, t);
                       std::copy(e.grad.begin(), e.grad.end(), g.begin());
                       return e.value;
                     },
                     x, 1e-6));
    }
    check(worst <= 1e-6, "grad f_t matches finite differences");
  }
  {  // Sherman-Morrison residual
    Rng r = rng.split(2);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const std::size_t d = 8;
      RankOneSurrogate q;
      q.scale = 1.0 + r.uniform() * 3.0;
      q.drop = q.scale * r.uniform() * 0.9;
      q.u.resize(d);
      for (double& v : q.u) v = r.normal();
      scal(1.0 / nrm2(q.u), q.u);
      std::vector<double> b(d), sol(d), back(d);
      for (double& v : b) v = r.normal();
      surrogate_solve(q, b, sol);
      surrogate_apply(q, sol, back);
      axpy(-1.0, b, back);
      worst = std::max(worst, nrm2(back) / nrm2(b));
    }
    check(worst <= 1e-10, "surrogate solve/apply round trip");
  }
  {  // tiny end-to-end vs reference
    Rng r = rng.split(3);
    const PointSet ps = gen::clusters(40, 3, 3, r);
    SolverConfig cfg = SolverConfig::make(1e-3, Mode::practical, seed);
    Rng solver_rng(cfg.seed);
    const MedianResult res = accurate_median(ps, cfg, solver_rng);
    const ReferenceSolution ref = weiszfeld_reference(ps, 1e-12);
    check(res.objective <= (1.0 + 1e-3) * ref.objective,
          "accurate_median within (1+eps) of reference");
  }
  {  // stochastic path sanity
    Rng r = rng.split(4);
    const PointSet ps = gen::clusters(300, 4, 3, r);
    Rng solver_rng(seed);
    const MedianResult res = approximate_median(ps, 0.2, solver_rng);
    const ReferenceSolution ref = weiszfeld_reference(ps, 1e-12);
    check(res.objective <= 1.5 * ref.objective,
          "approximate_median lands near the reference");
  }
  std::printf("%s\n", failures == 0 ? "selftest OK" : "selftest FAILED");
  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric median solvers"};
  app.require_subcommand(1);

  SolveArgs sargs;
  CLI::App* solve = app.add_subcommand("solve", "solve a point file");
  solve->add_option("--input", sargs.input, "points file")->required();
  solve->add_option("--method", sargs.method)
      ->check(CLI::IsMember({"accurate", "stochastic", "weiszfeld", "auto"}));
  solve->add_option("--eps", sargs.eps, "target relative accuracy");
  solve->add_option("--seed", sargs.seed);
  solve->add_option("--mode", sargs.mode)
      ->check(CLI::IsMember({"practical", "paper_faithful"}));
  solve->add_option("--weights", sargs.weights,
                    "none | last_column | file:<path>");
  solve->add_option("--output", sargs.output)
      ->check(CLI::IsMember({"json", "csv_row"}));

  BenchArgs bargs;
  CLI::App* bench = app.add_subcommand("bench", "timing table");
  bench->add_option("--gen", bargs.gen)
      ->check(CLI::IsMember({"gaussian", "clustered", "corrupted"}));
  bench->add_option("--max-n", bargs.max_n);
  bench->add_option("--d", bargs.d);
  bench->add_option("--eps", bargs.eps);
  bench->add_option("--seed", bargs.seed);
  bench->add_option("--methods", bargs.methods, "comma-separated");
  bench->add_option("--threads", bargs.threads, "kernel thread cap");

  std::uint64_t selftest_seed = 12345;
  CLI::App* selftest = app.add_subcommand("selftest", "built-in checks");
  selftest->add_option("--seed", selftest_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return run_solve(sargs);
    if (bench->parsed()) return run_bench(bargs);
    return run_selftest(selftest_seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
