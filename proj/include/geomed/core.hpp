#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace geomed {

// Raised when a solver (as opposed to its input) fails: iteration caps,
// non-finite state, mis-configured schedules.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The n input points in d dimensions, row-major, with optional per-point
// weights. Zero-weight points are dropped at ingestion; an empty weight
// vector means every weight is 1.
struct PointSet {
  std::vector<double> coords;  // n * d
  std::vector<double> weights;
  std::size_t n = 0;
  std::size_t d = 0;

  static PointSet create(std::vector<double> coords, std::size_t n,
                         std::size_t d, std::vector<double> weights = {});

  const double* point(std::size_t i) const { return coords.data() + i * d; }
  std::span<const double> row(std::size_t i) const {
    return {coords.data() + i * d, d};
  }
  double weight(std::size_t i) const {
    return weights.empty() ? 1.0 : weights[i];
  }
  bool weighted() const { return !weights.empty(); }
  // Multiset size N = sum of weights (= n when unweighted). This is the "n"
  // that appears in tolerance and schedule formulas.
  double total_weight() const { return total_weight_; }

 private:
  double total_weight_ = 0.0;
};

enum class Mode { practical, paper_faithful };

inline const char* mode_name(Mode m) {
  return m == Mode::practical ? "practical" : "paper_faithful";
}

// Target accuracy plus the derived tolerance cascade. The derived values
// depend on the effective point count, so they are exposed as functions of N.
struct SolverConfig {
  double eps = 1e-3;
  Mode mode = Mode::practical;
  double step_factor = 1.0 / 60.0;  // beta; 1/600 in paper_faithful mode
  std::uint64_t seed = 0;
  long max_outer_iters = 500000;
  bool weiszfeld_polish = false;  // optional final polish (practical only)
  double power_iter_constant = 10.0;

  static constexpr double kTolFloor = 1e-12;  // practical-mode accuracy floor

  static SolverConfig make(double eps, Mode mode = Mode::practical,
                           std::uint64_t seed = 0);

  double eps_star() const { return eps / 3.0; }

  // Eigenvector tolerance eps_v = (1/8) (eps_star / (7 N))^2, floored in
  // practical mode.
  double eps_v(double n_eff) const;

  // Centering tolerance eps_c = (eps_v / 36)^(3/2). Derived from the (already
  // floored) eps_v so the cascade inequality holds by construction.
  double eps_c(double n_eff) const;

  // Line-search oracle tolerance eps_O = (eps_arg * eps_star / (160 N^2))^2,
  // floored in practical mode (the verbatim value underflows for n >= 100).
  double eps_line_oracle(double eps_arg, double n_eff) const;

  void validate() const;
};

// Candidate central-path point: position x, path parameter t, and the cached
// per-point statistics g_i = sqrt(1 + t^2 |x - a_i|^2), the weight
// w = sum m_i / (1 + g_i) and the harmonic mean gbar.
struct PathState {
  const PointSet* ps = nullptr;
  std::vector<double> x;
  double t = 0.0;
  std::vector<double> g;
  double w = 0.0;
  double gbar = 0.0;

  double t2w() const { return t * t * w; }
};

struct MedianResult {
  std::vector<double> x;
  double objective = 0.0;
  std::string method;
  long outer_iters = 0;
  long inner_evals = 0;
  std::uint64_t seed = 0;
};

// Shared work counters threaded through the solvers.
struct SolveCounters {
  long ft_evals = 0;       // fused value+gradient passes over the points
  long local_centers = 0;  // centering subproblem solves
  long power_iters = 0;    // total power-method applications
  long inner_steps = 0;    // centering inner iterations
};

// Shift by the coordinate-wise median, scale so f(mean)/N = 1; conditions the
// path parameter range so t_star stays bounded.
struct Normalization {
  std::vector<double> shift;
  double scale = 1.0;

  PointSet apply(const PointSet& ps) const;
  std::vector<double> apply_point(std::span<const double> x) const;
  std::vector<double> unapply_point(std::span<const double> x) const;
};

// f(x) = sum_i w_i |x - a_i|. Deterministic blocked reduction, parallel over
// point blocks.
double eval_f(const PointSet& ps, std::span<const double> x);

// Weighted arithmetic mean; a 2-approximate geometric median.
std::vector<double> mean_point(const PointSet& ps);

std::pair<PointSet, Normalization> normalize(const PointSet& ps);

// True when n == 1 or all points coincide; the solvers short-circuit then
// (the t-schedule would divide by f(mean) = 0).
bool all_points_identical(const PointSet& ps);

}  // namespace geomed
