#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "geomed/core.hpp"
#include "geomed/rng.hpp"

namespace geomed {

// Integer rounding of arbitrary non-negative weights: eps' = eps/5,
// w0_i = (n / (eps' W)) w_i, w1_i = floor(w0_i). Any (1+eps/5)-approximate
// median under w1 is a (1+eps)-approximate median under w, and
// sum w1 <= 5 n / eps.
struct RoundedWeights {
  std::vector<double> w1;  // integer-valued
  double eps_prime = 0.0;
  double W = 0.0;   // original weight sum
  double W0 = 0.0;  // rescaled sum, n/eps'
  double W1 = 0.0;  // rounded sum
};

RoundedWeights round_weights(std::span<const double> w, double eps);

// Walker/Vose alias table: O(n) build, O(1) per draw, exact categorical
// sampling with probability w_i / sum w.
class AliasSampler {
 public:
  AliasSampler() = default;
  explicit AliasSampler(std::span<const double> w);

  std::size_t sample(Rng& rng) const;
  std::size_t size() const { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

enum class MethodChoice { auto_rule, accurate, stochastic };

// Weber-problem dispatch: round weights to integers (kept verbatim when they
// already are integers with small sum), then run the stochastic method when
// eps > n^{-1/2} and the interior-point method on the implicit multiset
// otherwise. The reported objective uses the original weights.
MedianResult weighted_median(const PointSet& ps, double eps,
                             const SolverConfig& cfg, Rng& rng,
                             MethodChoice choice = MethodChoice::auto_rule);

}  // namespace geomed
