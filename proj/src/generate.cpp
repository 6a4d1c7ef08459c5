#include "geomed/generate.hpp"

#include <cmath>
#include <stdexcept>

namespace geomed::gen {

PointSet gaussian(std::size_t n, std::size_t d, Rng& rng) {
  std::vector<double> c(n * d);
  for (double& v : c) v = rng.normal();
  return PointSet::create(std::move(c), n, d);
}

PointSet clusters(std::size_t n, std::size_t d, std::size_t k, Rng& rng) {
  std::vector<double> centers(k * d);
  for (double& v : centers) v = 8.0 * rng.normal();
  std::vector<double> c(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ci = rng.uniform_index(k);
    for (std::size_t j = 0; j < d; ++j)
      c[i * d + j] = centers[ci * d + j] + rng.normal();
  }
  return PointSet::create(std::move(c), n, d);
}

PointSet corrupted(std::size_t n, std::size_t d, double fraction,
                   double distance, Rng& rng) {
  std::vector<double> c(n * d);
  for (double& v : c) v = rng.normal();
  const std::size_t bad = static_cast<std::size_t>(fraction * n);
  for (std::size_t i = 0; i < bad; ++i) {
    // push onto a far shell in a random direction
    std::vector<double> dir(d);
    double nn = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      dir[j] = rng.normal();
      nn += dir[j] * dir[j];
    }
    nn = std::sqrt(nn);
    if (nn == 0.0) {
      dir[0] = 1.0;
      nn = 1.0;
    }
    for (std::size_t j = 0; j < d; ++j) c[i * d + j] = distance * dir[j] / nn;
  }
  return PointSet::create(std::move(c), n, d);
}

PointSet by_name(const std::string& name, std::size_t n, std::size_t d,
                 Rng& rng) {
  if (name == "gaussian") return gaussian(n, d, rng);
  if (name == "clustered") return clusters(n, d, 3, rng);
  if (name == "corrupted") return corrupted(n, d, 0.3, 1e6, rng);
  throw std::invalid_argument("unknown generator: " + name);
}

}  // namespace geomed::gen
