#pragma once

#include <cstddef>
#include <string>

#include "geomed/core.hpp"
#include "geomed/rng.hpp"

// Seeded instance generators shared by the bench harness, selftest and the
// acceptance suite.
namespace geomed::gen {

PointSet gaussian(std::size_t n, std::size_t d, Rng& rng);

// k well-separated gaussian clusters (mixture weights uniform)
PointSet clusters(std::size_t n, std::size_t d, std::size_t k, Rng& rng);

// gaussian cloud with a fraction of points moved to a far shell
PointSet corrupted(std::size_t n, std::size_t d, double fraction,
                   double distance, Rng& rng);

PointSet by_name(const std::string& name, std::size_t n, std::size_t d,
                 Rng& rng);

}  // namespace geomed::gen
