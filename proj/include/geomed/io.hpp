#pragma once

#include <string>

#include "geomed/core.hpp"

namespace geomed {

enum class WeightsMode { none, last_column };

// Rows of whitespace- or comma-separated decimal reals; lines starting with
// '#' are skipped. With WeightsMode::last_column the final column holds the
// per-point weight. Errors carry 1-based line numbers.
PointSet parse_points(const std::string& path,
                      WeightsMode wmode = WeightsMode::none);

// Same grammar, reading weights (one per row) from a separate file.
PointSet parse_points_with_weight_file(const std::string& points_path,
                                       const std::string& weights_path);

// Decimal with 17 significant digits: doubles round-trip bit-for-bit.
std::string format_double(double v);

void write_points(const std::string& path, const PointSet& ps);

// {"median": [...], "objective": ..., "method": ..., "eps": ..., "seed": ...,
//  "outer_iters": ..., "inner_evals": ..., "wall_ms": ...}
std::string result_to_json(const MedianResult& res, double eps,
                           double wall_ms);

std::string result_to_csv_row(const MedianResult& res, double eps,
                              double wall_ms);

}  // namespace geomed
