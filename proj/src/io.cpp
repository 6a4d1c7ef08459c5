#include "geomed/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace geomed {

namespace {

struct ParsedRows {
  std::vector<std::vector<double>> rows;
};

ParsedRows parse_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  ParsedRows out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // normalize commas to spaces, then tokenize
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    std::string tok;
    std::vector<double> row;
    bool first = true;
    while (ss >> tok) {
      if (first && tok[0] == '#') {
        row.clear();
        break;  // comment/header line
      }
      first = false;
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0')
        throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                    ": non-numeric token '" + tok + "'");
      row.push_back(v);
    }
    if (row.empty()) continue;  // blank or comment
    if (!out.rows.empty() && row.size() != out.rows.front().size())
      throw std::invalid_argument(
          path + ":" + std::to_string(lineno) + ": ragged row (" +
          std::to_string(row.size()) + " columns, expected " +
          std::to_string(out.rows.front().size()) + ")");
    out.rows.push_back(std::move(row));
  }
  if (out.rows.empty())
    throw std::invalid_argument(path + ": no data rows");
  return out;
}

}  // namespace

PointSet parse_points(const std::string& path, WeightsMode wmode) {
  ParsedRows pr = parse_rows(path);
  const std::size_t cols = pr.rows.front().size();
  const bool wcol = wmode == WeightsMode::last_column;
  if (wcol && cols < 2)
    throw std::invalid_argument(path + ": need >= 2 columns for weights");
  const std::size_t d = wcol ? cols - 1 : cols;
  const std::size_t n = pr.rows.size();
  std::vector<double> coords(n * d);
  std::vector<double> weights;
  if (wcol) weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) coords[i * d + j] = pr.rows[i][j];
    if (wcol) weights[i] = pr.rows[i][d];
  }
  return PointSet::create(std::move(coords), n, d, std::move(weights));
}

PointSet parse_points_with_weight_file(const std::string& points_path,
                                       const std::string& weights_path) {
  PointSet base = parse_points(points_path, WeightsMode::none);
  ParsedRows wr = parse_rows(weights_path);
  std::vector<double> weights;
  weights.reserve(base.n);
  for (const auto& row : wr.rows)
    for (double v : row) weights.push_back(v);
  if (weights.size() != base.n)
    throw std::invalid_argument(weights_path + ": " +
                                std::to_string(weights.size()) +
                                " weights for " + std::to_string(base.n) +
                                " points");
  return PointSet::create(std::move(base.coords), base.n, base.d,
                          std::move(weights));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_points(const std::string& path, const PointSet& ps) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  for (std::size_t i = 0; i < ps.n; ++i) {
    for (std::size_t j = 0; j < ps.d; ++j) {
      if (j) out << ' ';
      out << format_double(ps.coords[i * ps.d + j]);
    }
    if (ps.weighted()) out << ' ' << format_double(ps.weights[i]);
    out << '\n';
  }
}

std::string result_to_json(const MedianResult& res, double eps,
                           double wall_ms) {
  std::ostringstream out;
  out << "{\"median\": [";
  for (std::size_t j = 0; j < res.x.size(); ++j) {
    if (j) out << ", ";
    out << format_double(res.x[j]);
  }
  out << "], \"objective\": " << format_double(res.objective);
  out << ", \"method\": \"" << res.method << "\"";
  out << ", \"eps\": " << format_double(eps);
  out << ", \"seed\": " << res.seed;
  out << ", \"outer_iters\": " << res.outer_iters;
  out << ", \"inner_evals\": " << res.inner_evals;
  out << ", \"wall_ms\": " << format_double(wall_ms);
  out << "}";
  return out.str();
}

std::string result_to_csv_row(const MedianResult& res, double eps,
                              double wall_ms) {
  std::ostringstream out;
  out << res.method << ',' << format_double(eps) << ',' << res.seed << ','
      << res.outer_iters << ',' << res.inner_evals << ','
      << format_double(wall_ms) << ',' << format_double(res.objective);
  for (double v : res.x) out << ',' << format_double(v);
  return out.str();
}

}  // namespace geomed
