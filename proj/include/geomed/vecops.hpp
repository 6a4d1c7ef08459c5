#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace geomed {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double nrm2sq(std::span<const double> a) { return dot(a, a); }

inline double nrm2(std::span<const double> a) { return std::sqrt(nrm2sq(a)); }

// y += c * x
inline void axpy(double c, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

inline void scal(double c, std::span<double> x) {
  for (double& v : x) v *= c;
}

inline void fill_zero(std::span<double> x) {
  for (double& v : x) v = 0.0;
}

// out = a - b
inline void sub(std::span<const double> a, std::span<const double> b,
                std::span<double> out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
}

inline double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double e = a[i] - b[i];
    s += e * e;
  }
  return s;
}

// Squared distance with Neumaier compensation; used for wide rows where the
// plain accumulation order loses bits.
inline double dist2_compensated(std::span<const double> a,
                                std::span<const double> b) {
  double s = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double e = a[i] - b[i];
    const double term = e * e;
    const double t = s + term;
    if (std::abs(s) >= std::abs(term))
      comp += (s - t) + term;
    else
      comp += (term - t) + s;
    s = t;
  }
  return s + comp;
}

inline bool all_finite(std::span<const double> a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace geomed
