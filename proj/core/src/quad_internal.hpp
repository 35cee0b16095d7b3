#pragma once

// Shared quadrature helpers for the functional implementations. Internal to
// the library; not installed.

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace wn::detail {

// Trapezoid over (positions, values) with arbitrary node spacing.
inline double trapz(const std::vector<double>& x, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    s += 0.5 * (v[i] + v[i + 1]) * (x[i + 1] - x[i]);
  }
  return s;
}

// Same integral on every other interior node (ends kept); the |I - I2|/3
// difference is the usual second-order refinement error estimate.
inline double trapz_coarse(const std::vector<double>& x, const std::vector<double>& v) {
  if (x.size() < 3) return trapz(x, v);
  std::vector<double> cx, cv;
  cx.reserve(x.size() / 2 + 2);
  cv.reserve(x.size() / 2 + 2);
  for (std::size_t i = 0; i < x.size(); i += 2) {
    cx.push_back(x[i]);
    cv.push_back(v[i]);
  }
  if (cx.back() != x.back()) {
    cx.push_back(x.back());
    cv.push_back(v.back());
  }
  return trapz(cx, cv);
}

inline double richardson(const std::vector<double>& x, const std::vector<double>& v) {
  return std::abs(trapz(x, v) - trapz_coarse(x, v)) / 3.0;
}

// Closed-form cell mass of the logarithmic weight: int_a^b ln(2/t) dt
// = [t + t*ln(2/t)]_a^b, with the a -> 0 limit equal to 0.
inline double log_cell(double a, double b) {
  auto prim = [](double t) { return t <= 0.0 ? 0.0 : t * (1.0 + std::log(2.0 / t)); };
  return prim(b) - prim(a);
}

// Mass of c*(t/L)^(-q) over [L, inf): c*L/(q-1) when q > 1, else no model.
inline std::optional<double> power_tail(double c, double L, double q) {
  if (c == 0.0) return 0.0;
  if (!(q > 1.0)) return std::nullopt;
  return c * L / (q - 1.0);
}

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace wn::detail
