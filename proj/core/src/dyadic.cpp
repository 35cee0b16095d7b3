#include <algorithm>
#include <cmath>
#include <limits>

#include "wienercert/dyadic.hpp"
#include "wienercert/errors.hpp"
#include "wienercert/util.hpp"

namespace wn {

const char* trend_name(Trend t) {
  switch (t) {
    case Trend::Converged: return "converged";
    case Trend::Diverging: return "diverging";
    default: return "inconclusive";
  }
}

namespace {

double l2_norm_sq(const GridFunction1D& f) {
  double s = 0.0;
  for (std::size_t k = 0; k < f.dom.n; ++k) s += f.dom.weight(k) * std::norm(f.values[k]);
  return s * f.dom.step();
}

double l2_norm_sq(const GridFunction2D& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.dx.n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < f.dy.n; ++j) {
      row += f.dy.weight(j) * std::norm(f.values[i * f.dy.n + j]);
    }
    s += f.dx.weight(i) * row;
  }
  return s * f.dx.step() * f.dy.step();
}

// L2^2 over x of f(x, y+h) - f(x, y-h) with y zero-extended.
double y_difference_sq(const GridFunction2D& f, double h) {
  const double dy = f.dy.step();
  const auto pad = static_cast<long long>(std::ceil(h / dy)) + 1;
  const long long ny = static_cast<long long>(f.dy.n);
  double total = 0.0;
  for (std::size_t i = 0; i < f.dx.n; ++i) {
    double acc = 0.0;
    for (long long k = -pad; k < ny + pad; ++k) {
      const double y = f.dy.x(0) + static_cast<double>(k) * dy;
      const cplx d = value_at(f, f.dx.x(i), y + h, true) - value_at(f, f.dx.x(i), y - h, true);
      const double w = (k == -pad || k == ny + pad - 1) ? 0.5 : 1.0;
      acc += w * std::norm(d);
    }
    total += f.dx.weight(i) * acc * dy;
  }
  return total * f.dx.step();
}

double x_difference_sq(const GridFunction2D& f, double h) {
  const double dx = f.dx.step();
  const auto pad = static_cast<long long>(std::ceil(h / dx)) + 1;
  const long long nx = static_cast<long long>(f.dx.n);
  double total = 0.0;
  for (long long k = -pad; k < nx + pad; ++k) {
    const double x = f.dx.x(0) + static_cast<double>(k) * dx;
    double acc = 0.0;
    for (std::size_t j = 0; j < f.dy.n; ++j) {
      const cplx d = value_at(f, x + h, f.dy.x(j), true) - value_at(f, x - h, f.dy.x(j), true);
      acc += f.dy.weight(j) * std::norm(d);
    }
    const double w = (k == -pad || k == nx + pad - 1) ? 0.5 : 1.0;
    total += w * acc * dx;
  }
  return total * f.dy.step();
}

}  // namespace

double l2_difference(const GridFunction1D& f, double h) {
  if (!(h > 0.0)) raise(Err::DegenStep, "difference step must be positive");
  // Shifted copies stop overlapping at h >= 2L: the cross term vanishes.
  if (h >= 2.0 * f.dom.half_width) return std::sqrt(2.0 * l2_norm_sq(f));
  const double dt = f.dom.step();
  const auto pad = static_cast<long long>(std::ceil(h / dt)) + 1;
  const long long n = static_cast<long long>(f.dom.n);
  double acc = 0.0;
  for (long long k = -pad; k < n + pad; ++k) {
    const double t = f.dom.x(0) + static_cast<double>(k) * dt;
    const cplx d = value_at(f, t + h, true) - value_at(f, t - h, true);
    const double w = (k == -pad || k == n + pad - 1) ? 0.5 : 1.0;
    acc += w * std::norm(d);
  }
  return std::sqrt(acc * dt);
}

double l2_difference(const GridFunction2D& f, double h1, double h2) {
  if (!(h1 > 0.0) || !(h2 > 0.0)) raise(Err::DegenStep, "difference steps must be positive");
  const bool far_x = h1 >= 2.0 * f.dx.half_width;
  const bool far_y = h2 >= 2.0 * f.dy.half_width;
  if (far_x && far_y) return 2.0 * std::sqrt(l2_norm_sq(f));
  if (far_x) return std::sqrt(2.0 * y_difference_sq(f, h2));
  if (far_y) return std::sqrt(2.0 * x_difference_sq(f, h1));

  const double dx = f.dx.step(), dy = f.dy.step();
  const auto px = static_cast<long long>(std::ceil(h1 / dx)) + 1;
  const auto py = static_cast<long long>(std::ceil(h2 / dy)) + 1;
  const long long nx = static_cast<long long>(f.dx.n);
  const long long ny = static_cast<long long>(f.dy.n);
  const long long rows = nx + 2 * px;
  std::vector<double> row_sums(static_cast<std::size_t>(rows), 0.0);
  parallel_for(static_cast<std::size_t>(rows), [&](std::size_t r) {
    const long long i = static_cast<long long>(r) - px;
    const double x = f.dx.x(0) + static_cast<double>(i) * dx;
    double acc = 0.0;
    for (long long j = -py; j < ny + py; ++j) {
      const double y = f.dy.x(0) + static_cast<double>(j) * dy;
      const cplx d = mixed_difference(f, x, y, h1, h2, true);
      const double w = (j == -py || j == ny + py - 1) ? 0.5 : 1.0;
      acc += w * std::norm(d);
    }
    const double wr = (r == 0 || r + 1 == static_cast<std::size_t>(rows)) ? 0.5 : 1.0;
    row_sums[r] = wr * acc;
  });
  double total = 0.0;
  for (double v : row_sums) total += v;
  return std::sqrt(total * dx * dy);
}

namespace {

DyadicSumState assemble(int dims, int P, std::vector<std::array<int, 2>> idx,
                        std::vector<double> terms, std::vector<std::size_t> flagged) {
  DyadicSumState st;
  st.dims = dims;
  st.truncation = P;
  st.indices = std::move(idx);
  st.terms = std::move(terms);
  st.under_resolved = std::move(flagged);
  st.shell_sums.assign(static_cast<std::size_t>(P) + 1, 0.0);
  for (std::size_t k = 0; k < st.terms.size(); ++k) {
    const int m = std::max(std::abs(st.indices[k][0]), std::abs(st.indices[k][1]));
    st.shell_sums[static_cast<std::size_t>(m)] += st.terms[k];
    st.total += st.terms[k];
  }
  return st;
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

DyadicSumState bernstein_sum(const GridFunction1D& f, int P) {
  if (P < 4) raise(Err::BadParams, "dyadic truncation must be at least 4");
  std::vector<std::array<int, 2>> idx;
  for (int s = -P; s <= P; ++s) idx.push_back({s, 0});
  std::vector<double> terms(idx.size(), 0.0);
  parallel_for(idx.size(), [&](std::size_t k) {
    const double h = std::ldexp(kPi, -idx[k][0]);
    terms[k] = std::exp2(0.5 * idx[k][0]) * l2_difference(f, h);
  });
  std::vector<std::size_t> flagged;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (std::ldexp(kPi, -idx[k][0]) < 2.0 * f.dom.step()) flagged.push_back(k);
  }
  return assemble(1, P, std::move(idx), std::move(terms), std::move(flagged));
}

DyadicSumState bernstein_sum(const GridFunction2D& f, int P) {
  if (P < 4) raise(Err::BadParams, "dyadic truncation must be at least 4");
  std::vector<std::array<int, 2>> idx;
  for (int s1 = -P; s1 <= P; ++s1) {
    for (int s2 = -P; s2 <= P; ++s2) idx.push_back({s1, s2});
  }
  std::vector<double> terms(idx.size(), 0.0);
  // l2_difference already parallelizes rows; keep the term loop serial.
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const double h1 = std::ldexp(kPi, -idx[k][0]);
    const double h2 = std::ldexp(kPi, -idx[k][1]);
    terms[k] = std::exp2(0.5 * (idx[k][0] + idx[k][1])) * l2_difference(f, h1, h2);
  }
  std::vector<std::size_t> flagged;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const bool bad_x = std::ldexp(kPi, -idx[k][0]) < 2.0 * f.dx.step();
    const bool bad_y = std::ldexp(kPi, -idx[k][1]) < 2.0 * f.dy.step();
    if (bad_x || bad_y) flagged.push_back(k);
  }
  return assemble(2, P, std::move(idx), std::move(terms), std::move(flagged));
}

DyadicSumState truncate_state(const DyadicSumState& s, int P) {
  if (P < 4 || P > s.truncation) raise(Err::BadParams, "truncation outside the computed box");
  std::vector<std::array<int, 2>> idx;
  std::vector<double> terms;
  std::vector<std::size_t> flagged;
  for (std::size_t k = 0; k < s.terms.size(); ++k) {
    if (std::max(std::abs(s.indices[k][0]), std::abs(s.indices[k][1])) > P) continue;
    const bool was_flagged =
        std::binary_search(s.under_resolved.begin(), s.under_resolved.end(), k);
    if (was_flagged) flagged.push_back(terms.size());
    idx.push_back(s.indices[k]);
    terms.push_back(s.terms[k]);
  }
  return assemble(s.dims, P, std::move(idx), std::move(terms), std::move(flagged));
}

DyadicDiagnosis convergence_diagnosis(const std::vector<DyadicSumState>& states) {
  if (states.size() < 3) raise(Err::InsufficientStates, "need at least 3 truncation states");
  for (std::size_t i = 1; i < states.size(); ++i) {
    if (states[i].truncation <= states[i - 1].truncation) {
      raise(Err::BadParams, "truncation states must strictly grow");
    }
  }
  std::vector<double> shells;
  for (const auto& st : states) shells.push_back(st.outermost_shell());

  DyadicDiagnosis d;
  d.total = states.back().total;

  const std::size_t nr = std::min<std::size_t>(3, shells.size() - 1);
  std::vector<double> ratios;
  bool all_zero = true;
  for (std::size_t i = shells.size() - nr; i < shells.size(); ++i) {
    const double prev = shells[i - 1], cur = shells[i];
    if (cur != 0.0) all_zero = false;
    if (prev == 0.0) ratios.push_back(cur == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    else ratios.push_back(cur / prev);
  }
  if (all_zero) {
    d.trend = Trend::Converged;
    d.tail_bound = 0.0;
    d.note = "outermost shells vanish";
    return d;
  }
  const double rmax = *std::max_element(ratios.begin(), ratios.end());
  const double rmin = *std::min_element(ratios.begin(), ratios.end());
  if (rmax <= 0.75) {
    d.trend = Trend::Converged;
    d.tail_bound = shells.back() * rmax / (1.0 - rmax);
    d.note = "outermost shells geometric, ratio <= " + std::to_string(rmax);
  } else if (rmin >= 0.95) {
    d.trend = Trend::Diverging;
    d.note = "outermost shells not decaying, ratio >= " + std::to_string(rmin);
  } else {
    d.trend = Trend::Inconclusive;
    d.note = "shell decay between the geometric and stagnation gates";
  }
  return d;
}

double dyadic_power_sum(double alpha, int m, int n, const std::function<double(double)>& g) {
  double s = 0.0;
  for (int p = m; p <= n; ++p) {
    const double t = std::ldexp(1.0, p);
    s += std::pow(t, alpha) * g(t);
  }
  return s;
}

double in7_factor(double alpha) {
  if (!(alpha > 0.0)) raise(Err::BadParams, "bracket factor needs a positive exponent");
  return alpha / std::expm1(alpha * std::log(2.0));
}

double in8_factor(double alpha) { return std::exp2(alpha) * in7_factor(alpha); }

}  // namespace wn
