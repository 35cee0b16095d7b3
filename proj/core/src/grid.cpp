#include "wienercert/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wienercert/util.hpp"

namespace wn {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

[[noreturn]] void bad_sample(double x) {
  raise(Err::NonFiniteSample, "at x = " + std::to_string(x));
}

[[noreturn]] void bad_sample(double x, double y) {
  raise(Err::NonFiniteSample,
        "at (x, y) = (" + std::to_string(x) + ", " + std::to_string(y) + ")");
}

// Finite-difference slope along one row of samples with spacing h: one-sided
// at both ends and at the origin slot, central elsewhere.
cplx fd_slope(const std::vector<cplx>& v, std::size_t stride, std::size_t count,
              std::size_t k, std::size_t origin, double h) {
  auto at = [&](std::size_t i) { return v[i * stride]; };
  if (k == 0 || k == origin) return (at(k + 1) - at(k)) / h;
  if (k + 1 == count) return (at(k) - at(k - 1)) / h;
  return (at(k + 1) - at(k - 1)) / (2.0 * h);
}

}  // namespace

void validate_domain(const Domain1D& dom) {
  if (!(dom.half_width > 0.0) || !std::isfinite(dom.half_width)) {
    raise(Err::BadParams, "half_width must be positive and finite");
  }
  if (dom.n < 16 || !power_of_two(dom.n)) {
    raise(Err::BadParams, "node count must be a power of two >= 16, got " +
                              std::to_string(dom.n));
  }
}

Domain1D reciprocal(const Domain1D& dom) {
  validate_domain(dom);
  const double dual_step = 2.0 * std::numbers::pi / (static_cast<double>(dom.n) * dom.step());
  return Domain1D{dual_step * static_cast<double>(dom.n) / 2.0, dom.n};
}

GridFunction1D sample(const PointFunction1D& fn, const Domain1D& dom, bool want_deriv) {
  validate_domain(dom);
  GridFunction1D g;
  g.dom = dom;
  g.parity = fn.parity;
  g.origin_gap = fn.origin_gap;
  g.values.resize(dom.n);
  for (std::size_t k = 0; k < dom.n; ++k) {
    const double x = dom.x(k);
    g.values[k] = fn.f(x);
    if (!finite(g.values[k])) bad_sample(x);
  }
  if (!want_deriv) return g;
  g.deriv.resize(dom.n);
  if (fn.df) {
    for (std::size_t k = 0; k < dom.n; ++k) {
      const double x = dom.x(k);
      g.deriv[k] = fn.df(x);
      if (!finite(g.deriv[k])) bad_sample(x);
    }
  } else {
    for (std::size_t k = 0; k < dom.n; ++k) {
      g.deriv[k] = fd_slope(g.values, 1, dom.n, k, dom.origin_index(), dom.step());
    }
  }
  return g;
}

GridFunction2D sample2d(const PointFunction2D& fn, const Domain1D& dx,
                        const Domain1D& dy, bool want_deriv) {
  validate_domain(dx);
  validate_domain(dy);
  GridFunction2D g;
  g.dx = dx;
  g.dy = dy;
  g.origin_gap = fn.origin_gap;
  const std::size_t total = dx.n * dy.n;
  g.values.resize(total);
  parallel_for(dx.n, [&](std::size_t i) {
    const double x = dx.x(i);
    for (std::size_t j = 0; j < dy.n; ++j) {
      const double y = dy.x(j);
      g.values[i * dy.n + j] = fn.f(x, y);
      if (!finite(g.values[i * dy.n + j])) bad_sample(x, y);
    }
  });
  if (!want_deriv) return g;

  auto fill = [&](std::vector<cplx>& out, const std::function<cplx(double, double)>& d) {
    if (!d) return;
    out.resize(total);
    parallel_for(dx.n, [&](std::size_t i) {
      const double x = dx.x(i);
      for (std::size_t j = 0; j < dy.n; ++j) {
        const double y = dy.x(j);
        out[i * dy.n + j] = d(x, y);
        if (!finite(out[i * dy.n + j])) bad_sample(x, y);
      }
    });
  };
  fill(g.d10, fn.d10);
  fill(g.d01, fn.d01);
  fill(g.d11, fn.d11);

  // Fall back to finite differences for whatever the model did not provide.
  if (g.d10.empty()) {
    g.d10.resize(total);
    for (std::size_t j = 0; j < dy.n; ++j) {
      for (std::size_t i = 0; i < dx.n; ++i) {
        g.d10[i * dy.n + j] = fd_slope(
            g.values, dy.n, dx.n, i, dx.origin_index(), dx.step());
      }
    }
  }
  if (g.d01.empty()) {
    g.d01.resize(total);
    for (std::size_t i = 0; i < dx.n; ++i) {
      const cplx* row = g.values.data() + i * dy.n;
      std::vector<cplx> tmp(row, row + dy.n);
      for (std::size_t j = 0; j < dy.n; ++j) {
        g.d01[i * dy.n + j] = fd_slope(tmp, 1, dy.n, j, dy.origin_index(), dy.step());
      }
    }
  }
  if (g.d11.empty()) {
    // Mixed partial as the y-slope of the x-slope field.
    g.d11.resize(total);
    for (std::size_t i = 0; i < dx.n; ++i) {
      const cplx* row = g.d10.data() + i * dy.n;
      std::vector<cplx> tmp(row, row + dy.n);
      for (std::size_t j = 0; j < dy.n; ++j) {
        g.d11[i * dy.n + j] = fd_slope(tmp, 1, dy.n, j, dy.origin_index(), dy.step());
      }
    }
  }
  return g;
}

namespace {

// Shared interpolation core: position in node units, clamped/zeroed per flag.
cplx interp_row(const std::vector<cplx>& v, std::size_t stride, std::size_t count,
                double pos, bool zero_extend, double raw_x) {
  if (pos < 0.0 || pos > static_cast<double>(count - 1)) {
    if (zero_extend) return {0.0, 0.0};
    raise(Err::StepOutOfDomain, "x = " + std::to_string(raw_x) + " outside the grid");
  }
  const auto i = static_cast<std::size_t>(pos);
  const double theta = pos - static_cast<double>(i);
  if (i + 1 >= count || theta == 0.0) return v[i * stride];
  return (1.0 - theta) * v[i * stride] + theta * v[(i + 1) * stride];
}

}  // namespace

cplx value_at(const GridFunction1D& g, double x, bool zero_extend) {
  const double pos = (x + g.dom.half_width) / g.dom.step();
  return interp_row(g.values, 1, g.dom.n, pos, zero_extend, x);
}

cplx value_at(const GridFunction2D& g, double x, double y, bool zero_extend) {
  const double px = (x + g.dx.half_width) / g.dx.step();
  const double py = (y + g.dy.half_width) / g.dy.step();
  const auto nx = static_cast<double>(g.dx.n - 1);
  const auto ny = static_cast<double>(g.dy.n - 1);
  if (px < 0.0 || px > nx || py < 0.0 || py > ny) {
    if (zero_extend) return {0.0, 0.0};
    raise(Err::StepOutOfDomain, "(x, y) = (" + std::to_string(x) + ", " +
                                    std::to_string(y) + ") outside the grid");
  }
  const auto i = static_cast<std::size_t>(px);
  const double tx = px - static_cast<double>(i);
  // Interpolate along y in the two bracketing rows, then along x.
  auto row_val = [&](std::size_t ri) {
    const cplx* row = g.values.data() + ri * g.dy.n;
    const auto j = static_cast<std::size_t>(py);
    const double ty = py - static_cast<double>(j);
    if (j + 1 >= g.dy.n || ty == 0.0) return row[j];
    return (1.0 - ty) * row[j] + ty * row[j + 1];
  };
  if (i + 1 >= g.dx.n || tx == 0.0) return row_val(i);
  return (1.0 - tx) * row_val(i) + tx * row_val(i + 1);
}

cplx mixed_difference(const GridFunction1D& g, double x, double u, bool zero_extend) {
  if (u == 0.0) raise(Err::DegenStep, "step u must be nonzero");
  return value_at(g, x + u, zero_extend) - value_at(g, x - u, zero_extend);
}

cplx mixed_difference(const GridFunction2D& g, double x, double y, double u,
                      double v, bool zero_extend) {
  if (u == 0.0 || v == 0.0) raise(Err::DegenStep, "steps u, v must be nonzero");
  return value_at(g, x + u, y + v, zero_extend) - value_at(g, x + u, y - v, zero_extend) -
         value_at(g, x - u, y + v, zero_extend) + value_at(g, x - u, y - v, zero_extend);
}

HeadTailSplit split_head_tail(const GridFunction1D& g) {
  constexpr double pi = std::numbers::pi;
  if (!(g.dom.half_width > 3.0 * pi)) {
    raise(Err::DomainTooSmall, "head/tail split needs half_width > 3*pi");
  }
  HeadTailSplit out;
  out.head.dom = out.tail.dom = g.dom;
  out.head.parity = out.tail.parity = g.parity;
  out.head.origin_gap = g.origin_gap;
  // The tail factor (1 - m) vanishes for |t| <= 2*pi.
  out.tail.origin_gap = std::max(g.origin_gap, 2.0 * pi);
  out.head.values.resize(g.dom.n);
  out.tail.values.resize(g.dom.n);
  const bool has_d = g.has_deriv();
  if (has_d) {
    out.head.deriv.resize(g.dom.n);
    out.tail.deriv.resize(g.dom.n);
  }
  for (std::size_t k = 0; k < g.dom.n; ++k) {
    const double t = g.dom.x(k);
    const double a = std::abs(t);
    double m = 3.0 - a / pi;
    m = std::min(1.0, std::max(0.0, m));
    out.head.values[k] = m * g.values[k];
    out.tail.values[k] = (1.0 - m) * g.values[k];
    if (has_d) {
      double dm = 0.0;  // window slope, nonzero only on the 2*pi < |t| < 3*pi ramp
      if (a > 2.0 * pi && a < 3.0 * pi) dm = (t >= 0.0 ? -1.0 : 1.0) / pi;
      out.head.deriv[k] = dm * g.values[k] + m * g.deriv[k];
      out.tail.deriv[k] = -dm * g.values[k] + (1.0 - m) * g.deriv[k];
    }
  }
  return out;
}

}  // namespace wn
