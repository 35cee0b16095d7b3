#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "wienercert/errors.hpp"

namespace wn {

using cplx = std::complex<double>;

// Uniform symmetric grid: n nodes x_k = -half_width + k*step, step = 2*half_width/n.
// n must be a power of two >= 16 so the spectral transforms can run in-place and
// the origin falls exactly on node n/2; the rightmost node is half_width - step
// (the +half_width node is the periodic image of -half_width).
struct Domain1D {
  double half_width = 0.0;
  std::size_t n = 0;

  double step() const { return 2.0 * half_width / static_cast<double>(n); }
  double x(std::size_t k) const {
    return -half_width + static_cast<double>(k) * step();
  }
  std::size_t origin_index() const { return n / 2; }
  // Trapezoid weight: 1/2 at both boundary nodes, 1 inside.
  double weight(std::size_t k) const { return (k == 0 || k + 1 == n) ? 0.5 : 1.0; }

  bool operator==(const Domain1D&) const = default;
};

// Throws BadParams unless half_width > 0 (finite) and n is a power of two >= 16.
void validate_domain(const Domain1D& dom);

// Grid of the dual variable: same node count, spacing 2*pi/(n*step), so that
// step * dual_step * n == 2*pi holds exactly up to rounding.
Domain1D reciprocal(const Domain1D& dom);

enum class Parity { Unknown, Even, Odd };

// Sampled function: complex values at the nodes, optional derivative samples
// (empty when absent), and the radius around the origin where the function is
// identically zero (0 when it is not).
struct GridFunction1D {
  Domain1D dom;
  std::vector<cplx> values;
  std::vector<cplx> deriv;  // empty or size n
  Parity parity = Parity::Unknown;
  double origin_gap = 0.0;

  bool has_deriv() const { return !deriv.empty(); }
  cplx at(std::size_t k) const {
    if (k >= values.size()) raise(Err::BadIndex, "node " + std::to_string(k));
    return values[k];
  }
};

struct GridFunction2D {
  Domain1D dx, dy;
  std::vector<cplx> values;  // row-major: values[i * dy.n + j] at (x_i, y_j)
  std::vector<cplx> d10;     // d/dx samples, empty or size dx.n*dy.n
  std::vector<cplx> d01;     // d/dy samples
  std::vector<cplx> d11;     // d2/dxdy samples
  double origin_gap = 0.0;

  cplx at(std::size_t i, std::size_t j) const {
    if (i >= dx.n || j >= dy.n) {
      raise(Err::BadIndex, "node (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    return values[i * dy.n + j];
  }
};

// Pointwise model handed to the sampler. df may be empty; when present it must
// return the right-hand slope at kinks (the origin in all shipped families) so
// that sampled derivatives agree with the one-sided finite-difference rule.
struct PointFunction1D {
  std::function<cplx(double)> f;
  std::function<cplx(double)> df;  // may be null
  Parity parity = Parity::Unknown;
  double origin_gap = 0.0;
};

struct PointFunction2D {
  std::function<cplx(double, double)> f;
  std::function<cplx(double, double)> d10;  // may be null
  std::function<cplx(double, double)> d01;
  std::function<cplx(double, double)> d11;
  double origin_gap = 0.0;
};

// Evaluates fn on the grid; throws NonFiniteSample (with the abscissa) on
// NaN/Inf. With want_deriv, fills `deriv` from fn.df when available, else from
// finite differences: central inside, one-sided at both ends and at the origin
// node (kinks of even members sit at 0, where the central quotient would
// silently average the two slopes away).
GridFunction1D sample(const PointFunction1D& fn, const Domain1D& dom,
                      bool want_deriv = true);

GridFunction2D sample2d(const PointFunction2D& fn, const Domain1D& dx,
                        const Domain1D& dy, bool want_deriv = true);

// Linear interpolation of the samples at an off-node point. Outside the node
// range: 0 when zero_extend, otherwise StepOutOfDomain.
cplx value_at(const GridFunction1D& g, double x, bool zero_extend = false);
cplx value_at(const GridFunction2D& g, double x, double y, bool zero_extend = false);

// Symmetric difference f(x+u) - f(x-u) (interpolated). DegenStep when u == 0.
cplx mixed_difference(const GridFunction1D& g, double x, double u,
                      bool zero_extend = false);

// Double symmetric difference in both coordinates:
//   f(x+u,y+v) - f(x+u,y-v) - f(x-u,y+v) + f(x-u,y-v).
// DegenStep when u == 0 or v == 0.
cplx mixed_difference(const GridFunction2D& g, double x, double y, double u,
                      double v, bool zero_extend = false);

// Splits f into a compactly supported head and a tail vanishing near the
// origin using the piecewise-linear window m(t) = clamp(3 - |t|/pi, 0, 1):
// head = m*f (zero for |t| >= 3*pi), tail = (1-m)*f (zero for |t| <= 2*pi).
// Their sum reproduces f at every node. Derivatives, when present, follow the
// product rule. DomainTooSmall unless half_width > 3*pi.
struct HeadTailSplit {
  GridFunction1D head;
  GridFunction1D tail;
};
HeadTailSplit split_head_tail(const GridFunction1D& g);

}  // namespace wn
