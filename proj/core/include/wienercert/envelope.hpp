#pragma once

#include <optional>
#include <vector>

#include "wienercert/grid.hpp"

namespace wn {

enum class EnvelopeKind {
  TailSup,  // e(t) = sup of the field magnitude over |s| >= t  (non-increasing)
  HeadSup,  // e(t) = sup of the field magnitude over 0 < |s| <= t (non-decreasing)
};

enum class Field { Value, Derivative };

// Monotone majorant of a sampled field, tabulated on the magnitude classes of
// the grid: abscissa m*step holds the sup over all nodes with |x| >= m*step
// (TailSup) or 0 < |x| <= m*step (HeadSup). TailSup abscissae start at 0 (the
// origin node is a legitimate magnitude class); HeadSup abscissae start at
// step, since the origin is excluded from the head sup by definition.
struct Envelope {
  EnvelopeKind kind = EnvelopeKind::TailSup;
  std::vector<double> abscissae;       // strictly increasing, uniformly spaced
  std::vector<double> values;          // monotone per `kind`
  std::optional<double> decay;         // known exponent alpha: values ~ t^(-alpha)

  double step() const { return abscissae.size() > 1 ? abscissae[1] - abscissae[0] : 0.0; }
  double last_abscissa() const { return abscissae.back(); }

  // Step evaluation consistent with the sup semantics: TailSup returns the
  // value at the smallest tabulated abscissa >= t (so it never understates the
  // sup between nodes less than one cell away); HeadSup returns the value at
  // the largest tabulated abscissa <= t. Beyond the table the last value is
  // extended; below the first abscissa the first value is returned.
  double evaluate(double t) const;
};

// TailSup/HeadSup envelope of |values| or |deriv|. MissingDerivative when the
// derivative field is requested but absent. Cost O(n).
Envelope tail_sup(const GridFunction1D& g, Field field = Field::Value);
Envelope head_sup(const GridFunction1D& g, Field field = Field::Value);

// Suffix sup of a raw nonnegative sequence (used for one-sided tail sups that
// do not come from symmetric grids): out[k] = max(v[k], v[k+1], ...).
std::vector<double> suffix_sup(const std::vector<double>& v);

// Least-squares log-log slope over the last decade of abscissae; the returned
// alpha > 0 means values ~ t^(-alpha). nullopt when the data is unusable for a
// power fit (nonpositive values, too few points, or slope below 0.05).
std::optional<double> estimate_decay(const Envelope& e);

// Joint tail majorant of a 2-d field: value at (m*step_x, k*step_y) is the sup
// of the field magnitude over all nodes with |x| >= m*step_x and |y| >= k*step_y,
// non-increasing along both axes. The field is picked by the derivative order
// per axis: (0,0) samples, (1,0) d/dx, (0,1) d/dy, (1,1) d2/dxdy.
struct Envelope2D {
  std::vector<double> xs, ys;
  std::vector<double> values;  // row-major, xs.size() * ys.size()
  std::optional<double> decay_x, decay_y;

  double at(std::size_t i, std::size_t j) const { return values[i * ys.size() + j]; }
  double evaluate(double x, double y) const;
};

Envelope2D tail_sup_2d(const GridFunction2D& g, int dx_order, int dy_order);

}  // namespace wn
