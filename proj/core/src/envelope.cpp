#include "wienercert/envelope.hpp"

#include <algorithm>
#include <cmath>

namespace wn {

namespace {

const std::vector<cplx>& pick_field(const GridFunction1D& g, Field field) {
  if (field == Field::Derivative) {
    if (!g.has_deriv()) raise(Err::MissingDerivative, "envelope of |f'| needs derivative samples");
    return g.deriv;
  }
  return g.values;
}

// Magnitude-class maxima: cls[m] = max |v_j| over nodes with |x_j| = m*step,
// i.e. j = n/2 - m and (when inside the grid) j = n/2 + m. Node indices are
// mapped by the exact integer relation m = |j - n/2|, so no floating-point
// comparisons enter and brute-force checks can match bit-for-bit.
std::vector<double> class_max(const std::vector<cplx>& v, std::size_t n) {
  const std::size_t half = n / 2;
  std::vector<double> cls(half + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t m = j >= half ? j - half : half - j;
    cls[m] = std::max(cls[m], std::abs(v[j]));
  }
  return cls;
}

}  // namespace

double Envelope::evaluate(double t) const {
  if (kind == EnvelopeKind::TailSup) {
    if (t <= abscissae.front()) return values.front();
    if (t >= abscissae.back()) return values.back();
    const double pos = (t - abscissae.front()) / step();
    const auto idx = static_cast<std::size_t>(std::ceil(pos - 1e-12));
    return values[std::min(idx, values.size() - 1)];
  }
  if (t <= abscissae.front()) return values.front();
  if (t >= abscissae.back()) return values.back();
  const double pos = (t - abscissae.front()) / step();
  const auto idx = static_cast<std::size_t>(std::floor(pos + 1e-12));
  return values[std::min(idx, values.size() - 1)];
}

Envelope tail_sup(const GridFunction1D& g, Field field) {
  const auto& v = pick_field(g, field);
  const std::size_t half = g.dom.n / 2;
  auto cls = class_max(v, g.dom.n);
  // Running max from the outermost class inward makes it a true tail sup.
  for (std::size_t m = half; m-- > 0;) cls[m] = std::max(cls[m], cls[m + 1]);
  Envelope e;
  e.kind = EnvelopeKind::TailSup;
  e.values = std::move(cls);
  e.abscissae.resize(half + 1);
  for (std::size_t m = 0; m <= half; ++m) e.abscissae[m] = static_cast<double>(m) * g.dom.step();
  return e;
}

Envelope head_sup(const GridFunction1D& g, Field field) {
  const auto& v = pick_field(g, field);
  const std::size_t half = g.dom.n / 2;
  const auto cls = class_max(v, g.dom.n);
  Envelope e;
  e.kind = EnvelopeKind::HeadSup;
  e.values.resize(half);      // classes 1..half: the origin class is excluded
  e.abscissae.resize(half);
  double run = 0.0;
  for (std::size_t m = 1; m <= half; ++m) {
    run = std::max(run, cls[m]);
    e.values[m - 1] = run;
    e.abscissae[m - 1] = static_cast<double>(m) * g.dom.step();
  }
  return e;
}

std::vector<double> suffix_sup(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  double run = 0.0;
  for (std::size_t k = v.size(); k-- > 0;) {
    run = std::max(run, v[k]);
    out[k] = run;
  }
  return out;
}

namespace {

struct LogFit {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  void add(double lx, double ly) {
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++count;
  }
  std::optional<double> slope() const {
    if (count < 3) return std::nullopt;
    const double denom = static_cast<double>(count) * sxx - sx * sx;
    if (denom <= 0.0) return std::nullopt;
    return (static_cast<double>(count) * sxy - sx * sy) / denom;
  }
};

}  // namespace

std::optional<double> estimate_decay(const Envelope& e) {
  if (e.kind != EnvelopeKind::TailSup) return std::nullopt;
  const double hi = e.last_abscissa();
  const double lo = hi / 10.0;
  const double mid = std::sqrt(lo * hi);
  LogFit full, inner, outer;
  for (std::size_t k = 0; k < e.abscissae.size(); ++k) {
    const double a = e.abscissae[k];
    if (a < lo || a > hi) continue;
    if (!(e.values[k] > 0.0)) return std::nullopt;
    const double lx = std::log(a);
    const double ly = std::log(e.values[k]);
    full.add(lx, ly);
    (a < mid ? inner : outer).add(lx, ly);
  }
  if (full.count < 4) return std::nullopt;
  const auto s = full.slope();
  if (!s) return std::nullopt;
  const double alpha = -*s;
  if (!(alpha >= 0.05)) return std::nullopt;
  // A power tail model is only sound when the log-log slope is not flattening
  // toward the domain edge.  Steepening (sub-power, e.g. exponential) just
  // makes the extrapolated tail conservative; flattening (log-like decay)
  // would borrow an unsupported bound from the inner window.
  const auto s_in = inner.slope(), s_out = outer.slope();
  if (s_in && s_out && *s_in < 0.0 && -*s_out < 0.9 * -*s_in) return std::nullopt;
  return alpha;
}

double Envelope2D::evaluate(double x, double y) const {
  auto index = [](const std::vector<double>& a, double t) {
    if (t <= a.front()) return std::size_t{0};
    if (t >= a.back()) return a.size() - 1;
    const double step = a[1] - a[0];
    const double pos = (t - a.front()) / step;
    const auto idx = static_cast<std::size_t>(std::ceil(pos - 1e-12));
    return std::min(idx, a.size() - 1);
  };
  return at(index(xs, x), index(ys, y));
}

Envelope2D tail_sup_2d(const GridFunction2D& g, int dx_order, int dy_order) {
  const std::vector<cplx>* field = nullptr;
  if (dx_order == 0 && dy_order == 0) field = &g.values;
  else if (dx_order == 1 && dy_order == 0) field = &g.d10;
  else if (dx_order == 0 && dy_order == 1) field = &g.d01;
  else if (dx_order == 1 && dy_order == 1) field = &g.d11;
  else raise(Err::BadParams, "derivative orders must be 0 or 1 per axis");
  if (field->empty()) {
    raise(Err::MissingPartial, "2-d envelope needs the (" + std::to_string(dx_order) +
                                   "," + std::to_string(dy_order) + ") partial field");
  }

  const std::size_t hx = g.dx.n / 2, hy = g.dy.n / 2;
  Envelope2D e;
  e.xs.resize(hx + 1);
  e.ys.resize(hy + 1);
  for (std::size_t m = 0; m <= hx; ++m) e.xs[m] = static_cast<double>(m) * g.dx.step();
  for (std::size_t m = 0; m <= hy; ++m) e.ys[m] = static_cast<double>(m) * g.dy.step();
  e.values.assign((hx + 1) * (hy + 1), 0.0);

  // Per-class maxima first, then a suffix max over both axes.
  for (std::size_t i = 0; i < g.dx.n; ++i) {
    const std::size_t mi = i >= hx ? i - hx : hx - i;
    for (std::size_t j = 0; j < g.dy.n; ++j) {
      const std::size_t mj = j >= hy ? j - hy : hy - j;
      double& slot = e.values[mi * (hy + 1) + mj];
      slot = std::max(slot, std::abs((*field)[i * g.dy.n + j]));
    }
  }
  for (std::size_t mi = hx + 1; mi-- > 0;) {
    for (std::size_t mj = hy + 1; mj-- > 0;) {
      double& slot = e.values[mi * (hy + 1) + mj];
      if (mi + 1 <= hx) slot = std::max(slot, e.values[(mi + 1) * (hy + 1) + mj]);
      if (mj + 1 <= hy) slot = std::max(slot, e.values[mi * (hy + 1) + mj + 1]);
    }
  }
  return e;
}

}  // namespace wn
