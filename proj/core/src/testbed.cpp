#include <algorithm>
#include <cmath>

#include "wienercert/testbed.hpp"

namespace wn {

namespace {

constexpr double kPi = 3.14159265358979323846;

double require(const std::map<std::string, double>& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end()) raise(Err::BadParams, "missing parameter '" + key + "'");
  return it->second;
}

double optional_param(const std::map<std::string, double>& p, const std::string& key,
                      double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& p,
                    std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : p) {
    (void)v;
    if (std::find_if(keys.begin(), keys.end(),
                     [&](const char* s) { return k == s; }) == keys.end()) {
      raise(Err::BadParams, "unknown parameter '" + k + "'");
    }
  }
}

std::size_t pow2_ceil(double x) {
  std::size_t n = 16;
  while (static_cast<double>(n) < x) n <<= 1;
  return n;
}

// Ladder ending at (L_fin, N_fin), halving both twice.
Ladder ladder_ending(double L_fin, std::size_t N_fin) {
  return {{L_fin / 4.0, N_fin / 4}, {L_fin / 2.0, N_fin / 2}, {L_fin, N_fin}};
}

// Finest node count that keeps >= 8 samples per oscillation period at the
// domain edge: period 2*pi/pd, step 2L/N  =>  N >= 8 * L * pd / pi.
std::size_t nodes_for_phase(double L, double pd, std::size_t floor_n) {
  const std::size_t need = pow2_ceil(8.0 * L * pd / kPi);
  return std::max(need, floor_n);
}

// C^2 quintic ramp: 0 below gap, 1 above 2*gap.
double smoothstep(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
double smoothstep_d(double u) { return 30.0 * u * u * (1.0 - u) * (1.0 - u); }

struct Cutoff {
  double gap;
  double w(double a) const {  // a = |t|
    if (a <= gap) return 0.0;
    if (a >= 2.0 * gap) return 1.0;
    return smoothstep((a - gap) / gap);
  }
  double dw(double a) const {
    if (a <= gap || a >= 2.0 * gap) return 0.0;
    return smoothstep_d((a - gap) / gap) / gap;
  }
};

double sgn(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

}  // namespace

Ladder base_ladder_1d() { return {{64.0, 1u << 14}, {128.0, 1u << 15}, {256.0, 1u << 16}}; }
Ladder base_ladder_2d() { return {{8.0, 256}, {16.0, 512}, {32.0, 1024}}; }

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {
      "polya",    "zygmund_odd", "corollary", "stein_chirp", "gaussian",
      "exp_decay", "triangle",   "tensor2d",  "mixed2d"};
  return names;
}

Family make_family(const std::string& name, const std::map<std::string, double>& params) {
  Family fam;
  fam.name = name;
  fam.params = params;

  if (name == "gaussian") {
    reject_unknown(params, {});
    fam.fn.f = [](double t) { return cplx(std::exp(-0.5 * t * t)); };
    fam.fn.df = [](double t) { return cplx(-t * std::exp(-0.5 * t * t)); };
    fam.fn.parity = Parity::Even;
    fam.expected = "member";
    fam.closed_norm = 1.0;
    fam.oracle.fn = fam.fn.f;
    fam.default_ladder = base_ladder_1d();
    return fam;
  }

  if (name == "exp_decay") {
    reject_unknown(params, {});
    fam.fn.f = [](double t) { return cplx(std::exp(-std::abs(t))); };
    // right-hand slope at the origin kink
    fam.fn.df = [](double t) {
      const double s = t == 0.0 ? -1.0 : -sgn(t);
      return cplx(s * std::exp(-std::abs(t)));
    };
    fam.fn.parity = Parity::Even;
    fam.expected = "member";
    fam.closed_norm = 1.0;
    fam.oracle.fn = fam.fn.f;
    fam.default_ladder = base_ladder_1d();
    return fam;
  }

  if (name == "triangle") {
    reject_unknown(params, {});
    fam.fn.f = [](double t) { return cplx(std::max(0.0, 1.0 - std::abs(t))); };
    fam.fn.df = [](double t) {
      if (std::abs(t) >= 1.0) return cplx(0.0);
      return cplx(t == 0.0 ? -1.0 : -sgn(t));
    };
    fam.fn.parity = Parity::Even;
    fam.expected = "member";
    fam.closed_norm = 1.0;
    fam.oracle.fn = fam.fn.f;
    fam.default_ladder = base_ladder_1d();
    return fam;
  }

  if (name == "polya") {
    reject_unknown(params, {"a"});
    const double a = require(params, "a");
    if (!(a > 0.0)) raise(Err::BadParams, "polya needs a > 0");
    fam.fn.f = [a](double t) { return cplx(std::pow(1.0 + std::abs(t), -a)); };
    fam.fn.df = [a](double t) {
      const double s = t == 0.0 ? 1.0 : sgn(t);
      return cplx(-a * s * std::pow(1.0 + std::abs(t), -a - 1.0));
    };
    fam.fn.parity = Parity::Even;
    fam.expected = "member";  // even, convex, decreasing => nonnegative g
    fam.closed_norm = 1.0;    // ||g||_1 = integral g = f(0)
    fam.tail_alpha = a;
    fam.deriv_beta = a + 1.0;
    fam.oracle.fn = fam.fn.f;
    fam.default_ladder = base_ladder_1d();
    return fam;
  }

  if (name == "zygmund_odd") {
    reject_unknown(params, {"gamma"});
    const double g = require(params, "gamma");
    if (!(g > -1.0)) raise(Err::BadParams, "zygmund_odd needs gamma > -1");
    fam.fn.f = [g](double t) {
      const double a = std::abs(t);
      if (a >= 1.0 || a == 0.0) return cplx(0.0);
      return cplx(sgn(t) * std::pow(a, g) * (1.0 - a));
    };
    if (g >= 1.0) {
      // f odd => f' even; inner one-sided value at the |t|=1 kink.
      fam.fn.df = [g](double t) {
        const double a = std::abs(t);
        if (a > 1.0) return cplx(0.0);
        if (a == 0.0) return cplx(g == 1.0 ? 1.0 : 0.0);
        return cplx(g * std::pow(a, g - 1.0) - (g + 1.0) * std::pow(a, g));
      };
    }
    fam.fn.parity = Parity::Odd;
    fam.expected = g > 0.0 ? "member" : "non-member";
    fam.oracle.fn = fam.fn.f;
    fam.default_ladder = base_ladder_1d();
    return fam;
  }

  if (name == "corollary") {
    reject_unknown(params, {"a", "b", "gap"});
    const double a = require(params, "a");
    const double b = require(params, "b");
    const double gap = optional_param(params, "gap", 1.0);
    if (!(a > 0.0) || !(b > 0.0) || !(gap > 0.0)) {
      raise(Err::BadParams, "corollary needs a > 0, b > 0, gap > 0");
    }
    const Cutoff cut{gap};
    fam.fn.f = [a, b, cut](double t) {
      const double u = std::abs(t);
      const double w = cut.w(u);
      if (w == 0.0) return cplx(0.0);
      return cplx(w * std::pow(u, -a) * std::sin(std::pow(u, b)));
    };
    fam.fn.df = [a, b, cut](double t) {
      const double u = std::abs(t);
      if (u <= cut.gap) return cplx(0.0);
      const double s = sgn(t);
      const double w = cut.w(u), dw = cut.dw(u);
      const double amp = std::pow(u, -a);
      const double ph = std::pow(u, b);
      const double osc = std::sin(ph);
      const double dosc = std::cos(ph) * b * std::pow(u, b - 1.0);
      return cplx(s * (dw * amp * osc - a * w * amp / u * osc + w * amp * dosc));
    };
    fam.fn.parity = Parity::Even;
    fam.fn.origin_gap = gap;
    fam.tail_alpha = a;
    fam.deriv_beta = a + 1.0 - b;
    const double s = a + (a + 1.0 - b);  // alpha + beta
    fam.expected = s > 1.0 + 1e-12 ? "member"
                   : (s < 1.0 - 1e-12 ? "counterexample-regime" : "boundary");
    fam.oracle.fn = fam.fn.f;
    fam.oracle.phase_deriv = [b](double L) { return b * std::pow(L, b - 1.0); };
    if (b > 1.0) {
      const double q = a + 1.0 - 0.5 * b;  // representing-side tail exponent
      if (q > 1.0) {
        const double c = (4.0 / kPi) / std::sqrt(2.0 * kPi) * std::sqrt(b * (b - 1.0));
        fam.oracle.tail_mass = [c, q](double L) -> std::optional<double> {
          return c * std::pow(L, 1.0 - q) / (q - 1.0);
        };
      } else {
        fam.oracle.tail_divergent = s < 1.0;
      }
    }
    // Resolution-driven ladder: the finest rung keeps 8 samples per period.
    if (fam.oracle.tail_divergent) {
      const double L = 256.0;
      fam.default_ladder =
          ladder_ending(L, nodes_for_phase(L, b * std::pow(L, b - 1.0), 1u << 16));
    } else {
      double L = 64.0;
      while (L < 2048.0 &&
             nodes_for_phase(2.0 * L, b * std::pow(2.0 * L, b - 1.0), 1u << 16) <=
                 (1u << 23)) {
        L *= 2.0;
      }
      fam.default_ladder = ladder_ending(L, nodes_for_phase(L, b * std::pow(L, b - 1.0),
                                                            1u << 16));
    }
    return fam;
  }

  if (name == "stein_chirp") {
    reject_unknown(params, {"a1", "b1"});
    const double a1 = require(params, "a1");
    const double b1 = require(params, "b1");
    if (!(a1 > 0.0) || !(b1 > 0.0)) raise(Err::BadParams, "stein_chirp needs a1 > 0, b1 > 0");
    fam.fn.f = [a1, b1](double t) {
      const double ph = std::pow(std::abs(t), a1);
      const double amp = std::pow(1.0 + t * t, -b1);
      return amp * cplx(std::cos(ph), std::sin(ph));
    };
    fam.fn.df = [a1, b1](double t) {
      const double u = std::abs(t);
      const double amp = std::pow(1.0 + t * t, -b1);
      const cplx e = cplx(std::cos(std::pow(u, a1)), std::sin(std::pow(u, a1)));
      const double damp = -2.0 * b1 * t * std::pow(1.0 + t * t, -b1 - 1.0);
      const cplx dphase = u == 0.0 ? cplx(0.0)
                                   : cplx(0.0, a1 * std::pow(u, a1 - 1.0) * sgn(t));
      return damp * e + amp * dphase * e;
    };
    fam.fn.parity = Parity::Even;
    fam.tail_alpha = 2.0 * b1;
    fam.deriv_beta = 2.0 * b1 + 1.0 - a1;
    if (a1 == 1.0) fam.expected = "member";  // linear phase shifts a member
    else if (4.0 * b1 > a1) fam.expected = "member";
    else if (4.0 * b1 == a1) fam.expected = "boundary";
    else fam.expected = "non-member";
    fam.oracle.fn = fam.fn.f;
    fam.oracle.phase_deriv = [a1](double L) { return a1 * std::pow(L, a1 - 1.0); };
    fam.oracle.tail_divergent = a1 != 1.0 && 4.0 * b1 < a1;
    if (a1 > 1.0) {
      const double q = 2.0 * b1 + 1.0 - 0.5 * a1;
      if (q > 1.0) {
        const double c = 2.0 / std::sqrt(2.0 * kPi) * std::sqrt(a1 * (a1 - 1.0));
        fam.oracle.tail_mass = [c, q](double L) -> std::optional<double> {
          return c * std::pow(L, 1.0 - q) / (q - 1.0);
        };
      }
    }
    const double L = 256.0;
    fam.default_ladder = ladder_ending(
        L, std::min<std::size_t>(nodes_for_phase(L, a1 * std::pow(L, a1 - 1.0), 1u << 16),
                                 1u << 23));
    return fam;
  }

  if (name == "tensor2d") {
    reject_unknown(params, {"a"});
    fam.dims = 2;
    if (params.count("a")) {
      const double a = require(params, "a");
      if (!(a > 0.0)) raise(Err::BadParams, "tensor2d needs a > 0");
      auto g = [a](double t) { return std::pow(1.0 + t * t, -a); };
      auto dg = [a](double t) { return -2.0 * a * t * std::pow(1.0 + t * t, -a - 1.0); };
      fam.fn2.f = [g](double x, double y) { return cplx(g(x) * g(y)); };
      fam.fn2.d10 = [g, dg](double x, double y) { return cplx(dg(x) * g(y)); };
      fam.fn2.d01 = [g, dg](double x, double y) { return cplx(g(x) * dg(y)); };
      fam.fn2.d11 = [dg](double x, double y) { return cplx(dg(x) * dg(y)); };
      fam.tail_alpha = 2.0 * a;
      fam.deriv_beta = 2.0 * a + 1.0;
    } else {
      auto g = [](double t) { return std::exp(-0.5 * t * t); };
      fam.fn2.f = [g](double x, double y) { return cplx(g(x) * g(y)); };
      fam.fn2.d10 = [g](double x, double y) { return cplx(-x * g(x) * g(y)); };
      fam.fn2.d01 = [g](double x, double y) { return cplx(-y * g(x) * g(y)); };
      fam.fn2.d11 = [g](double x, double y) { return cplx(x * y * g(x) * g(y)); };
    }
    fam.expected = "member";
    fam.closed_norm = 1.0;  // nonnegative representing side, value f(0,0)
    fam.default_ladder = base_ladder_2d();
    return fam;
  }

  if (name == "mixed2d") {
    reject_unknown(params, {"a"});
    const double a = require(params, "a");
    if (!(a > 0.0)) raise(Err::BadParams, "mixed2d needs a > 0");
    fam.dims = 2;
    fam.fn2.f = [a](double x, double y) {
      return cplx(std::pow(1.0 + x * x + y * y, -a));
    };
    fam.fn2.d10 = [a](double x, double y) {
      return cplx(-2.0 * a * x * std::pow(1.0 + x * x + y * y, -a - 1.0));
    };
    fam.fn2.d01 = [a](double x, double y) {
      return cplx(-2.0 * a * y * std::pow(1.0 + x * x + y * y, -a - 1.0));
    };
    fam.fn2.d11 = [a](double x, double y) {
      return cplx(4.0 * a * (a + 1.0) * x * y * std::pow(1.0 + x * x + y * y, -a - 2.0));
    };
    fam.expected = "member";
    fam.closed_norm = 1.0;
    fam.tail_alpha = 2.0 * a;
    fam.deriv_beta = 2.0 * a + 1.0;
    fam.default_ladder = base_ladder_2d();
    return fam;
  }

  raise(Err::BadParams, "unknown family '" + name + "'");
}

}  // namespace wn
