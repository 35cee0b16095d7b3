#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include <wienercert/spectral.hpp>

#include "test_support.hpp"

using namespace wn;
using doctest::Approx;

namespace {

const double kPi = std::acos(-1.0);

double gauss(double t) { return std::exp(-t * t / 2.0); }
double poisson_side(double t) { return std::exp(-std::abs(t)); }
double fejer_side(double t) { return std::max(0.0, 1.0 - std::abs(t)); }

bool has_warning(const std::vector<std::string>& ws, const char* needle) {
  for (const auto& w : ws) {
    if (w.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::vector<double> ramp(double lo, double hi, double step) {
  std::vector<double> out;
  for (double t = lo; t <= hi + step * 1e-9; t += step) out.push_back(t);
  return out;
}

// Coarse cells away from u = 2 plus 1e-5 cells across (1.9, 2.1), so that the
// probe spacing of the transform resolves the analytic behaviour near s = 0.
std::vector<double> hybrid_abscissae() {
  std::vector<double> a = ramp(0.95, 1.90, 0.01);
  for (double t = 1.900005; t < 2.0999; t += 1e-5) a.push_back(t);
  for (double t = 2.10; t <= 3.05 + 1e-9; t += 0.01) a.push_back(t);
  return a;
}

std::vector<double> map_values(const std::vector<double>& a, double (*h)(double)) {
  std::vector<double> out;
  out.reserve(a.size());
  for (double u : a) out.push_back(h(u));
  return out;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("radix-2 transform matches the direct sum and inverts") {
  const std::size_t n = 64;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> a(n);
  for (auto& v : a) v = cplx(u(rng), u(rng));

  std::vector<cplx> fwd = a;
  fft_pow2(fwd, -1);
  for (std::size_t k = 0; k < n; ++k) {
    cplx direct = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      direct += a[j] * std::polar(1.0, -2.0 * kPi * double(j * k) / double(n));
    }
    CHECK(std::abs(fwd[k] - direct) < 1e-10);
  }

  std::vector<cplx> back = fwd;
  fft_pow2(back, +1);
  for (std::size_t k = 0; k < n; ++k) {
    CHECK(std::abs(back[k] - double(n) * a[k]) < 1e-10);
  }

  std::vector<cplx> bad(48, cplx(1.0));
  wt::expect_error(Err::BadParams, [&] { fft_pow2(bad, -1); });
}

TEST_CASE("gaussian pair: the representing function is the normal density") {
  const GridFunction1D f = wt::sample_real(64.0, 1 << 14, gauss);
  const SpectralPair p = inverse_transform(f);
  CHECK(p.plancherel_gap <= 1e-3);
  CHECK(p.warnings.empty());

  // compare at dual-grid nodes, where the discrete transform is alias-exact
  const double c = 1.0 / std::sqrt(2.0 * kPi);
  const std::size_t mid = p.g.dom.origin_index();
  for (std::size_t k = mid - 60; k <= mid + 60; k += 10) {
    const double x = p.g.dom.x(k);
    CHECK(std::abs(p.g.values[k].real() - c * gauss(x)) < 1e-9);
    CHECK(std::abs(p.g.values[k].imag()) < 1e-9);
  }
  CHECK(norm_l1(p.g) == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("two-sided exponential pair: the representing function is Cauchy") {
  const GridFunction1D f = wt::sample_real(64.0, 1 << 14, poisson_side);
  const SpectralPair p = inverse_transform(f);
  CHECK(p.plancherel_gap <= 1e-3);
  const cplx at0 = value_at(p.g, 0.0);
  CHECK(at0.real() == Approx(1.0 / kPi).epsilon(1e-4));
  const cplx at1 = value_at(p.g, 1.0);
  CHECK(at1.real() == Approx(0.5 / kPi).epsilon(1e-3));
  CHECK(norm_l1(p.g) == Approx(1.0).epsilon(5e-3));
}

TEST_CASE("triangle pair: the representing function is the squared sinc") {
  const GridFunction1D f = wt::sample_real(64.0, 1 << 14, fejer_side);
  const SpectralPair p = inverse_transform(f);
  CHECK(p.plancherel_gap <= 1e-3);
  const cplx at_pi = value_at(p.g, kPi);
  const double want = (1.0 / (2.0 * kPi)) * std::pow(std::sin(kPi / 2.0) / (kPi / 2.0), 2);
  CHECK(at_pi.real() == Approx(want).epsilon(1e-3));
  CHECK(norm_l1(p.g) == Approx(1.0).epsilon(5e-3));
}

TEST_CASE("synthesis returns to the sampled side") {
  const GridFunction1D f = wt::sample_real(16.0, 1024, gauss);
  const SpectralPair p = inverse_transform(f);
  const GridFunction1D back = forward_transform(p.g);
  REQUIRE(back.values.size() == f.values.size());
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    num += std::norm(back.values[k] - f.values[k]);
    den += std::norm(f.values[k]);
  }
  CHECK(std::sqrt(num / den) <= 1e-3);
}

TEST_CASE("square-root factorization achieves the L1 norm") {
  GridFunction1D ind;
  ind.dom = {8.0, 128};
  ind.values.assign(128, cplx(0.0));
  for (std::size_t k = 0; k < 128; ++k) {
    const double x = -8.0 + double(k) * 0.125;
    if (x >= 0.0 && x < 1.0) ind.values[k] = cplx(1.0);
  }
  const RieszFactorization ri = riesz_factorize(ind);
  CHECK(ri.g_l1 == Approx(1.0).epsilon(1e-14));
  CHECK(ri.product == Approx(1.0).epsilon(1e-14));
  CHECK(ri.rel_gap <= 1e-14);

  const GridFunction1D dens = wt::sample_real(
      16.0, 2048, [](double x) { return std::exp(-x * x / 2.0) / std::sqrt(2.0 * std::acos(-1.0)); });
  const RieszFactorization rg = riesz_factorize(dens);
  CHECK(rg.g_l1 == Approx(1.0).epsilon(1e-6));
  CHECK(rg.rel_gap <= 1e-13);

  // sign changes do not disturb the equality: |f2| = |f1| pointwise
  const GridFunction1D osc =
      wt::sample_real(16.0, 2048, [](double x) { return std::sin(x) * std::exp(-std::abs(x)); });
  const RieszFactorization ro = riesz_factorize(osc);
  CHECK(ro.rel_gap <= 1e-13);
  CHECK(ro.product == Approx(ro.g_l1).epsilon(1e-13));
}

TEST_CASE("conjugate of a positive-spectrum function is i times it") {
  GridFunction1D g;
  g.dom = {16.0, 512};
  g.values.assign(512, cplx(0.0));
  for (std::size_t k = 0; k < 512; ++k) {
    const double x = -16.0 + double(k) * (32.0 / 512.0);
    g.values[k] = cplx(std::max(0.0, 1.0 - std::abs(x - 3.0)));
  }
  SpectralPair pair;
  pair.g = g;
  pair.f = forward_transform(g);
  const HilbertConjugate hc = hilbert_conjugate(pair);

  REQUIRE(hc.f_tilde.values.size() == pair.f.values.size());
  for (std::size_t k = 0; k < pair.f.values.size(); ++k) {
    const cplx rotated(-pair.f.values[k].imag(), pair.f.values[k].real());
    CHECK(std::abs(hc.f_tilde.values[k] - rotated) <= 1e-15 * std::abs(rotated) + 1e-300);
  }
  CHECK(hc.punctured_gap == 0.0);
  CHECK(hc.origin_mass == 0.0);  // g(0) = 0 here
}

TEST_CASE("conjugate of an even pair is odd and preserves punctured mass") {
  const GridFunction1D f = wt::sample_real(32.0, 4096, gauss);
  const SpectralPair p = inverse_transform(f);
  const HilbertConjugate hc = hilbert_conjugate(p);
  CHECK(hc.punctured_gap == 0.0);
  CHECK(hc.origin_mass > 0.0);
  CHECK(norm_l1_punctured(hc.g_tilde) == Approx(norm_l1_punctured(p.g)).epsilon(1e-14));

  const std::size_t n = hc.f_tilde.values.size();
  double scale = 0.0;
  for (const auto& v : hc.f_tilde.values) scale = std::max(scale, std::abs(v));
  for (std::size_t k = 1; k < n; ++k) {
    const cplx sum = hc.f_tilde.values[k] + hc.f_tilde.values[n - k];
    CHECK(std::abs(sum) <= 1e-10 * scale);
  }
}

TEST_CASE("conjugation requires reciprocal grids") {
  SpectralPair pair;
  pair.f.dom = {16.0, 512};
  pair.f.values.assign(512, cplx(1.0));
  pair.g.dom = {16.0, 512};  // not the dual of f's grid
  pair.g.values.assign(512, cplx(1.0));
  wt::expect_error(Err::GridMismatch, [&] { hilbert_conjugate(pair); });
}

TEST_CASE("punctured sums drop exactly the origin node") {
  GridFunction1D g;
  g.dom = {8.0, 16};
  g.values.assign(16, cplx(0.0));
  g.values[8] = cplx(1.0);  // the origin node of a 16-point grid on [-8, 8)
  CHECK(norm_l1(g) == Approx(1.0).epsilon(1e-15));
  CHECK(norm_l1_punctured(g) == 0.0);
}

TEST_CASE("odd-part transform: polynomial identities") {
  const std::vector<double> a = ramp(0.005, 4.0, 0.005);
  const std::vector<double> ts = {2.0};

  TTransformResult r = t_transform(a, map_values(a, [](double) { return 1.0; }), ts);
  CHECK(r.values[0] == 0.0);
  CHECK_FALSE(r.singular[0]);

  r = t_transform(a, map_values(a, [](double u) { return u; }), ts);
  CHECK(r.values[0] == Approx(2.0).epsilon(1e-12));

  r = t_transform(a, map_values(a, [](double u) { return u * u; }), ts);
  CHECK(r.values[0] == Approx(8.0).epsilon(1e-12));

  // linearity over a generic pair of inputs
  const auto h1 = map_values(a, [](double u) { return std::sin(u); });
  const auto h2 = map_values(a, [](double u) { return u * u; });
  std::vector<double> combo(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) combo[k] = 3.0 * h1[k] - 0.5 * h2[k];
  const double v1 = t_transform(a, h1, ts).values[0];
  const double v2 = t_transform(a, h2, ts).values[0];
  const double vc = t_transform(a, combo, ts).values[0];
  CHECK(vc == Approx(3.0 * v1 - 0.5 * v2).epsilon(1e-12));
}

TEST_CASE("odd-part transform: argument validation") {
  const std::vector<double> a = ramp(0.01, 10.0, 0.01);
  const std::vector<double> h = map_values(a, [](double u) { return u; });

  std::vector<double> short_h(h.begin(), h.end() - 1);
  wt::expect_error(Err::BadParams, [&] { t_transform(a, short_h, {2.0}); });
  wt::expect_error(Err::BadParams, [&] { t_transform({1.0}, {1.0}, {2.0}); });

  std::vector<double> jumbled = a;
  std::swap(jumbled[3], jumbled[4]);
  wt::expect_error(Err::BadParams, [&] { t_transform(jumbled, h, {2.0}); });

  wt::expect_error(Err::BadParams, [&] { t_transform(a, h, {0.0}); });
  wt::expect_error(Err::BadParams, [&] { t_transform(a, h, {-1.0}); });
  wt::expect_error(Err::DomainTooSmall, [&] { t_transform(a, h, {8.0}); });
}

TEST_CASE("odd-part transform: pole detection needs sub-cell probes") {
  const std::vector<double> a = hybrid_abscissae();
  const std::vector<double> ts = {2.0};

  const auto pole = map_values(a, [](double u) { return 1.0 / (u - 2.0); });
  const TTransformResult rp = t_transform(a, pole, ts);
  REQUIRE(rp.singular.size() == 1);
  CHECK(rp.singular[0]);

  // odd square root through the same point: quotient 2/sqrt(s) integrates to 4
  const auto root = map_values(a, [](double u) {
    const double d = u - 2.0;
    return (d < 0 ? -1.0 : 1.0) * std::sqrt(std::abs(d));
  });
  const TTransformResult rr = t_transform(a, root, ts);
  CHECK_FALSE(rr.singular[0]);
  CHECK(rr.values[0] == Approx(4.0).epsilon(0.02));
}

TEST_CASE("odd-part transform runs against synthesized spectra") {
  // No identity is asserted between this transform and the conjugate pipeline;
  // this only pins that spectral inputs stay finite through it.
  const GridFunction1D f = wt::sample_real(16.0, 1024, gauss);
  std::vector<double> a, h;
  for (std::size_t k = 513; k < 1024; ++k) {
    a.push_back(-16.0 + double(k) * (32.0 / 1024.0));
    h.push_back(f.values[k].real());
  }
  const TTransformResult r = t_transform(a, h, {1.0, 2.0});
  REQUIRE(r.values.size() == 2);
  CHECK(std::isfinite(r.values[0]));
  CHECK(std::isfinite(r.values[1]));
}

TEST_CASE("norm ladder on a gaussian converges to one") {
  OracleInput in;
  in.fn = [](double t) { return cplx(gauss(t)); };
  const Ladder ladder = {{16.0, 1 << 12}, {32.0, 1 << 13}, {64.0, 1 << 14}};
  const NormEstimate est = wiener_norm(in, ladder);
  CHECK(est.verdict == Trend::Converged);
  REQUIRE(est.limit.has_value());
  CHECK(*est.limit == Approx(1.0).epsilon(1e-3));
  REQUIRE(est.rungs.size() == 3);
  for (const auto& r : est.rungs) {
    CHECK(r.usable);
    CHECK(r.raw == Approx(1.0).epsilon(1e-2));
  }
}

TEST_CASE("norm ladders validate their shape") {
  OracleInput in;
  in.fn = [](double t) { return cplx(gauss(t)); };
  wt::expect_error(Err::BadParams,
                   [&] { wiener_norm(in, {{16.0, 1 << 12}, {32.0, 1 << 13}}); });
  wt::expect_error(Err::BadParams, [&] {
    wiener_norm(in, {{16.0, 1 << 12}, {24.0, 1 << 13}, {48.0, 1 << 14}});
  });
  wt::expect_error(Err::BadParams, [&] {
    wiener_norm(in, {{16.0, 1 << 12}, {32.0, 1 << 13}, {64.0, 1 << 13}});
  });
}

TEST_CASE("hard truncation makes rungs unusable") {
  OracleInput in;
  in.fn = [](double) { return cplx(1.0); };
  const Ladder ladder = {{16.0, 1 << 12}, {32.0, 1 << 13}, {64.0, 1 << 14}};
  const NormEstimate est = wiener_norm(in, ladder);
  CHECK(est.verdict == Trend::Inconclusive);
  CHECK(est.note.find("fewer than 3 usable rungs") != std::string::npos);
  for (const auto& r : est.rungs) {
    CHECK_FALSE(r.usable);
    CHECK(has_warning(r.warnings, "hard truncation gate"));
  }
}

TEST_CASE("oscillation near the sampling limit is warned about") {
  OracleInput in;
  in.fn = [](double t) { return cplx(gauss(t)) * std::polar(1.0, 120.0 * t); };
  in.phase_deriv = [](double) { return 120.0; };
  const Ladder ladder = {{16.0, 1 << 12}, {32.0, 1 << 13}, {64.0, 1 << 14}};
  const NormEstimate est = wiener_norm(in, ladder);
  for (const auto& r : est.rungs) {
    CHECK(has_warning(r.warnings, "under eight samples per period"));
  }
  // modulation does not change the norm of the representing function
  REQUIRE(est.limit.has_value());
  CHECK(*est.limit == Approx(1.0).epsilon(1e-2));
}

TEST_CASE("known-infinite truncation mass is reported") {
  OracleInput in;
  in.fn = [](double t) { return cplx(gauss(t)); };
  in.tail_divergent = true;
  const Ladder ladder = {{16.0, 1 << 12}, {32.0, 1 << 13}, {64.0, 1 << 14}};
  const NormEstimate est = wiener_norm(in, ladder);
  CHECK(est.note.find("raw truncations") != std::string::npos);
}

TEST_CASE("modeled tails are added to the raw rung values") {
  OracleInput in;
  in.fn = [](double t) { return cplx(gauss(t)); };
  in.tail_mass = [](double) { return std::optional<double>(0.25); };
  const Ladder ladder = {{16.0, 1 << 12}, {32.0, 1 << 13}, {64.0, 1 << 14}};
  const NormEstimate est = wiener_norm(in, ladder);
  for (const auto& r : est.rungs) {
    REQUIRE(r.tail.has_value());
    CHECK(r.value == Approx(r.raw + 0.25).epsilon(1e-15));
  }
  REQUIRE(est.limit.has_value());
  CHECK(*est.limit == Approx(1.25).epsilon(1e-2));
}

TEST_CASE("two-dimensional ladder on a gaussian product") {
  const NormEstimate est = wiener_norm_2d(
      [](double x, double y) { return cplx(gauss(x) * gauss(y)); },
      {{8.0, 256}, {16.0, 512}, {32.0, 1024}});
  CHECK(est.verdict == Trend::Converged);
  REQUIRE(est.limit.has_value());
  CHECK(*est.limit == Approx(1.0).epsilon(2e-2));
}

}  // TEST_SUITE
