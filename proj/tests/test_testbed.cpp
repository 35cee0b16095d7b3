#include <doctest.h>

#include <cmath>

#include <wienercert/envelope.hpp>
#include <wienercert/testbed.hpp>

#include "test_support.hpp"

using namespace wn;
using doctest::Approx;

namespace {

Family mk(const std::string& name, std::map<std::string, double> params = {}) {
  return make_family(name, params);
}

// Right-hand finite difference of the family evaluator, for kink conventions.
double fd_right(const Family& fam, double t, double h = 1e-7) {
  return (fam.fn.f(t + h).real() - fam.fn.f(t).real()) / h;
}

double central(const Family& fam, double t, double h = 1e-6) {
  return (fam.fn.f(t + h).real() - fam.fn.f(t - h).real()) / (2.0 * h);
}

// Measured decay exponent of |f| (or |f'|) sampled as a monotone tail table.
std::optional<double> measured_decay(const std::function<cplx(double)>& f, double lo,
                                     double hi, std::size_t count) {
  Envelope e;
  e.kind = EnvelopeKind::TailSup;
  const double step = (hi - lo) / double(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = lo + double(k) * step;
    e.abscissae.push_back(t);
    e.values.push_back(std::abs(f(t)));
  }
  return estimate_decay(e);
}

}  // namespace

TEST_SUITE("testbed") {

TEST_CASE("the catalogue lists nine families") {
  const auto& names = family_names();
  CHECK(names.size() == 9);
  for (const auto& n : {"gaussian", "exp_decay", "triangle", "tensor2d", "mixed2d",
                        "polya", "zygmund_odd", "corollary", "stein_chirp"}) {
    bool found = false;
    for (const auto& have : names) found |= have == n;
    CHECK_MESSAGE(found, n);
  }
}

TEST_CASE("parameter validation speaks in exact complaints") {
  wt::expect_error(Err::BadParams, [] { mk("frobnicate"); });
  wt::expect_error(Err::BadParams, [] { mk("gaussian", {{"a", 1.0}}); });
  wt::expect_error(Err::BadParams, [] { mk("polya", {}); });
  wt::expect_error(Err::BadParams, [] { mk("polya", {{"a", 0.0}}); });
  wt::expect_error(Err::BadParams, [] { mk("polya", {{"a", -2.0}}); });
  wt::expect_error(Err::BadParams, [] { mk("zygmund_odd", {{"gamma", -1.0}}); });
  wt::expect_error(Err::BadParams, [] { mk("corollary", {{"a", 1.0}, {"b", 0.0}}); });
  wt::expect_error(Err::BadParams,
                   [] { mk("corollary", {{"a", 1.0}, {"b", 1.0}, {"gap", -1.0}}); });
  wt::expect_error(Err::BadParams, [] { mk("stein_chirp", {{"a1", 0.0}, {"b1", 1.0}}); });
  wt::expect_error(Err::BadParams, [] { mk("tensor2d", {{"a", 0.0}}); });
  wt::expect_error(Err::BadParams, [] { mk("mixed2d", {{"a", -1.0}}); });
  wt::expect_error(Err::BadParams, [] { mk("polya", {{"a", 2.0}, {"junk", 1.0}}); });

  try {
    mk("frobnicate");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("unknown family") != std::string::npos);
  }
  try {
    mk("polya", {});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("missing parameter") != std::string::npos);
  }
  try {
    mk("polya", {{"a", 2.0}, {"junk", 1.0}});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("unknown parameter") != std::string::npos);
  }
}

TEST_CASE("expected classifications follow the exponent arithmetic") {
  CHECK(mk("gaussian").expected == "member");
  CHECK(mk("exp_decay").expected == "member");
  CHECK(mk("triangle").expected == "member");
  CHECK(mk("polya", {{"a", 2.0}}).expected == "member");
  CHECK(mk("zygmund_odd", {{"gamma", 1.5}}).expected == "member");
  CHECK(mk("zygmund_odd", {{"gamma", -0.5}}).expected == "non-member");
  CHECK(mk("corollary", {{"a", 2.0}, {"b", 3.0}}).expected == "member");
  CHECK(mk("corollary", {{"a", 0.3}, {"b", 1.2}}).expected == "counterexample-regime");
  CHECK(mk("corollary", {{"a", 0.5}, {"b", 1.0}}).expected == "boundary");
  CHECK(mk("stein_chirp", {{"a1", 1.0}, {"b1", 0.2}}).expected == "member");
  CHECK(mk("stein_chirp", {{"a1", 2.0}, {"b1", 0.6}}).expected == "member");
  CHECK(mk("stein_chirp", {{"a1", 2.0}, {"b1", 0.4}}).expected == "non-member");
  CHECK(mk("stein_chirp", {{"a1", 2.0}, {"b1", 0.5}}).expected == "boundary");
  CHECK(mk("tensor2d").expected == "member");
  CHECK(mk("mixed2d", {{"a", 1.0}}).expected == "member");
}

TEST_CASE("dimensions and evaluator slots") {
  for (const auto& n : {"gaussian", "exp_decay", "triangle"}) {
    const Family f = mk(n);
    CHECK(f.dims == 1);
    CHECK(bool(f.fn.f));
    CHECK_FALSE(bool(f.fn2.f));
  }
  for (const auto& n : {"tensor2d", "mixed2d"}) {
    const Family f = mk(n, n == std::string("mixed2d")
                               ? std::map<std::string, double>{{"a", 1.0}}
                               : std::map<std::string, double>{});
    CHECK(f.dims == 2);
    CHECK(bool(f.fn2.f));
  }
}

TEST_CASE("derivative evaluators agree with finite differences") {
  for (double t : {0.7, 1.9, -2.3, 5.1}) {
    for (const auto& spec :
         std::vector<std::pair<std::string, std::map<std::string, double>>>{
             {"gaussian", {}},
             {"exp_decay", {}},
             {"polya", {{"a", 2.0}}},
             {"corollary", {{"a", 2.0}, {"b", 3.0}}},
         }) {
      const Family fam = mk(spec.first, spec.second);
      REQUIRE(bool(fam.fn.df));
      const double want = central(fam, t);
      const double got = fam.fn.df(t).real();
      CHECK_MESSAGE(got == Approx(want).epsilon(1e-4), spec.first << " at t=" << t);
    }
  }
}

TEST_CASE("kinked families report the right-hand slope at the origin") {
  CHECK(mk("exp_decay").fn.df(0.0).real() == Approx(-1.0).epsilon(1e-12));
  CHECK(mk("triangle").fn.df(0.0).real() == Approx(-1.0).epsilon(1e-12));
  CHECK(mk("polya", {{"a", 3.0}}).fn.df(0.0).real() == Approx(-3.0).epsilon(1e-12));
  // and the right-hand difference quotient agrees
  CHECK(fd_right(mk("exp_decay"), 0.0) == Approx(-1.0).epsilon(1e-5));
  CHECK(mk("triangle").fn.df(2.0).real() == 0.0);
  CHECK(mk("zygmund_odd", {{"gamma", 1.0}}).fn.df(0.0).real() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("declared tail exponents match measured decay") {
  const Family p = mk("polya", {{"a", 1.5}});
  REQUIRE(p.tail_alpha.has_value());
  CHECK(*p.tail_alpha == 1.5);
  REQUIRE(p.deriv_beta.has_value());
  CHECK(*p.deriv_beta == 2.5);
  auto meas = measured_decay(p.fn.f, 64.0, 512.0, 1024);
  REQUIRE(meas.has_value());
  CHECK(*meas == Approx(1.5).epsilon(0.07));
  auto dmeas = measured_decay(p.fn.df, 64.0, 512.0, 1024);
  REQUIRE(dmeas.has_value());
  CHECK(*dmeas == Approx(2.5).epsilon(0.05));

  const Family st = mk("stein_chirp", {{"a1", 2.0}, {"b1", 0.4}});
  REQUIRE(st.tail_alpha.has_value());
  CHECK(*st.tail_alpha == Approx(0.8).epsilon(1e-12));
  auto smeas = measured_decay(st.fn.f, 64.0, 512.0, 1024);  // |f| ignores the chirp
  REQUIRE(smeas.has_value());
  CHECK(*smeas == Approx(0.8).epsilon(0.07));

  const Family co = mk("corollary", {{"a", 2.0}, {"b", 2.5}});
  REQUIRE(co.deriv_beta.has_value());
  CHECK(*co.deriv_beta == Approx(0.5).epsilon(1e-12));
  REQUIRE(co.tail_alpha.has_value());
  CHECK(*co.tail_alpha == 2.0);
}

TEST_CASE("closed norms and origin gaps are threaded through") {
  REQUIRE(mk("gaussian").closed_norm.has_value());
  CHECK(*mk("gaussian").closed_norm == 1.0);
  REQUIRE(mk("polya", {{"a", 2.0}}).closed_norm.has_value());
  CHECK(*mk("polya", {{"a", 2.0}}).closed_norm == 1.0);
  REQUIRE(mk("tensor2d").closed_norm.has_value());
  CHECK(*mk("tensor2d").closed_norm == 1.0);
  REQUIRE(mk("mixed2d", {{"a", 1.0}}).closed_norm.has_value());
  CHECK_FALSE(mk("stein_chirp", {{"a1", 2.0}, {"b1", 0.4}}).closed_norm.has_value());

  const Family co = mk("corollary", {{"a", 2.0}, {"b", 3.0}, {"gap", 2.0}});
  CHECK(co.fn.origin_gap == 2.0);
  CHECK(co.fn.f(1.5) == cplx(0.0));
  CHECK(co.fn.f(2.5) != cplx(0.0));
  // default gap is 1
  CHECK(mk("corollary", {{"a", 2.0}, {"b", 3.0}}).fn.origin_gap == 1.0);
}

TEST_CASE("parity declarations") {
  CHECK(mk("gaussian").fn.parity == Parity::Even);
  CHECK(mk("exp_decay").fn.parity == Parity::Even);
  CHECK(mk("triangle").fn.parity == Parity::Even);
  CHECK(mk("polya", {{"a", 1.0}}).fn.parity == Parity::Even);
  CHECK(mk("zygmund_odd", {{"gamma", 0.5}}).fn.parity == Parity::Odd);
  const Family z = mk("zygmund_odd", {{"gamma", 0.5}});
  for (double t : {0.25, 0.5, 0.9}) {
    CHECK(z.fn.f(-t).real() == Approx(-z.fn.f(t).real()).epsilon(1e-14));
  }
  CHECK(z.fn.f(1.5) == cplx(0.0));  // supported on (-1, 1)
}

TEST_CASE("oracle models: truncation masses and divergence flags") {
  const Family co = mk("corollary", {{"a", 2.0}, {"b", 3.0}});
  REQUIRE(bool(co.oracle.tail_mass));
  const auto m64 = co.oracle.tail_mass(64.0);
  const auto m128 = co.oracle.tail_mass(128.0);
  REQUIRE(m64.has_value());
  REQUIRE(m128.has_value());
  CHECK(*m64 > 0.0);
  CHECK(*m128 > 0.0);
  CHECK(*m128 < *m64);
  CHECK_FALSE(co.oracle.tail_divergent);
  REQUIRE(bool(co.oracle.phase_deriv));
  CHECK(co.oracle.phase_deriv(100.0) == Approx(3.0 * std::pow(100.0, 2.0)).epsilon(1e-12));

  const Family st = mk("stein_chirp", {{"a1", 2.0}, {"b1", 0.4}});
  CHECK(st.oracle.tail_divergent);
  REQUIRE(bool(st.oracle.phase_deriv));
  CHECK(st.oracle.phase_deriv(10.0) == Approx(2.0 * 10.0).epsilon(1e-12));

  const Family g = mk("gaussian");
  CHECK_FALSE(g.oracle.tail_divergent);
  REQUIRE(bool(g.oracle.fn));
  CHECK(std::abs(g.oracle.fn(1.0) - g.fn.f(1.0)) == 0.0);
}

TEST_CASE("default ladders are valid doubling ladders") {
  const Ladder l1 = base_ladder_1d();
  REQUIRE(l1.size() == 3);
  CHECK(l1[0] == std::pair<double, std::size_t>{64.0, std::size_t(1) << 14});
  CHECK(l1[1] == std::pair<double, std::size_t>{128.0, std::size_t(1) << 15});
  CHECK(l1[2] == std::pair<double, std::size_t>{256.0, std::size_t(1) << 16});

  const Ladder l2 = base_ladder_2d();
  REQUIRE(l2.size() == 3);
  CHECK(l2[0] == std::pair<double, std::size_t>{8.0, std::size_t(256)});
  CHECK(l2[2] == std::pair<double, std::size_t>{32.0, std::size_t(1024)});

  for (const auto& name : family_names()) {
    std::map<std::string, double> params;
    if (name == "polya") params = {{"a", 2.0}};
    if (name == "zygmund_odd") params = {{"gamma", 1.0}};
    if (name == "corollary") params = {{"a", 2.0}, {"b", 3.0}};
    if (name == "stein_chirp") params = {{"a1", 2.0}, {"b1", 0.6}};
    if (name == "mixed2d") params = {{"a", 1.0}};
    const Family fam = mk(name, params);
    REQUIRE(fam.default_ladder.size() >= 3);
    for (std::size_t k = 0; k + 1 < fam.default_ladder.size(); ++k) {
      CHECK(fam.default_ladder[k + 1].first == 2.0 * fam.default_ladder[k].first);
      CHECK(fam.default_ladder[k + 1].second == 2 * fam.default_ladder[k].second);
    }
    for (const auto& rung : fam.default_ladder) {
      CHECK_NOTHROW(validate_domain({rung.first, rung.second}));
    }
  }
}

}  // TEST_SUITE
