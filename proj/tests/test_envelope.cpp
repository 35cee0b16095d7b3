#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <wienercert/envelope.hpp>

#include "test_support.hpp"

using namespace wn;
using doctest::Approx;

namespace {

// f(x) = by_class[|x| / step] on a symmetric grid, so the raw magnitude-class
// sups are exactly by_class.
GridFunction1D from_classes(const std::vector<double>& by_class) {
  Domain1D dom{static_cast<double>(by_class.size()), 2 * by_class.size()};
  GridFunction1D g{dom, std::vector<cplx>(dom.n), {}, Parity::Even, 0.0};
  for (std::size_t k = 0; k < dom.n; ++k) {
    auto cls = static_cast<std::size_t>(std::lround(std::abs(dom.x(k))));
    g.values[k] = cplx(cls < by_class.size() ? by_class[cls] : 0.0, 0.0);
  }
  return g;
}

std::size_t class_of(const Envelope& e, double t) {
  return static_cast<std::size_t>(std::lround((t - e.abscissae.front()) / e.step()));
}

}  // namespace

TEST_SUITE("envelope") {

TEST_CASE("tail sup of class values 1,3,2 is 3,3,2") {
  GridFunction1D g = from_classes({1.0, 3.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  Envelope e = tail_sup(g);
  REQUIRE(e.kind == EnvelopeKind::TailSup);
  REQUIRE(e.abscissae.front() == 0.0);
  CHECK(e.values[0] == 3.0);
  CHECK(e.values[1] == 3.0);
  CHECK(e.values[2] == 2.0);
  CHECK(e.values[3] == 0.0);
}

TEST_CASE("head sup of class values 5,1,2 is 5,5,5") {
  GridFunction1D g = from_classes({0.0, 5.0, 1.0, 2.0, 0.0, 0.0, 0.0, 0.0});
  Envelope e = head_sup(g);
  REQUIRE(e.kind == EnvelopeKind::HeadSup);
  REQUIRE(e.abscissae.front() == Approx(e.step()));  // origin excluded
  CHECK(e.values[0] == 5.0);
  CHECK(e.values[1] == 5.0);
  CHECK(e.values[2] == 5.0);
  CHECK(e.values.back() == 5.0);
}

TEST_CASE("monotone decay is its own tail envelope") {
  GridFunction1D g = wt::sample_real(8.0, 128, [](double t) { return std::exp(-std::abs(t)); });
  Envelope e = tail_sup(g);
  for (std::size_t m = 0; m < e.values.size(); ++m) {
    CHECK(e.values[m] == Approx(std::exp(-e.abscissae[m])).epsilon(1e-12));
  }
}

TEST_CASE("random fields: brute force agreement, domination, monotonicity") {
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Domain1D dom{8.0, 32};
    GridFunction1D g{dom, std::vector<cplx>(dom.n), {}, Parity::Unknown, 0.0};
    for (auto& v : g.values) v = cplx(dist(rng), dist(rng));

    Envelope e = tail_sup(g);
    for (std::size_t m = 0; m < e.values.size(); ++m) {
      double brute = 0.0;
      for (std::size_t k = 0; k < dom.n; ++k) {
        if (std::abs(dom.x(k)) >= e.abscissae[m] - 1e-12) {
          brute = std::max(brute, std::abs(g.values[k]));
        }
      }
      CHECK(e.values[m] == brute);  // same maxima, bitwise
      if (m > 0) CHECK(e.values[m] <= e.values[m - 1]);
    }
    for (std::size_t k = 0; k < dom.n; ++k) {
      CHECK(std::abs(g.values[k]) <= e.values[class_of(e, std::abs(dom.x(k)))]);
    }

    Envelope h = head_sup(g);
    for (std::size_t m = 0; m < h.values.size(); ++m) {
      double brute = 0.0;
      for (std::size_t k = 0; k < dom.n; ++k) {
        double a = std::abs(dom.x(k));
        if (a > 1e-12 && a <= h.abscissae[m] + 1e-12) {
          brute = std::max(brute, std::abs(g.values[k]));
        }
      }
      CHECK(h.values[m] == brute);
      if (m > 0) CHECK(h.values[m] >= h.values[m - 1]);
    }
  }
}

TEST_CASE("suffix sup is idempotent and dominating") {
  std::vector<double> v = {0.2, 1.0, 0.1, 0.7, 0.7, 0.0, 0.3};
  std::vector<double> s = suffix_sup(v);
  CHECK(s == std::vector<double>{1.0, 1.0, 0.7, 0.7, 0.7, 0.3, 0.3});
  CHECK(suffix_sup(s) == s);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(s[i] >= v[i]);
}

TEST_CASE("step evaluation never understates the sup between nodes") {
  Envelope tail{EnvelopeKind::TailSup, {0.0, 1.0, 2.0}, {3.0, 3.0, 2.0}, {}};
  CHECK(tail.evaluate(0.5) == 3.0);   // smallest abscissa >= t
  CHECK(tail.evaluate(1.0) == 3.0);
  CHECK(tail.evaluate(1.5) == 2.0);
  CHECK(tail.evaluate(9.0) == 2.0);   // constant extension
  CHECK(tail.evaluate(-1.0) == 3.0);

  Envelope head{EnvelopeKind::HeadSup, {1.0, 2.0, 3.0}, {1.0, 4.0, 5.0}, {}};
  CHECK(head.evaluate(2.5) == 4.0);   // largest abscissa <= t
  CHECK(head.evaluate(3.0) == 5.0);
  CHECK(head.evaluate(0.5) == 1.0);
  CHECK(head.evaluate(7.0) == 5.0);
}

TEST_CASE("derivative envelopes require derivative samples") {
  GridFunction1D g = wt::sample_real(8.0, 64, [](double t) { return std::exp(-t * t); });
  wt::expect_error(Err::MissingDerivative, [&] { tail_sup(g, Field::Derivative); });
  wt::expect_error(Err::MissingDerivative, [&] { head_sup(g, Field::Derivative); });
}

TEST_CASE("decay estimation recovers power laws and rejects flat data") {
  Envelope e{EnvelopeKind::TailSup, {}, {}, {}};
  for (int k = 1; k <= 256; ++k) {
    double t = 0.25 * k;
    e.abscissae.push_back(t);
    e.values.push_back(std::pow(t, -2.0));
  }
  auto alpha = estimate_decay(e);
  REQUIRE(alpha.has_value());
  CHECK(*alpha == Approx(2.0).epsilon(1e-6));

  Envelope flat{EnvelopeKind::TailSup, e.abscissae,
                std::vector<double>(e.abscissae.size(), 1.0), {}};
  CHECK_FALSE(estimate_decay(flat).has_value());

  Envelope zero{EnvelopeKind::TailSup, e.abscissae,
                std::vector<double>(e.abscissae.size(), 0.0), {}};
  CHECK_FALSE(estimate_decay(zero).has_value());

  // Log-like decay flattens in log-log toward the edge: no power model.
  Envelope log_like{EnvelopeKind::TailSup, e.abscissae, {}, {}};
  for (double t : e.abscissae) {
    log_like.values.push_back(1.0 / std::log(std::exp(1.0) + t));
  }
  CHECK_FALSE(estimate_decay(log_like).has_value());

  // Exponential decay steepens: the fitted exponent is kept (conservative).
  Envelope expo{EnvelopeKind::TailSup, e.abscissae, {}, {}};
  for (double t : e.abscissae) expo.values.push_back(std::exp(-t));
  auto steep = estimate_decay(expo);
  REQUIRE(steep.has_value());
  CHECK(*steep > 1.0);
}

TEST_CASE("2-d tail sup of a separable decay factors through the corner") {
  PointFunction2D fn;
  fn.f = [](double x, double y) { return cplx(std::exp(-std::abs(x) - std::abs(y)), 0.0); };
  GridFunction2D g = sample2d(fn, {4.0, 32}, {4.0, 32}, false);
  Envelope2D e = tail_sup_2d(g, 0, 0);
  for (std::size_t i = 0; i < e.xs.size(); i += 3) {
    for (std::size_t j = 0; j < e.ys.size(); j += 3) {
      CHECK(e.at(i, j) == Approx(std::exp(-e.xs[i] - e.ys[j])).epsilon(1e-12));
    }
  }
  wt::expect_error(Err::MissingPartial, [&] { tail_sup_2d(g, 1, 1); });
  wt::expect_error(Err::BadParams, [&] { tail_sup_2d(g, 2, 0); });
}

TEST_CASE("2-d tail sup against brute force on a random field") {
  std::mt19937 rng(11u);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Domain1D dx{4.0, 16}, dy{4.0, 16};
  GridFunction2D g{dx, dy, std::vector<cplx>(dx.n * dy.n), {}, {}, {}, 0.0};
  for (auto& v : g.values) v = cplx(dist(rng) - 0.5, dist(rng) - 0.5);

  Envelope2D e = tail_sup_2d(g, 0, 0);
  for (std::size_t i = 0; i < e.xs.size(); ++i) {
    for (std::size_t j = 0; j < e.ys.size(); ++j) {
      double brute = 0.0;
      for (std::size_t a = 0; a < dx.n; ++a) {
        for (std::size_t b = 0; b < dy.n; ++b) {
          if (std::abs(dx.x(a)) >= e.xs[i] - 1e-12 &&
              std::abs(dy.x(b)) >= e.ys[j] - 1e-12) {
            brute = std::max(brute, std::abs(g.at(a, b)));
          }
        }
      }
      CHECK(e.at(i, j) == brute);
      if (i > 0) CHECK(e.at(i, j) <= e.at(i - 1, j));
      if (j > 0) CHECK(e.at(i, j) <= e.at(i, j - 1));
    }
  }
}

}  // TEST_SUITE
