#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wienercert/grid.hpp"
#include "wienercert/trend.hpp"

namespace wn {

// L2 norm of the symmetric difference f(t+h) - f(t-h) (1D) or of the mixed
// four-corner difference (2D), with zero extension beyond the sampled domain.
double l2_difference(const GridFunction1D& f, double h);
double l2_difference(const GridFunction2D& f, double h1, double h2);

struct DyadicSumState {
  int dims = 1;
  int truncation = 0;  // terms cover |s_j| <= truncation
  // (s1, s2, value) in lexicographic s order; s2 = 0 in 1D.
  std::vector<std::array<int, 2>> indices;
  std::vector<double> terms;
  std::vector<std::size_t> under_resolved;  // positions into terms
  std::vector<double> shell_sums;           // shell m = max|s_j|, m = 0..truncation
  double total = 0.0;

  double outermost_shell() const { return shell_sums.back(); }
};

// Weighted dyadic-difference sum: term(s) = 2^{(s1+...+sd)/2} * l2_difference
// at steps h_j = pi * 2^{-s_j}, over the box |s_j| <= P.
DyadicSumState bernstein_sum(const GridFunction1D& f, int P);
DyadicSumState bernstein_sum(const GridFunction2D& f, int P);

// Cheap restriction of an already-computed state to a smaller box.
DyadicSumState truncate_state(const DyadicSumState& s, int P);

struct DyadicDiagnosis {
  Trend trend = Trend::Inconclusive;
  double total = 0.0;                // of the largest-P state
  std::optional<double> tail_bound;  // geometric, when converged
  std::string note;
};

// Judges the outermost shell sums of >= 3 states at strictly growing P.
DyadicDiagnosis convergence_diagnosis(const std::vector<DyadicSumState>& states);

// Helpers for comparing dyadic sums sum_{p=m}^{n} 2^{p a} g(2^p) against their
// bracketing integrals of t^{a-1} g(t).
double dyadic_power_sum(double alpha, int m, int n, const std::function<double(double)>& g);
double in7_factor(double alpha);  // alpha / (2^alpha - 1), bound for increasing g
double in8_factor(double alpha);  // 2^alpha * alpha / (2^alpha - 1), decreasing g

}  // namespace wn
