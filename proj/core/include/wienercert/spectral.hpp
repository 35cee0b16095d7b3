#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wienercert/grid.hpp"
#include "wienercert/trend.hpp"

namespace wn {

// In-place radix-2 transform; sign -1 applies e^{-2pi i jk/N}, +1 its inverse
// kernel (no 1/N normalization).
void fft_pow2(std::vector<cplx>& a, int sign);

// f and its representing function g under f(y) = integral g(x) e^{ixy} dx,
// i.e. g(x) = (1/2pi) integral f(y) e^{-ixy} dy. Grids are reciprocal.
struct SpectralPair {
  GridFunction1D f;
  GridFunction1D g;
  double plancherel_gap = 0.0;  // relative L2 mismatch between the two sides
  double edge_ratio = 0.0;      // max boundary |f| over max |f|
  std::vector<std::string> warnings;
};

struct SpectralPair2D {
  GridFunction2D f;
  GridFunction2D g;
  double plancherel_gap = 0.0;
  double edge_ratio = 0.0;
  std::vector<std::string> warnings;
};

SpectralPair inverse_transform(const GridFunction1D& f);
SpectralPair2D inverse_transform(const GridFunction2D& f);

// Synthesis back to the given side: f(y_k) = step * sum_j w_j g_j e^{ix_j y_k}.
GridFunction1D forward_transform(const GridFunction1D& g);

double norm_l1(const GridFunction1D& g);
double norm_l1(const GridFunction2D& g);

struct OracleInput {
  std::function<cplx(double)> fn;
  // Local oscillation frequency |phase'(t)| at the domain edge, for sampling
  // adequacy gates; empty for non-oscillatory inputs.
  std::function<double(double)> phase_deriv;
  // Model of the representing-side mass lost by truncating to [-L, L];
  // nullopt when no model applies at that L.
  std::function<std::optional<double>(double)> tail_mass;
  bool tail_divergent = false;  // the lost mass is known to be infinite
};

struct RungResult {
  double half_width = 0.0;
  std::size_t n = 0;
  double raw = 0.0;                 // truncated-domain ||g||_1
  std::optional<double> tail;       // modeled mass beyond the rung's domain
  double value = 0.0;               // raw + tail when the model applies
  bool usable = true;
  std::vector<std::string> warnings;
};

struct NormEstimate {
  std::vector<RungResult> rungs;
  Trend verdict = Trend::Inconclusive;
  std::optional<double> limit;  // last usable value when converged
  std::optional<double> rate;   // increment ratio when diverging
  double tol = 1e-2;
  std::string note;
};

using Ladder = std::vector<std::pair<double, std::size_t>>;

NormEstimate wiener_norm(const OracleInput& in, const Ladder& ladder, double tol = 1e-2);
NormEstimate wiener_norm_2d(const std::function<cplx(double, double)>& fn, const Ladder& ladder,
                            double tol = 1e-2);

struct RieszFactorization {
  GridFunction1D f1;  // |g|^{1/2}
  GridFunction1D f2;  // |g|^{1/2} sign g
  double product = 0.0;  // ||f1||_2 * ||f2||_2
  double g_l1 = 0.0;
  double rel_gap = 0.0;
};

RieszFactorization riesz_factorize(const GridFunction1D& g);

struct HilbertConjugate {
  GridFunction1D g_tilde;    // i * sign(x) * g(x), sign(0) = 0
  GridFunction1D f_tilde;    // synthesized conjugate on the given side
  double origin_mass = 0.0;  // |g(0)| * weight * step, excluded from the identity
  double punctured_gap = 0.0;  // | ||g~||_1 - ||g||_1 | over origin-punctured sums
};

HilbertConjugate hilbert_conjugate(const SpectralPair& pair);

// Punctured-origin L1 sums used by the modulus-preservation identity.
double norm_l1_punctured(const GridFunction1D& g);

struct TTransformResult {
  std::vector<double> values;
  std::vector<bool> singular;  // per evaluation point: no cancellation at s -> 0
};

// Th(t) = integral_0^{t/2} [h(t+s) - h(t-s)] / s ds for h sampled on (0, inf).
TTransformResult t_transform(const std::vector<double>& abscissae,
                             const std::vector<double>& h_values,
                             const std::vector<double>& t_points);

}  // namespace wn
