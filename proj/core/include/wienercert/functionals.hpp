#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wienercert/envelope.hpp"
#include "wienercert/grid.hpp"

namespace wn {

enum class Verdict { Finite, Divergent, Inconclusive };
const char* verdict_name(Verdict v);

// A scalar functional value with everything needed to judge it honestly:
// quadrature error, the truncation mass the grid cannot see (tail_bound,
// nullopt when no decay model is available), and a finiteness verdict that is
// only upgraded to Finite/Divergent on actual evidence.
struct FunctionalReport {
  std::string name;
  double value = 0.0;
  bool divergent = false;  // value kept growing past every refinement
  double quad_error = 0.0;
  std::optional<double> tail_bound;
  Verdict finite_verdict = Verdict::Inconclusive;
  std::vector<double> rung_values;  // truncated values across a domain-doubling ladder
  std::vector<std::string> notes;

  bool tail_known() const { return tail_bound.has_value(); }
};

// Finiteness from truncated values across successive domain doublings:
// Finite when the values have stabilized (all successive relative changes
// <= rel_tol) or the increments decay geometrically (each at most half the
// previous); Divergent when every doubling grows the value by >= 1.5x;
// Inconclusive otherwise (slow growth is indistinguishable from slow
// convergence at any finite truncation).
Verdict ladder_finiteness(const std::vector<double>& values, double rel_tol = 1e-2);

// --- 1-d decay functionals -------------------------------------------------

struct AFunctionals {
  FunctionalReport A0;   // integral of f0(t)/t over [1, inf)
  FunctionalReport A1;   // integral of f1(t)*ln(2/t) over (0, 1]
  FunctionalReport A01;  // integral of sqrt(int_t^inf f0*f1)/t over [1, inf)
};

// f0: tail majorant of |f|; f1: tail majorant of |f'|. Both must be TailSup
// envelopes on the same abscissa grid reaching past t = 1. Tails beyond the
// grid use the envelopes' decay exponents when set, else the measured
// last-decade slope; when neither yields a convergent model the tail_bound is
// left unknown. The ln(2/t) weight is integrated in closed form per cell.
AFunctionals a_functionals(const Envelope& f0, const Envelope& f1);

// sup over t >= 2*pi of t * f0(t)^delta * f_inf(t + 2*pi), reported as the
// (1+delta)-th root. f0 must be TailSup, f_inf HeadSup (running sup of |f'|
// from the origin outward). Preconditions: the function vanishes on a radius
// origin_gap >= 2*pi (PreconditionGap) and f_inf(4*pi) > 0
// (ZeroDerivativeScale — an identically flat function has nothing to weigh).
// A sup still climbing at the domain edge is flagged: Divergent when it grew
// >= 1.5x over the last doubling, Inconclusive otherwise.
FunctionalReport a_delta(const Envelope& f0, const Envelope& f_inf, double delta,
                         double origin_gap);

// Integral over (0, L] of the one-sided running sup of |f'(s)|, s >= t, on the
// positive half-axis, plus a decay-model tail. deriv_decay: known exponent
// beta with |f'| = O(t^-beta), measured from the envelope when absent.
FunctionalReport beurling_vstar(const GridFunction1D& f,
                                std::optional<double> deriv_decay = std::nullopt);

// Stieltjes sum  sum_k t_mid * |f'(t_{k+1}) - f'(t_k)|  over the positive
// half-axis: the total-variation integral of t |df'(t)|. Jumps of f' between
// adjacent nodes contribute t * |jump| exactly.
FunctionalReport quasiconvex_integral(const GridFunction1D& f,
                                      std::optional<double> deriv_decay = std::nullopt);

// --- 2-d functionals ---------------------------------------------------------

// Total variation in the Vitali sense: the integral of |d2 f / dx dy| when the
// mixed partial is stored (primary), with the dyadic packing sup reported in
// the notes; when the partial is absent the packing value stands in (fallback)
// unless allow_fallback is off, in which case MissingPartial is raised.
FunctionalReport vitali_2d(const GridFunction2D& f, bool allow_fallback = true);

// Largest sum of |mixed difference| over axis-aligned dyadic box packings of
// the domain, enumerated on coarse subgrids up to 16x16 boxes per axis.
double vitali_packing(const GridFunction2D& f);

// The nine membership integrals over the four joint majorants (f00 of |f|,
// f01 of |df/dy|, f10 of |df/dx|, f11 of |d2f/dxdy|), all on one abscissa
// grid (EnvelopeGridMismatch otherwise). Reports are returned in the fixed
// order cond1..cond9:
//   1: (0,1]^2   f11 with log weights in both axes
//   2: [1,inf)^2 f00/(xy)
//   3: [1,inf)^2 sqrt(suffix_xy f00*f11)/(xy)
//   4: (0,1]x[1,inf) f10, log weight in x, 1/y
//   5: (0,1]x[1,inf) sqrt(suffix_y f10*f11), log weight in x, 1/y
//   6,7: mirrors of 4,5 with the axes swapped (f01, suffix in x)
//   8: [1,inf)^2 sqrt(suffix_y f00*f01)/(xy)
//   9: [1,inf)^2 sqrt(suffix_x f00*f10)/(xy)
std::array<FunctionalReport, 9> conditions_2d(const Envelope2D& f00,
                                              const Envelope2D& f01,
                                              const Envelope2D& f10,
                                              const Envelope2D& f11);

// --- exponent-pair classification -------------------------------------------

enum class MembershipClass { Member, NotProvable, CounterexampleRegime };
const char* membership_name(MembershipClass c);

struct ClassifyResult {
  MembershipClass cls = MembershipClass::NotProvable;
  // Chirp parameters (a1, b1) witnessing failure in the counterexample regime
  // (a1 = alpha - beta + 1, b1 = alpha/2, valid when a1 != 1).
  std::optional<std::pair<double, double>> witness;
  std::string note;
};

// Classification of decay exponent pairs (|f| = O(t^-alpha), f' = O(t^-beta)):
// alpha + beta > 1 is provably a member, alpha + beta < 1 is the regime with
// explicit counterexamples, the boundary is not provable either way.
// BadExponent when alpha <= 0.
ClassifyResult classify_exponents(double alpha, double beta);

}  // namespace wn
