#pragma once

#include <map>
#include <optional>
#include <string>

#include "wienercert/grid.hpp"
#include "wienercert/spectral.hpp"

namespace wn {

// A testbed function family instance: evaluators plus everything the harness
// needs to drive certificates and the oracle (declared tail exponents, phase
// model, truncation-mass model, expected classification).
struct Family {
  std::string name;
  std::map<std::string, double> params;  // echoed into reports, sorted keys
  int dims = 1;

  PointFunction1D fn;   // dims == 1
  PointFunction2D fn2;  // dims == 2

  std::string expected;  // member | non-member | boundary | counterexample-regime
  std::optional<double> tail_alpha;   // |f| ~ |t|^-alpha at infinity
  std::optional<double> deriv_beta;   // tail envelope of |f'| ~ |t|^-beta
  std::optional<double> closed_norm;  // known exact Wiener norm

  OracleInput oracle;     // 1D oracle driver
  Ladder default_ladder;  // honest resolution for this family
};

// Families: polya(a), zygmund_odd(gamma), corollary(a, b[, gap]),
// stein_chirp(a1, b1), gaussian, exp_decay, triangle, tensor2d([a]), mixed2d(a).
// Throws BadParams on unknown names, unknown keys, or out-of-range values.
Family make_family(const std::string& name, const std::map<std::string, double>& params);

const std::vector<std::string>& family_names();

// Ladder utilities shared by the harness.
Ladder base_ladder_1d();  // (64, 2^14) doubling twice
Ladder base_ladder_2d();  // (8, 256) doubling twice

}  // namespace wn
