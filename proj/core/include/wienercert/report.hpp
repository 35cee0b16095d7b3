#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wienercert/certify.hpp"
#include "wienercert/spectral.hpp"
#include "wienercert/testbed.hpp"

namespace wn {

struct RunConfig {
  std::string command = "certify";
  std::string family;
  std::map<std::string, double> params;
  Ladder ladder;  // empty -> family default
  std::vector<Criterion> criteria;
  std::optional<double> delta;
  std::string functional;  // for `functional <name>`
  std::string format = "json";
  std::string out_path;  // empty -> stdout
};

struct Report {
  RunConfig config;
  Family fam;
  std::vector<CertificateVerdict> certificates;
  std::vector<FunctionalReport> functionals;  // `functional` command payload
  std::optional<NormEstimate> oracle;
  std::string cross_check = "not-applicable";
};

// Build the family, sample the finest rung, compute the requested
// certificates, run the norm ladder, and join them with the cross-check rule:
// FALSE_POSITIVE iff some certificate is satisfied while the oracle diverges.
Report certify_command(const RunConfig& cfg);

Report oracle_command(const RunConfig& cfg);

// One functional by name on the finest rung: thm11a (A0, A1, A01), a_delta,
// beurling, quasiconvex, bernstein, vitali, conditions2d.
Report functional_command(const RunConfig& cfg);

const std::vector<std::string>& functional_names();

// Deterministic serialization: fixed field order, floats at 17 significant
// digits, no timing data.
std::string to_json(const Report& r);

// Human one-liner for stderr.
std::string summary_line(const Report& r);

struct SweepSpec {
  RunConfig base;                                  // family, criteria, ladder, delta
  std::map<std::string, std::vector<double>> grid;  // ranged parameters
  // links lhs = rhs op constant, applied after ranged params; op in {+,-,*}.
  struct Link {
    std::string lhs;
    std::string rhs;
    char op = '+';
    double constant = 0.0;
  };
  std::vector<Link> links;
};

// One CSV row per grid point in lexicographic (sorted param name, ascending
// value) order; per-point failures land in the trailing `error` column.
std::string sweep_command_csv(const SweepSpec& spec);

}  // namespace wn
