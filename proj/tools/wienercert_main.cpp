#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wienercert/report.hpp"

namespace {

using wn::Err;
using wn::raise;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    raise(Err::BadParams, what + " is not a number: '" + s + "'");
  }
  if (used != s.size()) raise(Err::BadParams, what + " is not a number: '" + s + "'");
  return v;
}

// Scalar "v" or range "lo:hi:step" (inclusive of hi up to rounding slack).
std::vector<double> parse_values(const std::string& s, const std::string& what) {
  const auto parts = split(s, ':');
  if (parts.size() == 1) return {parse_real(parts[0], what)};
  if (parts.size() != 3) raise(Err::BadParams, what + " must be a number or lo:hi:step");
  const double lo = parse_real(parts[0], what);
  const double hi = parse_real(parts[1], what);
  const double step = parse_real(parts[2], what);
  if (step <= 0 || hi < lo) raise(Err::BadParams, what + " range needs lo <= hi and step > 0");
  std::vector<double> vals;
  const double slack = step * 1e-9;
  for (double v = lo; v <= hi + slack; v += step) vals.push_back(std::min(v, hi));
  return vals;
}

wn::Ladder parse_ladder(const std::string& s) {
  wn::Ladder lad;
  for (const std::string& rung : split(s, ',')) {
    const auto parts = split(rung, ':');
    if (parts.size() != 2) raise(Err::BadParams, "ladder rung must be L:N, got '" + rung + "'");
    const double L = parse_real(parts[0], "ladder L");
    const double N = parse_real(parts[1], "ladder N");
    if (L <= 0 || N < 16 || N != std::floor(N)) {
      raise(Err::BadParams, "ladder rung out of range: '" + rung + "'");
    }
    lad.emplace_back(L, static_cast<std::size_t>(N));
  }
  return lad;
}

std::vector<wn::Criterion> parse_criteria(const std::string& s) {
  std::vector<wn::Criterion> out;
  for (const std::string& tok : split(s, ',')) {
    if (tok.empty()) continue;
    const auto c = wn::parse_criterion(tok);
    if (!c) raise(Err::BadParams, "unknown criterion '" + tok + "'");
    out.push_back(*c);
  }
  if (out.empty()) raise(Err::BadParams, "--criteria lists no criteria");
  return out;
}

// "b=a+0.5" / "b=a-1" / "b=a*2" / "b=a"
wn::SweepSpec::Link parse_link(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) raise(Err::BadParams, "link must be lhs=rhs[op const]");
  wn::SweepSpec::Link link;
  link.lhs = s.substr(0, eq);
  std::string rest = s.substr(eq + 1);
  const auto op_pos = rest.find_first_of("+-*", 1);
  if (op_pos == std::string::npos) {
    link.rhs = rest;
    link.op = '+';
    link.constant = 0.0;
  } else {
    link.rhs = rest.substr(0, op_pos);
    link.op = rest[op_pos];
    link.constant = parse_real(rest.substr(op_pos + 1), "link constant");
  }
  if (link.rhs.empty()) raise(Err::BadParams, "link must name a source parameter");
  return link;
}

struct Cli {
  std::string family;
  std::map<std::string, std::string> params;  // raw strings; ranges allowed in sweep
  std::string criteria;
  std::optional<double> delta;
  std::string ladder;
  std::string out;
  std::string format;
  std::string functional;
  std::vector<std::string> links;
};

void add_common(CLI::App* cmd, Cli& cli) {
  cmd->add_option("--family", cli.family, "testbed family name")->required();
  for (const char* key : {"a", "b", "a1", "b1", "gamma", "gap"}) {
    cmd->add_option("--" + std::string(key), cli.params[key],
                    "family parameter " + std::string(key));
  }
  cmd->add_option("--criteria", cli.criteria, "comma list of certificate criteria");
  cmd->add_option("--delta", cli.delta, "exponent for the weighted-sup certificate");
  cmd->add_option("--ladder", cli.ladder, "refinement ladder L:N[,L:N...]");
  cmd->add_option("--out", cli.out, "output path (default stdout)");
  cmd->add_option("--format", cli.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload << "\n";
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) raise(Err::BadParams, "cannot open output path '" + out_path + "'");
  f << payload << "\n";
}

std::string report_csv(const wn::Report& r) {
  std::string csv;
  if (!r.functionals.empty()) {
    csv = "name,value,quad_error,tail_bound,finite_verdict\n";
    char buf[160];
    for (const auto& f : r.functionals) {
      std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,", f.name.c_str(), f.value, f.quad_error);
      csv += buf;
      if (f.tail_bound) {
        std::snprintf(buf, sizeof buf, "%.17g", *f.tail_bound);
        csv += buf;
      }
      csv += std::string(",") + wn::verdict_name(f.finite_verdict) + "\n";
    }
    return csv;
  }
  csv = "half_width,n,raw,tail,value,usable,verdict\n";
  if (!r.oracle) return csv;
  char buf[200];
  for (const auto& rung : r.oracle->rungs) {
    std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g,", rung.half_width, rung.n, rung.raw);
    csv += buf;
    if (rung.tail) {
      std::snprintf(buf, sizeof buf, "%.17g", *rung.tail);
      csv += buf;
    }
    std::snprintf(buf, sizeof buf, ",%.17g,%s,%s\n", rung.value,
                  rung.usable ? "true" : "false", wn::trend_name(r.oracle->verdict));
    csv += buf;
  }
  return csv;
}

int run(int argc, char** argv) {
  CLI::App app{"certify Wiener-algebra membership via sufficient-condition "
               "functionals cross-checked against a spectral norm ladder"};
  app.require_subcommand(1);

  Cli cli;
  CLI::App* certify = app.add_subcommand("certify", "compute certificates and the oracle ladder");
  CLI::App* functional = app.add_subcommand("functional", "compute one functional by name");
  CLI::App* oracle = app.add_subcommand("oracle", "run the spectral norm ladder only");
  CLI::App* sweep = app.add_subcommand("sweep", "certify over a parameter grid, emit CSV");
  add_common(certify, cli);
  add_common(functional, cli);
  add_common(oracle, cli);
  add_common(sweep, cli);
  functional->add_option("name", cli.functional, "functional name")
      ->required()
      ->check(CLI::IsMember(wn::functional_names()));
  sweep->add_option("--link", cli.links, "derived parameter, e.g. b=a+0.5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  wn::RunConfig cfg;
  cfg.family = cli.family;
  if (!cli.criteria.empty()) cfg.criteria = parse_criteria(cli.criteria);
  cfg.delta = cli.delta;
  if (!cli.ladder.empty()) cfg.ladder = parse_ladder(cli.ladder);
  cfg.out_path = cli.out;
  if (!cli.format.empty()) cfg.format = cli.format;

  std::string payload;
  std::string summary;
  if (sweep->parsed()) {
    cfg.command = "certify";
    cfg.format = "csv";
    if (cfg.criteria.empty()) raise(Err::BadParams, "sweep needs --criteria");
    wn::SweepSpec spec;
    for (const auto& [key, raw] : cli.params) {
      if (raw.empty()) continue;
      const auto vals = parse_values(raw, "--" + key);
      if (vals.size() == 1) {
        cfg.params[key] = vals[0];
      } else {
        spec.grid[key] = vals;
      }
    }
    spec.base = cfg;
    for (const auto& l : cli.links) spec.links.push_back(parse_link(l));
    payload = wn::sweep_command_csv(spec);
    const std::size_t rows = payload.empty() ? 0 : split(payload, '\n').size() - 2;
    summary = "sweep " + cfg.family + ": " + std::to_string(rows) + " points";
  } else {
    for (const auto& [key, raw] : cli.params) {
      if (raw.empty()) continue;
      const auto vals = parse_values(raw, "--" + key);
      if (vals.size() != 1) raise(Err::BadParams, "--" + key + " ranges only apply to sweep");
      cfg.params[key] = vals[0];
    }
    wn::Report rep;
    if (certify->parsed()) {
      cfg.command = "certify";
      if (cfg.criteria.empty()) raise(Err::BadParams, "certify needs --criteria");
      if (cfg.format == "csv") {
        // Single-point sweep: same columns, one row.
        wn::SweepSpec spec;
        spec.base = cfg;
        emit(wn::sweep_command_csv(spec), cfg.out_path);
        std::fprintf(stderr, "certify %s: 1 row\n", cfg.family.c_str());
        return 0;
      }
      rep = wn::certify_command(cfg);
    } else if (oracle->parsed()) {
      cfg.command = "oracle";
      rep = wn::oracle_command(cfg);
    } else {
      cfg.command = "functional";
      cfg.functional = cli.functional;
      rep = wn::functional_command(cfg);
    }
    payload = rep.config.format == "csv" ? report_csv(rep) : wn::to_json(rep);
    summary = wn::summary_line(rep);
  }

  emit(payload, cfg.out_path);
  const auto t1 = std::chrono::steady_clock::now();
  const double secs = std::chrono::duration<double>(t1 - t0).count();
  std::fprintf(stderr, "%s\n", summary.c_str());
  std::fprintf(stderr, "elapsed %.3f s\n", secs);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const wn::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return wn::is_numerical(e.code()) ? 3 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
