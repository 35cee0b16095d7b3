#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wienercert/envelope.hpp"
#include "wienercert/report.hpp"

namespace wn {

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(std::optional<double> v) { return v ? num(*v) : "null"; }

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string string_list(const std::vector<std::string>& v, bool quote = true) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += quote ? quoted(v[i]) : v[i];
  }
  out += "]";
  return out;
}

std::string functional_json(const FunctionalReport& r) {
  std::string out = "{";
  out += "\"name\":" + quoted(r.name);
  out += ",\"value\":" + num(r.value);
  out += ",\"quad_error\":" + num(r.quad_error);
  out += ",\"tail_bound\":" + num(r.tail_bound);
  out += ",\"finite_verdict\":" + quoted(verdict_name(r.finite_verdict));
  std::vector<std::string> rungs;
  for (double v : r.rung_values) rungs.push_back(num(v));
  out += ",\"rung_values\":" + string_list(rungs, false);
  out += ",\"notes\":" + string_list(r.notes);
  out += "}";
  return out;
}

std::string certificate_json(const CertificateVerdict& v) {
  std::string out = "{";
  out += "\"criterion\":" + quoted(criterion_token(v.criterion));
  out += ",\"status\":" + quoted(cert_status_name(v.status));
  out += ",\"notes\":" + quoted(v.notes);
  out += ",\"inputs\":[";
  for (std::size_t i = 0; i < v.inputs.size(); ++i) {
    if (i) out += ",";
    out += functional_json(v.inputs[i]);
  }
  out += "]}";
  return out;
}

std::string oracle_json(const NormEstimate& e) {
  std::string out = "{";
  out += "\"verdict\":" + quoted(trend_name(e.verdict));
  out += ",\"limit\":" + num(e.limit);
  out += ",\"rate\":" + num(e.rate);
  out += ",\"tol\":" + num(e.tol);
  out += ",\"note\":" + quoted(e.note);
  out += ",\"rungs\":[";
  for (std::size_t i = 0; i < e.rungs.size(); ++i) {
    const RungResult& r = e.rungs[i];
    if (i) out += ",";
    out += "{\"half_width\":" + num(r.half_width);
    out += ",\"n\":" + std::to_string(r.n);
    out += ",\"raw\":" + num(r.raw);
    out += ",\"tail\":" + num(r.tail);
    out += ",\"value\":" + num(r.value);
    out += std::string(",\"usable\":") + (r.usable ? "true" : "false");
    out += ",\"warnings\":" + string_list(r.warnings);
    out += "}";
  }
  out += "]}";
  return out;
}

Ladder effective_ladder(const RunConfig& cfg, const Family& fam) {
  const Ladder lad = cfg.ladder.empty() ? fam.default_ladder : cfg.ladder;
  if (lad.size() < 3) raise(Err::BadParams, "ladder needs at least 3 rungs");
  for (std::size_t i = 1; i < lad.size(); ++i) {
    if (lad[i].first != 2.0 * lad[i - 1].first || lad[i].second != 2 * lad[i - 1].second) {
      raise(Err::BadParams, "ladder rungs must strictly double");
    }
  }
  return lad;
}

CertifyOptions options_for(const RunConfig& cfg, const Family& fam) {
  CertifyOptions opt;
  opt.delta = cfg.delta.value_or(0.5);
  opt.tail_alpha = fam.tail_alpha;
  opt.deriv_beta = fam.deriv_beta;
  return opt;
}

std::string join_cross_check(const std::vector<CertificateVerdict>& certs,
                             const std::optional<NormEstimate>& oracle) {
  if (!oracle || certs.empty()) return "not-applicable";
  if (oracle->verdict == Trend::Inconclusive) return "not-applicable";
  bool any_satisfied = false;
  for (const auto& c : certs) any_satisfied |= c.status == CertStatus::Satisfied;
  if (any_satisfied && oracle->verdict == Trend::Diverging) return "FALSE_POSITIVE";
  return "consistent";
}

}  // namespace

Report certify_command(const RunConfig& cfg) {
  Report rep;
  rep.config = cfg;
  rep.fam = make_family(cfg.family, cfg.params);
  if (cfg.criteria.empty()) raise(Err::BadParams, "certify needs at least one criterion");
  const Ladder lad = effective_ladder(cfg, rep.fam);
  rep.config.ladder = lad;
  const CertifyOptions opt = options_for(cfg, rep.fam);
  const auto [L, N] = lad.back();
  if (rep.fam.dims == 1) {
    const GridFunction1D f = sample(rep.fam.fn, Domain1D{L, N});
    rep.certificates = certify(f, cfg.criteria, opt);
    rep.oracle = wiener_norm(rep.fam.oracle, lad);
  } else {
    const GridFunction2D f = sample2d(rep.fam.fn2, Domain1D{L, N}, Domain1D{L, N});
    rep.certificates = certify(f, cfg.criteria, opt);
    rep.oracle = wiener_norm_2d(rep.fam.fn2.f, lad);
  }
  rep.cross_check = join_cross_check(rep.certificates, rep.oracle);
  return rep;
}

Report oracle_command(const RunConfig& cfg) {
  Report rep;
  rep.config = cfg;
  rep.fam = make_family(cfg.family, cfg.params);
  const Ladder lad = effective_ladder(cfg, rep.fam);
  rep.config.ladder = lad;
  rep.oracle = rep.fam.dims == 1 ? wiener_norm(rep.fam.oracle, lad)
                                 : wiener_norm_2d(rep.fam.fn2.f, lad);
  return rep;
}

const std::vector<std::string>& functional_names() {
  static const std::vector<std::string> names = {
      "thm11a", "a_delta", "beurling", "quasiconvex", "bernstein", "vitali", "conditions2d"};
  return names;
}

Report functional_command(const RunConfig& cfg) {
  Report rep;
  rep.config = cfg;
  rep.fam = make_family(cfg.family, cfg.params);
  const Ladder lad = effective_ladder(cfg, rep.fam);
  rep.config.ladder = lad;
  const CertifyOptions opt = options_for(cfg, rep.fam);
  const auto [L, N] = lad.back();
  const std::string& which = cfg.functional;

  const bool needs_2d = which == "vitali" || which == "conditions2d";
  if (needs_2d != (rep.fam.dims == 2)) {
    raise(Err::BadParams, "functional '" + which + "' does not apply to a " +
                              std::to_string(rep.fam.dims) + "-dimensional family");
  }

  if (rep.fam.dims == 1) {
    const GridFunction1D f = sample(rep.fam.fn, Domain1D{L, N});
    if (which == "thm11a") {
      Envelope f0 = tail_sup(f, Field::Value);
      Envelope f1 = tail_sup(f, Field::Derivative);
      if (opt.tail_alpha) f0.decay = opt.tail_alpha;
      if (opt.deriv_beta) f1.decay = opt.deriv_beta;
      const AFunctionals a = a_functionals(f0, f1);
      rep.functionals = {a.A0, a.A1, a.A01};
    } else if (which == "a_delta") {
      Envelope f0 = tail_sup(f, Field::Value);
      if (opt.tail_alpha) f0.decay = opt.tail_alpha;
      rep.functionals = {a_delta(f0, head_sup(f, Field::Derivative), opt.delta, f.origin_gap)};
    } else if (which == "beurling") {
      rep.functionals = {beurling_vstar(f, opt.deriv_beta)};
    } else if (which == "quasiconvex") {
      rep.functionals = {quasiconvex_integral(f, opt.deriv_beta)};
    } else if (which == "bernstein") {
      const auto certs = certify(f, {Criterion::ThmC}, opt);
      rep.functionals = certs.front().inputs;
    } else {
      raise(Err::BadParams, "unknown functional '" + which + "'");
    }
  } else {
    const GridFunction2D f = sample2d(rep.fam.fn2, Domain1D{L, N}, Domain1D{L, N});
    if (which == "vitali") {
      rep.functionals = {vitali_2d(f)};
    } else if (which == "conditions2d") {
      const auto certs = certify(f, {Criterion::Thm13_2d}, opt);
      rep.functionals = certs.front().inputs;
    } else {
      raise(Err::BadParams, "unknown functional '" + which + "'");
    }
  }
  return rep;
}

std::string to_json(const Report& r) {
  std::string out = "{";
  out += "\"schema\":1";
  out += ",\"command\":" + quoted(r.config.command);

  out += ",\"config\":{";
  out += "\"family\":" + quoted(r.config.family);
  out += ",\"params\":{";
  bool first = true;
  for (const auto& [k, v] : r.config.params) {
    if (!first) out += ",";
    first = false;
    out += quoted(k) + ":" + num(v);
  }
  out += "},\"ladder\":[";
  for (std::size_t i = 0; i < r.config.ladder.size(); ++i) {
    if (i) out += ",";
    out += "[" + num(r.config.ladder[i].first) + "," +
           std::to_string(r.config.ladder[i].second) + "]";
  }
  out += "],\"criteria\":[";
  for (std::size_t i = 0; i < r.config.criteria.size(); ++i) {
    if (i) out += ",";
    out += quoted(criterion_token(r.config.criteria[i]));
  }
  out += "]";
  out += ",\"delta\":" + num(r.config.delta);
  if (!r.config.functional.empty()) out += ",\"functional\":" + quoted(r.config.functional);
  out += ",\"format\":" + quoted(r.config.format);
  out += "}";

  out += ",\"family\":{";
  out += "\"dims\":" + std::to_string(r.fam.dims);
  out += ",\"expected\":" + quoted(r.fam.expected);
  out += ",\"tail_alpha\":" + num(r.fam.tail_alpha);
  out += ",\"deriv_beta\":" + num(r.fam.deriv_beta);
  out += ",\"closed_norm\":" + num(r.fam.closed_norm);
  out += "}";

  if (r.config.command == "certify") {
    out += ",\"certificates\":[";
    for (std::size_t i = 0; i < r.certificates.size(); ++i) {
      if (i) out += ",";
      out += certificate_json(r.certificates[i]);
    }
    out += "]";
  }
  if (r.config.command == "functional") {
    out += ",\"functionals\":[";
    for (std::size_t i = 0; i < r.functionals.size(); ++i) {
      if (i) out += ",";
      out += functional_json(r.functionals[i]);
    }
    out += "]";
  }
  if (r.oracle) out += ",\"oracle\":" + oracle_json(*r.oracle);
  if (r.config.command == "certify") out += ",\"cross_check\":" + quoted(r.cross_check);
  out += "}";
  return out;
}

std::string summary_line(const Report& r) {
  std::string s = r.config.family;
  for (const auto& [k, v] : r.config.params) s += " " + k + "=" + num(v);
  s += ": ";
  for (const auto& c : r.certificates) {
    s += std::string(criterion_token(c.criterion)) + "=" + cert_status_name(c.status) + " ";
  }
  if (!r.functionals.empty()) {
    s += r.config.functional + "=";
    for (std::size_t i = 0; i < r.functionals.size(); ++i) {
      if (i) s += "/";
      s += num(r.functionals[i].value);
    }
    s += " ";
  }
  if (r.oracle) {
    s += "oracle=" + std::string(trend_name(r.oracle->verdict));
    if (r.oracle->limit) s += "(" + num(*r.oracle->limit) + ")";
    s += " ";
  }
  if (r.config.command == "certify") s += "cross_check=" + r.cross_check;
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::vector<std::string> functional_columns(const std::vector<Criterion>& criteria) {
  std::vector<std::string> cols;
  for (Criterion c : criteria) {
    switch (c) {
      case Criterion::Thm11a: cols.insert(cols.end(), {"A0", "A1", "A01"}); break;
      case Criterion::Thm11b: cols.push_back("A_delta"); break;
      case Criterion::Beurling: cols.push_back("V_star"); break;
      case Criterion::Quasiconvex: cols.push_back("quasiconvex"); break;
      case Criterion::ThmC: cols.push_back("bernstein_total"); break;
      case Criterion::Thm13_2d:
        for (int k = 1; k <= 9; ++k) cols.push_back("cond" + std::to_string(k));
        break;
    }
  }
  return cols;
}

}  // namespace

std::string sweep_command_csv(const SweepSpec& spec) {
  // Assemble the point list in lexicographic (sorted name, ascending value)
  // order; the grid map is already name-sorted.
  std::vector<std::string> ranged;
  std::size_t points = 1;
  for (const auto& [k, vals] : spec.grid) {
    if (vals.empty()) {
      points = 0;
      continue;
    }
    ranged.push_back(k);
    points *= vals.size();
  }
  if (points > 10000) raise(Err::BadParams, "sweep exceeds 10000 points");

  std::vector<std::string> param_names;
  for (const auto& [k, v] : spec.base.params) {
    (void)v;
    param_names.push_back(k);
  }
  for (const auto& k : ranged) {
    if (std::find(param_names.begin(), param_names.end(), k) == param_names.end()) {
      param_names.push_back(k);
    }
  }
  for (const auto& l : spec.links) {
    if (std::find(param_names.begin(), param_names.end(), l.lhs) == param_names.end()) {
      param_names.push_back(l.lhs);
    }
  }
  std::sort(param_names.begin(), param_names.end());

  std::vector<std::string> header = param_names;
  header.insert(header.end(), {"alpha", "beta", "alpha_plus_beta"});
  const auto fcols = functional_columns(spec.base.criteria);
  header.insert(header.end(), fcols.begin(), fcols.end());
  for (Criterion c : spec.base.criteria) {
    header.push_back(std::string(criterion_token(c)) + "_status");
  }
  header.insert(header.end(), {"oracle_verdict", "oracle_last_value", "error"});

  std::string csv;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) csv += ",";
    csv += csv_escape(header[i]);
  }
  csv += "\n";

  // Odometer over the ranged parameters.
  std::vector<std::size_t> pos(ranged.size(), 0);
  bool done = points == 0;
  while (!done) {
    std::map<std::string, double> params = spec.base.params;
    for (std::size_t i = 0; i < ranged.size(); ++i) {
      params[ranged[i]] = spec.grid.at(ranged[i])[pos[i]];
    }
    for (const auto& l : spec.links) {
      const auto it = params.find(l.rhs);
      if (it == params.end()) raise(Err::BadParams, "link references unknown parameter");
      double v = it->second;
      switch (l.op) {
        case '+': v += l.constant; break;
        case '-': v -= l.constant; break;
        case '*': v *= l.constant; break;
        default: raise(Err::BadParams, "link operator must be +, - or *");
      }
      params[l.lhs] = v;
    }

    std::vector<std::string> row(header.size());
    for (std::size_t i = 0; i < param_names.size(); ++i) {
      const auto it = params.find(param_names[i]);
      row[i] = it == params.end() ? "" : num(it->second);
    }
    try {
      RunConfig cfg = spec.base;
      cfg.command = "certify";
      cfg.params = params;
      const Report rep = certify_command(cfg);
      std::size_t col = param_names.size();
      row[col++] = rep.fam.tail_alpha ? num(*rep.fam.tail_alpha) : "";
      row[col++] = rep.fam.deriv_beta ? num(*rep.fam.deriv_beta) : "";
      row[col++] = rep.fam.tail_alpha && rep.fam.deriv_beta
                       ? num(*rep.fam.tail_alpha + *rep.fam.deriv_beta)
                       : "";
      // Functional values in the declared column order.
      std::map<std::string, double> by_name;
      for (const auto& c : rep.certificates) {
        for (const auto& f : c.inputs) by_name.emplace(f.name, f.value);
      }
      for (const auto& name : fcols) {
        const auto it = by_name.find(name);
        row[col++] = it == by_name.end() ? "" : num(it->second);
      }
      for (const auto& c : rep.certificates) {
        row[col++] = cert_status_name(c.status);
      }
      row[col++] = rep.oracle ? trend_name(rep.oracle->verdict) : "";
      row[col++] = rep.oracle && !rep.oracle->rungs.empty()
                       ? num(rep.oracle->rungs.back().value)
                       : "";
      row[col] = "";
    } catch (const Error& e) {
      row.back() = e.what();
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) csv += ",";
      csv += csv_escape(row[i]);
    }
    csv += "\n";

    // advance odometer: last name varies fastest
    done = true;
    for (std::size_t i = ranged.size(); i-- > 0;) {
      if (++pos[i] < spec.grid.at(ranged[i]).size()) {
        done = false;
        break;
      }
      pos[i] = 0;
    }
    if (ranged.empty()) done = true;
  }
  return csv;
}

}  // namespace wn
