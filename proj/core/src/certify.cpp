#include <cmath>

#include "wienercert/certify.hpp"
#include "wienercert/dyadic.hpp"
#include "wienercert/envelope.hpp"

namespace wn {

const char* criterion_token(Criterion c) {
  switch (c) {
    case Criterion::Thm11a: return "thm11a";
    case Criterion::Thm11b: return "thm11b";
    case Criterion::Beurling: return "beurling";
    case Criterion::Quasiconvex: return "quasiconvex";
    case Criterion::ThmC: return "thmC";
    default: return "thm13-2d";
  }
}

std::optional<Criterion> parse_criterion(const std::string& token) {
  if (token == "thm11a") return Criterion::Thm11a;
  if (token == "thm11b") return Criterion::Thm11b;
  if (token == "beurling") return Criterion::Beurling;
  if (token == "quasiconvex") return Criterion::Quasiconvex;
  if (token == "thmC") return Criterion::ThmC;
  if (token == "thm13-2d") return Criterion::Thm13_2d;
  return std::nullopt;
}

const char* cert_status_name(CertStatus s) {
  switch (s) {
    case CertStatus::Satisfied: return "satisfied";
    case CertStatus::Violated: return "violated";
    default: return "inconclusive";
  }
}

namespace {

constexpr double kPi = 3.14159265358979323846;

CertStatus status_from(const std::vector<FunctionalReport>& reps) {
  for (const auto& r : reps) {
    if (r.finite_verdict == Verdict::Divergent) return CertStatus::Violated;
  }
  for (const auto& r : reps) {
    if (r.finite_verdict != Verdict::Finite || !r.tail_bound.has_value()) {
      return CertStatus::Inconclusive;
    }
  }
  return CertStatus::Satisfied;
}

Verdict verdict_of(Trend t) {
  switch (t) {
    case Trend::Converged: return Verdict::Finite;
    case Trend::Diverging: return Verdict::Divergent;
    default: return Verdict::Inconclusive;
  }
}

CertificateVerdict error_verdict(Criterion c, const Error& e) {
  CertificateVerdict v;
  v.criterion = c;
  v.status = CertStatus::Inconclusive;
  v.notes = std::string(err_name(e.code())) + ": " + e.what();
  return v;
}

// Dyadic-sum certificate shared by both dimensionalities. The depth is capped
// so the finest difference step stays at or above twice the grid step; below
// the floor required for a diagnosis the verdict stays inconclusive.
template <typename G>
CertificateVerdict bernstein_certificate(const G& f, double min_step, int depth) {
  CertificateVerdict v;
  v.criterion = Criterion::ThmC;
  if (depth < 7) raise(Err::BadParams, "dyadic depth must be at least 7");
  const int resolvable = static_cast<int>(std::floor(std::log2(kPi / (2.0 * min_step))));
  int P = depth;
  if (resolvable < depth) {
    P = resolvable;
    v.notes = "depth capped at " + std::to_string(P) + " by grid resolution";
    if (P < 7) {
      v.status = CertStatus::Inconclusive;
      v.notes += "; grid too coarse for a three-state diagnosis";
      return v;
    }
  }
  const DyadicSumState full = bernstein_sum(f, P);
  std::vector<DyadicSumState> states;
  for (int p = P - 3; p < P; ++p) states.push_back(truncate_state(full, p));
  states.push_back(full);
  const DyadicDiagnosis diag = convergence_diagnosis(states);

  FunctionalReport rep;
  rep.name = "bernstein_total";
  rep.value = diag.total;
  rep.tail_bound = diag.tail_bound;
  rep.finite_verdict = verdict_of(diag.trend);
  for (const auto& st : states) rep.rung_values.push_back(st.outermost_shell());
  rep.notes.push_back(diag.note);
  if (!full.under_resolved.empty()) {
    rep.notes.push_back(std::to_string(full.under_resolved.size()) +
                        " terms under-resolved");
  }
  v.inputs.push_back(std::move(rep));
  switch (diag.trend) {
    case Trend::Converged: v.status = CertStatus::Satisfied; break;
    case Trend::Diverging: v.status = CertStatus::Violated; break;
    default: v.status = CertStatus::Inconclusive; break;
  }
  return v;
}

}  // namespace

std::vector<CertificateVerdict> certify(const GridFunction1D& f,
                                        const std::vector<Criterion>& criteria,
                                        const CertifyOptions& opt) {
  if (criteria.empty()) raise(Err::BadParams, "no criteria requested");
  std::vector<CertificateVerdict> out;
  for (Criterion c : criteria) {
    if (c == Criterion::Thm13_2d) {
      raise(Err::BadParams, "thm13-2d applies to two-dimensional inputs only");
    }
    CertificateVerdict v;
    v.criterion = c;
    try {
      switch (c) {
        case Criterion::Thm11a: {
          Envelope f0 = tail_sup(f, Field::Value);
          Envelope f1 = tail_sup(f, Field::Derivative);
          if (opt.tail_alpha) f0.decay = opt.tail_alpha;
          if (opt.deriv_beta) f1.decay = opt.deriv_beta;
          const AFunctionals a = a_functionals(f0, f1);
          v.inputs = {a.A0, a.A1, a.A01};
          v.status = status_from(v.inputs);
          break;
        }
        case Criterion::Thm11b: {
          Envelope f0 = tail_sup(f, Field::Value);
          if (opt.tail_alpha) f0.decay = opt.tail_alpha;
          const Envelope finf = head_sup(f, Field::Derivative);
          try {
            FunctionalReport r = a_delta(f0, finf, opt.delta, f.origin_gap);
            v.inputs.push_back(std::move(r));
            v.status = status_from(v.inputs);
            if (v.status == CertStatus::Violated) {
              v.notes = "weighted sup still rising at the domain edge";
            }
          } catch (const Error& e) {
            if (e.code() == Err::ZeroDerivativeScale) {
              v.status = CertStatus::Satisfied;
              v.notes = std::string("trivially satisfied: ") + e.what();
            } else if (e.code() == Err::PreconditionGap) {
              v.status = CertStatus::Inconclusive;
              v.notes = std::string("hypothesis inapplicable: ") + e.what();
            } else {
              throw;
            }
          }
          break;
        }
        case Criterion::Beurling: {
          v.inputs.push_back(beurling_vstar(f, opt.deriv_beta));
          v.status = status_from(v.inputs);
          break;
        }
        case Criterion::Quasiconvex: {
          v.inputs.push_back(quasiconvex_integral(f, opt.deriv_beta));
          v.status = status_from(v.inputs);
          break;
        }
        case Criterion::ThmC: {
          v = bernstein_certificate(f, f.dom.step(), opt.bernstein_depth);
          break;
        }
        default: break;
      }
    } catch (const Error& e) {
      if (e.code() == Err::BadParams) throw;  // configuration, not data
      v = error_verdict(c, e);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<CertificateVerdict> certify(const GridFunction2D& f,
                                        const std::vector<Criterion>& criteria,
                                        const CertifyOptions& opt) {
  if (criteria.empty()) raise(Err::BadParams, "no criteria requested");
  std::vector<CertificateVerdict> out;
  for (Criterion c : criteria) {
    if (c != Criterion::Thm13_2d && c != Criterion::ThmC) {
      raise(Err::BadParams, "criterion applies to one-dimensional inputs only");
    }
    CertificateVerdict v;
    v.criterion = c;
    try {
      if (c == Criterion::ThmC) {
        v = bernstein_certificate(f, std::min(f.dx.step(), f.dy.step()),
                                  opt.bernstein_depth);
      } else {
        Envelope2D f00 = tail_sup_2d(f, 0, 0);
        Envelope2D f01 = tail_sup_2d(f, 0, 1);
        Envelope2D f10 = tail_sup_2d(f, 1, 0);
        Envelope2D f11 = tail_sup_2d(f, 1, 1);
        if (opt.tail_alpha) {
          const double a = *opt.tail_alpha;
          f00.decay_x = a;
          f00.decay_y = a;
          f01.decay_x = a;
          f01.decay_y = a + 1.0;
          f10.decay_x = a + 1.0;
          f10.decay_y = a;
          f11.decay_x = a + 1.0;
          f11.decay_y = a + 1.0;
        }
        const auto reps = conditions_2d(f00, f01, f10, f11);
        v.inputs.assign(reps.begin(), reps.end());
        v.status = status_from(v.inputs);
      }
    } catch (const Error& e) {
      if (e.code() == Err::BadParams) throw;
      v = error_verdict(c, e);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace wn
