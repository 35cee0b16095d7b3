#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wienercert/functionals.hpp"
#include "wienercert/grid.hpp"

namespace wn {

enum class Criterion { Thm11a, Thm11b, Beurling, Quasiconvex, ThmC, Thm13_2d };

const char* criterion_token(Criterion c);  // CLI vocabulary: thm11a, thm13-2d, ...
std::optional<Criterion> parse_criterion(const std::string& token);

enum class CertStatus { Satisfied, Violated, Inconclusive };
const char* cert_status_name(CertStatus s);

struct CertificateVerdict {
  Criterion criterion = Criterion::Thm11a;
  CertStatus status = CertStatus::Inconclusive;
  std::vector<FunctionalReport> inputs;
  std::string notes;
};

struct CertifyOptions {
  double delta = 0.5;        // exponent for the weighted-sup certificate
  int bernstein_depth = 10;  // dyadic truncation for the difference-sum certificate
  // Declared tail exponents (|f| ~ t^-tail_alpha, |f'| envelope ~ t^-deriv_beta);
  // estimated from the samples when absent.
  std::optional<double> tail_alpha;
  std::optional<double> deriv_beta;
};

// One verdict per requested criterion, in request order. A certificate is
// satisfied only when every required functional is finite with a known tail;
// divergent functionals make it violated; errors inside a criterion are
// converted to an inconclusive verdict carrying the message. Criteria of the
// wrong dimensionality are a configuration error (BadParams).
std::vector<CertificateVerdict> certify(const GridFunction1D& f,
                                        const std::vector<Criterion>& criteria,
                                        const CertifyOptions& opt = {});

std::vector<CertificateVerdict> certify(const GridFunction2D& f,
                                        const std::vector<Criterion>& criteria,
                                        const CertifyOptions& opt = {});

}  // namespace wn
