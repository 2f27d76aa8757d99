#pragma once

#include <cstdint>
#include <string>

#include "scn/config.hpp"
#include "scn/coverage.hpp"

namespace scn {

// Locates the density regime boundaries:
//   NLR/SDR  : I_db(lambda) = eta        (typical interference reaches the noise floor)
//   SDR/IDR  : argmax of p_c(lambda)     (coverage peak)
//   IDR/ILR  : I_db(lambda) = eps * eta  (interference dwarfs noise)
// I_db is the dB-domain (geometric) mean of the per-trial aggregate
// interference, Monte Carlo estimated with the serving BS excluded; the
// arithmetic mean is dominated by rare strong LoS interferers and has no
// stable estimate under the singular path-loss model. p_c comes from the
// analytic engine. Searches run on log10(lambda).

struct SolverOptions {
  double bracket_lo = 1e-2;   // BSs/km^2
  double bracket_hi = 1e4;
  double rel_tol = 0.02;      // on |I_db/target - 1|
  double log_tol = 0.005;     // bracket width (log10) at which to stop
  std::size_t trials = 120000;
  std::uint64_t seed = 1;
  int threads = 1;
  QuadratureSpec quad{};      // for the analytic coverage evaluations
};

struct SolverDiagnostics {
  int iterations = 0;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  double residual = 0.0;       // |I_db/target - 1| or coverage curvature proxy
  bool bracket_failed = false;
  bool boundary_max = false;   // maximization ended on a bracket edge
  std::string note;
};

struct BoundaryResult {
  double lambda = 0.0;  // BSs/km^2; NaN when the bracket failed
  SolverDiagnostics diag;
};

struct PeakResult {
  double lambda = 0.0;
  double p_c_max = 0.0;
  SolverDiagnostics diag;
};

struct RegimeReport {
  double lambda_nlr_sdr = 0.0;
  double lambda_sdr_idr = 0.0;
  double lambda_idr_ilr = 0.0;
  double epsilon = 100.0;
  double p_c_max = 0.0;
  SolverDiagnostics diag_nlr_sdr, diag_sdr_idr, diag_idr_ilr;
};

BoundaryResult find_nlr_sdr(const NetworkConfig& cfg, const SolverOptions& opts = {});
PeakResult find_sdr_idr(const NetworkConfig& cfg, const SolverOptions& opts = {});
BoundaryResult find_idr_ilr(const NetworkConfig& cfg, double epsilon, const SolverOptions& opts = {});

RegimeReport regime_report(const NetworkConfig& cfg, double epsilon = 100.0,
                           const SolverOptions& opts = {});

std::string render_report(const RegimeReport& report);

}  // namespace scn
