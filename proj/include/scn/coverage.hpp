#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "scn/config.hpp"
#include "scn/equivalence.hpp"

namespace scn {

// Coverage probability by characteristic-function inversion. Conditioned on
// the serving BS sitting at equivalent distance y in branch s, the reciprocal
// SINR is eta*y^{alpha_s} plus a sum over interferers of y^{alpha_s} t^{-alpha},
// a compound Poisson variable supported on (0, 1] after substituting
// v = y^{alpha_s} t^{-alpha}. Its CDF at 1/T is recovered from the CF and then
// averaged over the serving-distance density.

struct QuadratureSpec {
  double omega_max = 2.0e4;     // hard cap on the CF inversion frequency
  int omega_points = 16;        // Gauss-Legendre nodes per frequency panel
  int y_points = 200;           // serving-distance grid size (per branch)
  double y_quantile_lo = 1e-4;  // strongest-power quantile range spanned by the grid
  double y_quantile_hi = 1.0 - 1e-6;
  int v_points = 240;           // interference grid nodes per branch
  double t_tail = 1e-6;         // relative power floor of the interference grid
  double target_abs_tol = 1e-3;

  void check() const;  // throws std::invalid_argument on a bad spec
};

struct CoverageResult {
  double p_c = 0.0;
  double p_nl = 0.0;               // branch contributions; p_c = p_nl + p_l
  double p_l = 0.0;
  std::vector<double> piece_nl;    // per-piece split (multi-slope models only)
  std::vector<double> piece_l;
  double est_error = 0.0;
  double imag_residual = 0.0;      // conjugate-symmetric assembly keeps this 0
  bool converged = true;
  std::string note;
};

// Conditional characteristic function of 1/SINR given service from `branch`
// at equivalent distance y:
//   exp{ j*omega*eta*y^a + sum_o int [e^{j*omega*y^a*t^-a_o} - 1] lambda_o(t) dt }
// with the exclusion-region lower limits. eta drops out for the SIR metric.
std::complex<double> charfunc_inv_sinr(const NetworkConfig& cfg, const EquivalentScenario& sc,
                                       double y, Branch branch, double omega,
                                       const QuadratureSpec& quad = {});

// Precomputes the serving-distance grids and per-distance interference
// transforms once, then prices any threshold cheaply. CF tables are built
// lazily and reused across thresholds (evaluate large thresholds-in-1/T
// first for best reuse; correctness does not depend on the order).
class CoverageEvaluator {
 public:
  CoverageEvaluator(const NetworkConfig& cfg, const QuadratureSpec& quad = {});
  ~CoverageEvaluator();
  CoverageEvaluator(CoverageEvaluator&&) noexcept;
  CoverageEvaluator& operator=(CoverageEvaluator&&) noexcept;

  CoverageResult at_threshold_lin(double t_lin) const;
  CoverageResult at_threshold_db(double t_db) const;
  const EquivalentScenario& scenario() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

CoverageResult coverage_probability(const NetworkConfig& cfg, const QuadratureSpec& quad = {});

// Dense-network limit of the SIR coverage probability (threshold >= 1):
//   alpha_l * sin(2*pi/alpha_l) / (2*pi*T^{2/alpha_l})
// independent of density and of the gain laws.
double asymptotic_coverage(double alpha_l, double t_lin);

// Multi-slope variant: the limit is set by the first piece's LoS exponent.
// Requires nondecreasing LoS exponents across pieces.
double asymptotic_coverage_multislope(const NetworkConfig& cfg, double t_lin);

// (lambda / ln 2) * integral of p_c(u)/(1+u) du over u in (0, inf), evaluated
// on a log(1+u) axis with the tail cut once its contribution is negligible.
// p_c_fn maps a linear SINR threshold to a coverage probability.
double ase_upper_bound(const NetworkConfig& cfg, const QuadratureSpec& quad,
                       const std::function<double(double)>& p_c_fn);

}  // namespace scn
