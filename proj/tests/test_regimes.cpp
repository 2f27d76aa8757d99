#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "scn/regimes.hpp"

using namespace scn;

namespace {

NetworkConfig table_cfg() { return default_scenario(); }

SolverOptions fast_opts() {
  SolverOptions o;
  o.seed = 2;
  return o;
}

}  // namespace

TEST_CASE("noise-limited boundary") {
  const BoundaryResult res = find_nlr_sdr(table_cfg(), fast_opts());
  CHECK(!res.diag.bracket_failed);
  CHECK(res.lambda > 0.2);
  CHECK(res.lambda < 5.0);
  CHECK(res.diag.residual < 0.05);
  CHECK(res.diag.iterations > 0);
  CHECK(res.diag.bracket_lo <= res.lambda);
  CHECK(res.diag.bracket_hi >= res.lambda);

  // a higher noise floor needs more interference, hence a denser network
  NetworkConfig louder = table_cfg();
  louder.noise_dbm = -75.0;
  const BoundaryResult res2 = find_nlr_sdr(louder, fast_opts());
  CHECK(!res2.diag.bracket_failed);
  CHECK(res2.lambda > 1.2 * res.lambda);
}

TEST_CASE("coverage peak boundary") {
  const PeakResult res = find_sdr_idr(table_cfg(), fast_opts());
  CHECK(!res.diag.boundary_max);
  CHECK(res.lambda > 1.0);
  CHECK(res.lambda <= 50.0);
  CHECK(res.p_c_max > 0.7);
  CHECK(res.p_c_max <= 1.0);
  // it is a genuine local maximum of the coverage curve
  const QuadratureSpec quad;
  NetworkConfig probe = table_cfg();
  probe.lambda = res.lambda / 3.0;
  CHECK(coverage_probability(probe, quad).p_c <= res.p_c_max + 1e-3);
  probe.lambda = res.lambda * 3.0;
  CHECK(coverage_probability(probe, quad).p_c <= res.p_c_max + 1e-3);
}

TEST_CASE("monotone coverage flags a boundary maximum") {
  // with every link line-of-sight the coverage probability keeps improving
  // with density inside the search bracket, so the peak lands on its edge
  NetworkConfig cfg = table_cfg();
  cfg.blockage = BlockageModel::step(std::numeric_limits<double>::infinity());
  SolverOptions o = fast_opts();
  o.bracket_lo = 0.1;
  o.bracket_hi = 20.0;
  const PeakResult res = find_sdr_idr(cfg, o);
  CHECK(res.diag.boundary_max);
  CHECK(res.lambda == doctest::Approx(o.bracket_hi).epsilon(1e-9));
}

TEST_CASE("interference-dominance boundary") {
  // Once line-of-sight interference appears, the interference level rockets
  // through the whole noise-to-well-above-noise range within less than a
  // decade of density, so this boundary sits close above the noise-limited
  // one no matter how large epsilon is.
  const BoundaryResult nlr = find_nlr_sdr(table_cfg(), fast_opts());
  const BoundaryResult r100 = find_idr_ilr(table_cfg(), 100.0, fast_opts());
  CHECK(!r100.diag.bracket_failed);
  CHECK(r100.lambda > nlr.lambda);
  CHECK(r100.lambda < 50.0);
  CHECK(r100.diag.residual < 0.05);

  // a stricter dominance factor pushes the boundary to higher density
  const BoundaryResult r1000 = find_idr_ilr(table_cfg(), 1000.0, fast_opts());
  CHECK(!r1000.diag.bracket_failed);
  CHECK(r1000.lambda > r100.lambda);

  // eps = 1 reduces to the noise-limited boundary
  const BoundaryResult r1 = find_idr_ilr(table_cfg(), 1.0, fast_opts());
  CHECK(r1.lambda == doctest::Approx(nlr.lambda).epsilon(1e-9));

  CHECK_THROWS_AS(find_idr_ilr(table_cfg(), 0.5, fast_opts()), std::invalid_argument);
}

TEST_CASE("bracket failure is reported, not fabricated") {
  // an implausibly low noise floor puts the crossing below the bracket
  NetworkConfig cfg = table_cfg();
  cfg.noise_dbm = -250.0;
  const BoundaryResult res = find_nlr_sdr(cfg, fast_opts());
  CHECK(res.diag.bracket_failed);
  CHECK(std::isnan(res.lambda));
  CHECK(!res.diag.note.empty());
}

TEST_CASE("full report places the boundaries") {
  const RegimeReport rep = regime_report(table_cfg(), 100.0, fast_opts());
  CHECK(rep.lambda_nlr_sdr < rep.lambda_sdr_idr);
  CHECK(rep.lambda_idr_ilr > rep.lambda_nlr_sdr);
  CHECK(rep.epsilon == 100.0);
  CHECK(rep.p_c_max > 0.7);
  const std::string text = render_report(rep);
  CHECK(text.find("NLR") != std::string::npos);
  CHECK(text.find("ILR") != std::string::npos);
  CHECK(text.find("nan") == std::string::npos);
}
