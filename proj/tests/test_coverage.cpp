#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "scn/coverage.hpp"

using namespace scn;

namespace {

NetworkConfig table_cfg(double lambda) {
  NetworkConfig cfg = default_scenario();
  cfg.lambda = lambda;
  return cfg;
}

NetworkConfig fading_cfg(double lambda) {
  NetworkConfig cfg = table_cfg(lambda);
  cfg.association = Association::SIRP;
  cfg.gain_nl = GainDistribution::rayleigh();
  cfg.gain_l = GainDistribution::rician(10.0);
  return cfg;
}

// single-branch scenario whose equivalent process is the physical one:
// unit path-loss offset, deterministic gain, every link line-of-sight
NetworkConfig plain_disk_cfg(double lambda, double alpha) {
  NetworkConfig cfg = table_cfg(lambda);
  cfg.pathloss.pieces[0].a_db_l = 0.0;
  cfg.pathloss.pieces[0].alpha_l = alpha;
  cfg.blockage = BlockageModel::step(std::numeric_limits<double>::infinity());
  cfg.gain_nl = GainDistribution::deterministic();
  cfg.gain_l = GainDistribution::deterministic();
  cfg.metric = Metric::SIR;
  return cfg;
}

}  // namespace

TEST_CASE("quadrature spec validation") {
  CHECK_NOTHROW(QuadratureSpec{}.check());
  QuadratureSpec q;
  q.omega_max = 0.0;
  CHECK_THROWS_AS(q.check(), std::invalid_argument);
  q = {};
  q.target_abs_tol = 0.02;  // above the allowed ceiling
  CHECK_THROWS_AS(q.check(), std::invalid_argument);
  q = {};
  q.target_abs_tol = 0.0;
  CHECK_THROWS_AS(q.check(), std::invalid_argument);
  q = {};
  q.omega_points = 8;  // node counts below 16 are rejected
  CHECK_THROWS_AS(q.check(), std::invalid_argument);
  q = {};
  q.v_points = 8;
  CHECK_THROWS_AS(q.check(), std::invalid_argument);
}

TEST_CASE("conditional characteristic function basics") {
  const NetworkConfig cfg = table_cfg(10.0);
  const EquivalentScenario sc = build_scenario(cfg);
  for (Branch s : {Branch::NL, Branch::L}) {
    const double y = 3000.0;
    CHECK(charfunc_inv_sinr(cfg, sc, y, s, 0.0) == std::complex<double>(1.0, 0.0));
    for (double w : {0.3, 2.0, 25.0, 400.0}) {
      const auto cf = charfunc_inv_sinr(cfg, sc, y, s, w);
      CHECK(std::abs(cf) <= 1.0 + 1e-12);
      // conjugate symmetry in omega
      const auto cfm = charfunc_inv_sinr(cfg, sc, y, s, -w);
      CHECK(std::conj(cf).real() == doctest::Approx(cfm.real()).epsilon(1e-10));
      CHECK(std::conj(cf).imag() == doctest::Approx(cfm.imag()).epsilon(1e-10));
    }
  }
}

TEST_CASE("conditional CF matches a direct interference simulation") {
  // with unit offsets, no blockage and deterministic gains the equivalent
  // process is the physical deployment, so the conditional 1/SIR can be
  // simulated from scratch: interferers are a plain Poisson process outside
  // the serving radius
  const double alpha = 4.0, lambda_km2 = 10.0, y = 150.0;
  const NetworkConfig cfg = plain_disk_cfg(lambda_km2, alpha);
  const EquivalentScenario sc = build_scenario(cfg);

  const double lam = cfg.lambda_m2();
  const double R = 6000.0;  // truncation radius; expected truncated mass ~4e-4
  const double mean_n = kPi * lam * (R * R - y * y);
  std::mt19937_64 rng(424242);
  std::poisson_distribution<long> pois(mean_n);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const std::size_t n_samples = 40000;
  for (double w : {0.5, 1.0, 5.0}) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
      const long n = pois(rng);
      double x = 0.0;
      for (long k = 0; k < n; ++k) {
        const double r = std::sqrt(y * y + (R * R - y * y) * uni(rng));
        x += std::pow(y / r, alpha);
      }
      acc += std::exp(std::complex<double>(0.0, w * x));
    }
    acc /= static_cast<double>(n_samples);
    const auto cf = charfunc_inv_sinr(cfg, sc, y, Branch::L, w);
    CHECK(std::abs(cf - acc) < 0.01);
  }
}

TEST_CASE("coverage probability matches an independent simulation oracle") {
  // frozen 1e5-trial simulation estimates (standard error < 0.002)
  struct Point {
    double lambda, p_ref;
  };
  const Point shadow_sinr[] = {{1.0, 0.1781}, {10.0, 0.7695}, {100.0, 0.3657}};
  for (const auto& pt : shadow_sinr) {
    const auto res = coverage_probability(table_cfg(pt.lambda));
    CHECK(res.converged);
    CHECK(std::abs(res.p_c - pt.p_ref) < 0.03);
    CHECK(res.p_c == doctest::Approx(res.p_nl + res.p_l).epsilon(1e-9));
  }
  const Point fading_sinr[] = {{1.0, 0.1783}, {10.0, 0.7520}};
  for (const auto& pt : fading_sinr) {
    const auto res = coverage_probability(fading_cfg(pt.lambda));
    CHECK(res.converged);
    CHECK(std::abs(res.p_c - pt.p_ref) < 0.03);
  }
  NetworkConfig sir = table_cfg(10.0);
  sir.metric = Metric::SIR;
  const auto res_sir = coverage_probability(sir);
  CHECK(std::abs(res_sir.p_c - 0.7959) < 0.03);
}

TEST_CASE("coverage is monotone in the threshold and SIR dominates SINR") {
  const NetworkConfig cfg = table_cfg(10.0);
  const CoverageEvaluator eval(cfg);
  double prev = 1.0;
  for (double t_db : {-10.0, -3.0, 0.0, 5.0, 10.0, 20.0}) {
    const auto res = eval.at_threshold_db(t_db);
    CHECK(res.p_c <= prev + 1e-6);
    prev = res.p_c;
  }
  // at 60 dB coverage saturates at the isolated-serving-BS probability
  // (about exp(-1.96)*1.96 here); frozen 1e5-trial simulation: 0.2635
  CHECK(std::abs(eval.at_threshold_db(60.0).p_c - 0.2635) < 0.015);

  NetworkConfig sir = cfg;
  sir.metric = Metric::SIR;
  const CoverageEvaluator eval_sir(sir);
  for (double t_db : {-3.0, 0.0, 6.0})
    CHECK(eval_sir.at_threshold_db(t_db).p_c >= eval.at_threshold_db(t_db).p_c - 1e-4);
}

TEST_CASE("dense-network limit") {
  CHECK(asymptotic_coverage(4.0, 1.0) == doctest::Approx(2.0 / kPi).epsilon(1e-12));
  CHECK(asymptotic_coverage(2.42, 1.0) == doctest::Approx(0.1997487225525566).epsilon(1e-12));
  CHECK_THROWS_AS(asymptotic_coverage(4.0, 0.5), std::invalid_argument);   // needs T >= 1
  CHECK_THROWS_AS(asymptotic_coverage(1.5, 1.0), std::invalid_argument);   // needs alpha >= 2

  // dense SIR coverage approaches the limit from the LoS exponent, from above
  double prev = 1.0;
  for (double lambda : {250.0, 2500.0, 1e5}) {
    NetworkConfig cfg = table_cfg(lambda);
    cfg.metric = Metric::SIR;
    const auto res = coverage_probability(cfg);
    CHECK(res.p_c > 0.1997487225525566 - 0.02);
    CHECK(res.p_c < prev + 1e-3);
    prev = res.p_c;
    if (lambda == 1e5) {
      CHECK(std::abs(res.p_c - 0.1997487225525566) < 0.02);
      CHECK(res.p_l > 0.95 * res.p_c);  // service is almost all line-of-sight
    }
  }
}

TEST_CASE("multi-slope dense limit uses the innermost piece") {
  NetworkConfig cfg = table_cfg(10.0);
  CHECK(asymptotic_coverage_multislope(cfg, 1.0) == doctest::Approx(0.1997487225525566));

  NetworkConfig two = cfg;
  two.pathloss.pieces.push_back(PathLossPiece{33.0, 4.0, 4.5, 2.8});
  two.pathloss.breakpoints = {300.0};
  CHECK(asymptotic_coverage_multislope(two, 1.0) ==
        doctest::Approx(asymptotic_coverage(2.42, 1.0)).epsilon(1e-12));

  NetworkConfig bad = two;
  bad.pathloss.pieces[1].alpha_l = 2.1;  // decreasing LoS exponent sequence
  CHECK_THROWS_AS(asymptotic_coverage_multislope(bad, 1.0), std::invalid_argument);

  // a dense two-piece network still lands on the first-piece limit
  NetworkConfig dense = two;
  dense.lambda = 1e5;
  dense.metric = Metric::SIR;
  const auto res = coverage_probability(dense);
  CHECK(std::abs(res.p_c - asymptotic_coverage(2.42, 1.0)) < 0.03);
  CHECK(res.piece_l.size() == 2);
  CHECK(res.piece_nl.size() == 2);
  CHECK(res.piece_l[0] + res.piece_l[1] == doctest::Approx(res.p_l).epsilon(1e-6));
}

TEST_CASE("spectral-efficiency upper bound") {
  const NetworkConfig cfg = table_cfg(10.0);
  const QuadratureSpec quad;
  // p_c(u) = 1/(1+u) integrates to exactly lambda/ln2 (per km^2)
  const double exact = 10.0 / std::log(2.0);
  const double got = ase_upper_bound(cfg, quad, [](double u) { return 1.0 / (1.0 + u); });
  CHECK(got == doctest::Approx(exact).epsilon(1e-5));
  // the bound scales linearly with density for a fixed coverage curve
  NetworkConfig twice = table_cfg(20.0);
  CHECK(ase_upper_bound(twice, quad, [](double u) { return 1.0 / (1.0 + u); }) ==
        doctest::Approx(2.0 * got).epsilon(1e-12));

  // with the real coverage curve the bound is positive and finite
  const CoverageEvaluator eval(cfg, quad);
  const double ase = ase_upper_bound(cfg, quad, [&](double u) { return eval.at_threshold_lin(u).p_c; });
  CHECK(ase > 0.0);
  CHECK(std::isfinite(ase));
}
