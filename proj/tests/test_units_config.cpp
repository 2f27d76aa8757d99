#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "scn/config.hpp"
#include "scn/units.hpp"

using namespace scn;

TEST_CASE("dB and dBm conversions") {
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(linear_to_db(db_to_linear(7.3)) == doctest::Approx(7.3).epsilon(1e-12));
  // thermal noise floor of the baseline scenario
  CHECK(dbm_to_watts(-95.0) == doctest::Approx(3.1622776601683794e-13).epsilon(1e-15));
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(watts_to_dbm(dbm_to_watts(-37.5)) == doctest::Approx(-37.5).epsilon(1e-12));
  CHECK(kBetaDb == doctest::Approx(-std::log(10.0) / 10.0).epsilon(1e-16));
  CHECK_THROWS_AS(dbm_to_watts(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  CHECK_THROWS_AS(linear_to_db(-1.0), std::invalid_argument);
  CHECK(branch_name(Branch::NL) != branch_name(Branch::L));
  CHECK(other(Branch::NL) == Branch::L);
  CHECK(other(Branch::L) == Branch::NL);
}

TEST_CASE("blockage probabilities and primitive") {
  const auto step = BlockageModel::step(250.0);
  CHECK(p_los(step, 100.0) == 1.0);
  CHECK(p_los(step, 250.0) == 1.0);
  CHECK(p_los(step, 250.0001) == 0.0);
  const auto ne = BlockageModel::neg_exp(1.0 / 141.0);
  CHECK(p_los(ne, 0.0) == 1.0);
  CHECK(p_los(ne, 141.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  for (double r : {10.0, 200.0, 800.0}) {
    CHECK(p_los(step, r) + p_nlos(step, r) == 1.0);  // complement is exact
    CHECK(p_los(ne, r) + p_nlos(ne, r) == 1.0);
  }

  // primitive is the antiderivative of p_los(r)*r
  for (const auto& model : {step, ne}) {
    for (double r : {50.0, 249.0, 251.0, 1000.0}) {
      const double h = 1e-4 * r;
      const double num = (p_los_primitive(model, r + h) - p_los_primitive(model, r - h)) / (2 * h);
      CHECK(num == doctest::Approx(p_los(model, r) * r).epsilon(1e-5));
    }
  }
  CHECK(p_los_primitive(step, 100.0) == doctest::Approx(0.5 * 100.0 * 100.0));
  CHECK(p_los_primitive(step, 400.0) == doctest::Approx(0.5 * 250.0 * 250.0));
  CHECK(p_los_primitive(ne, 0.0) == 0.0);
}

TEST_CASE("path loss pieces and derived constants") {
  NetworkConfig cfg = default_scenario();
  CHECK(validate(cfg).empty());
  CHECK(cfg.pathloss.single_slope());
  // transmit power 30 dBm = 1 W; LoS offset 2.7 dB
  CHECK(cfg.pt_w() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cfg.b_lin(0, Branch::L) == doctest::Approx(0.5370317963702527).epsilon(1e-14));
  CHECK(cfg.b_lin(0, Branch::NL) == doctest::Approx(std::pow(10.0, -3.08)).epsilon(1e-14));
  CHECK(cfg.alpha(0, Branch::NL) == 4.28);
  CHECK(cfg.alpha(0, Branch::L) == 2.42);
  CHECK(cfg.lambda_m2() == doctest::Approx(1e-5).epsilon(1e-15));

  PathLossModel pl;
  pl.pieces = {PathLossPiece{}, PathLossPiece{}, PathLossPiece{}};
  pl.breakpoints = {100.0, 500.0};
  CHECK(pl.piece_index(50.0) == 0);
  CHECK(pl.piece_index(100.0) == 0);
  CHECK(pl.piece_index(100.5) == 1);
  CHECK(pl.piece_index(1e6) == 2);
  CHECK(pl.lower_edge(0) == 0.0);
  CHECK(pl.upper_edge(1) == 500.0);
  CHECK(std::isinf(pl.upper_edge(2)));
}

TEST_CASE("validate flags broken configs") {
  NetworkConfig cfg = default_scenario();
  cfg.lambda = -2.0;
  CHECK(!validate(cfg).empty());

  cfg = default_scenario();
  cfg.pathloss.breakpoints = {100.0};  // count mismatch with a single piece
  CHECK(!validate(cfg).empty());

  cfg = default_scenario();
  cfg.association = Association::SIRP;  // lognormal gains are shadowing
  CHECK(!validate(cfg).empty());

  cfg = default_scenario();
  cfg.gain_nl = GainDistribution::rayleigh();
  CHECK(!validate(cfg).empty());  // SARP with a fading gain

  cfg = default_scenario();
  cfg.gain_nl = GainDistribution::rayleigh();
  cfg.gain_l = GainDistribution::rician(10.0);
  cfg.association = Association::SIRP;
  CHECK(validate(cfg).empty());

  cfg = default_scenario();
  cfg.pathloss.pieces[0].alpha_l = -1.0;
  CHECK(!validate(cfg).empty());
}

TEST_CASE("config file parsing") {
  const std::string text = R"(
# two-piece scenario
[network]
lambda = 25
pt_dbm = 30
threshold_db = 3
metric = sir
association = sarp

[pathloss.piece.1]
a_db_nl = 30.8
a_db_l = 2.7
alpha_nl = 4.28
alpha_l = 2.42
breakpoint = 300

[pathloss.piece.2]
a_db_nl = 32.0
a_db_l = 5.0
alpha_nl = 4.5
alpha_l = 2.8

[blockage]
type = negexp
kappa = 0.007

[channel.nl]
type = lognormal
sigma_db = 4

[channel.l]
type = lognormal
sigma_db = 3
)";
  const NetworkConfig cfg = parse_config(text);
  CHECK(cfg.lambda == 25.0);
  CHECK(cfg.metric == Metric::SIR);
  CHECK(cfg.pathloss.pieces.size() == 2);
  CHECK(cfg.pathloss.breakpoints == std::vector<double>{300.0});
  CHECK(cfg.blockage.kind == BlockageModel::Kind::NegExp);
  CHECK(cfg.blockage.kappa == 0.007);
  CHECK(cfg.gain_l.sigma_db == 3.0);

  // canonical rendering round-trips to the same hash
  const NetworkConfig again = parse_config(render_config(cfg));
  CHECK(config_hash(again) == config_hash(cfg));
  CHECK(config_hash(cfg) != config_hash(default_scenario()));

  CHECK_THROWS_AS(parse_config("[network]\nlambda = 10\nbogus_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[mystery]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[network]\nlambda = 10\nlambda = 20\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[network]\nlambda = -4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[channel.nl]\ntype = lognormal\n"), ConfigError);  // missing sigma
  // LoS-only step model: d = inf is legal
  const NetworkConfig los_only = parse_config("[blockage]\ntype = step\nd = inf\n");
  CHECK(std::isinf(los_only.blockage.d));
  CHECK(validate(los_only).empty());
}
