#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "scn/channel.hpp"
#include "scn/units.hpp"

namespace scn {

// LoS probability model for a link of 2-D distance R (meters).
struct BlockageModel {
  enum class Kind { Step, NegExp };
  Kind kind = Kind::Step;
  double d = 250.0;      // Step: LoS iff R <= d. d may be +inf (LoS-only).
  double kappa = 0.0;    // NegExp: p_L(R) = exp(-kappa * R)

  static BlockageModel step(double d);
  static BlockageModel neg_exp(double kappa);
};

double p_los(const BlockageModel& model, double r);
double p_nlos(const BlockageModel& model, double r);
// antiderivative of p_los(R)*R on [0, r]; used by the intensity-measure
// integrals (closed form for both variants)
double p_los_primitive(const BlockageModel& model, double r);

// One piece of the multi-slope path loss law: PL_dB = A_dB + alpha*10*log10(R)
// per branch. Linear constant B^U = P_t * 10^(-A_dB^U/10) is derived in
// NetworkConfig.
struct PathLossPiece {
  double a_db_nl = 0.0;
  double a_db_l = 0.0;
  double alpha_nl = 4.0;
  double alpha_l = 2.0;
};

struct PathLossModel {
  std::vector<PathLossPiece> pieces;          // at least one
  std::vector<double> breakpoints;            // size pieces-1, strictly increasing
                                              // (d_0 = 0 and d_N = inf implicit)
  std::size_t piece_index(double r) const;
  double lower_edge(std::size_t n) const;     // d_{n-1}
  double upper_edge(std::size_t n) const;     // d_n (inf for last piece)
  bool single_slope() const { return pieces.size() == 1; }
};

enum class Association { SIRP, SARP };  // strongest instantaneous vs average power
enum class Metric { SINR, SIR };

struct NetworkConfig {
  double lambda = 10.0;        // BS density, BSs per km^2 (interface unit)
  double pt_dbm = 30.0;
  double noise_dbm = -95.0;
  double threshold_db = 0.0;
  PathLossModel pathloss;
  BlockageModel blockage;
  GainDistribution gain_nl;
  GainDistribution gain_l;
  Association association = Association::SARP;
  Metric metric = Metric::SINR;

  // derived linear quantities
  double lambda_m2() const { return lambda * 1e-6; }
  double pt_w() const { return dbm_to_watts(pt_dbm); }
  double noise_w() const { return dbm_to_watts(noise_dbm); }
  double t_lin() const { return db_to_linear(threshold_db); }
  double b_lin(std::size_t piece, Branch u) const;   // B^U_n in watts
  double alpha(std::size_t piece, Branch u) const;
  const GainDistribution& gain(Branch u) const { return u == Branch::NL ? gain_nl : gain_l; }
};

// Baseline single-slope scenario used throughout: 30 dBm transmit power,
// A = 30.8/2.7 dB, alpha = 4.28/2.42, lognormal shadowing 4/3 dB, -95 dBm
// noise, LoS disk radius 250 m, 0 dB threshold, SARP association.
NetworkConfig default_scenario();

// all invariant violations, each with a field path; empty means valid
std::vector<std::string> validate(const NetworkConfig& cfg);

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Load the INI-style scenario file ([network], [pathloss.piece.N],
// [blockage], [channel.nl], [channel.l]); throws ConfigError listing every
// problem found. Unknown keys are errors (typo protection).
NetworkConfig load_config(const std::string& path);
NetworkConfig parse_config(const std::string& text, const std::string& origin = "<string>");

// Canonical text rendering of a config (also what the config hash covers).
std::string render_config(const NetworkConfig& cfg);
std::uint64_t config_hash(const NetworkConfig& cfg);

}  // namespace scn
