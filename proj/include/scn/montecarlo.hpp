#pragma once

#include <cstdint>
#include <vector>

#include "scn/config.hpp"

namespace scn {

// Ground-truth simulator: BSs drawn as a Poisson process in a disk around the
// probe user at the origin, each link independently tagged LoS/NLoS and given
// a random gain, association by strongest received power.

struct Deployment {
  struct Bs {
    double x = 0.0, y = 0.0, r = 0.0;
    Branch branch = Branch::NL;
    double gain = 1.0;
  };
  double window_radius = 0.0;
  std::vector<Bs> bs;
};

struct TrialRecord {
  bool empty = false;              // no BS fell in the window; counts as uncovered
  std::ptrdiff_t serving_index = -1;
  Branch serving_branch = Branch::NL;
  double serving_power = 0.0;      // watts
  double interference = 0.0;       // watts, serving BS excluded
  double sinr = 0.0;               // linear
  double sir = 0.0;                // linear (inf when there is no interferer)
};

struct CoverageEstimate {
  double p = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;  // 95% Wilson interval
  double empty_fraction = 0.0;
  std::size_t trials = 0;
};

struct InterferenceEstimate {
  double mean = 0.0;       // watts (arithmetic; dominated by rare strong LoS interferers)
  double std_error = 0.0;
  // dB-domain average: exp(mean of ln I) over trials with at least one
  // interferer. The arithmetic mean has no stable estimate under the singular
  // path-loss model (the strongest-interferer tail is too heavy), so boundary
  // searches use this statistic instead.
  double log_mean = 0.0;      // watts
  double log_se = 0.0;        // standard error of mean(ln I), natural-log units
  double zero_fraction = 0.0; // trials with no interferer at all
};

// max(2000 m, radius giving an expected BS count of 300)
double default_window_radius(const NetworkConfig& cfg);

Deployment deploy(const NetworkConfig& cfg, double window_radius, Rng& rng);

// B^U * H * R^{-alpha^U} with the path-loss piece containing R
double received_power(const NetworkConfig& cfg, Branch branch, double r, double gain);

TrialRecord associate(const NetworkConfig& cfg, const Deployment& dep);

// All estimators derive each trial's RNG stream from (seed, trial index) and
// reduce in fixed-size blocks, so results are identical for any thread count.
CoverageEstimate estimate_coverage(const NetworkConfig& cfg, std::size_t trials, std::uint64_t seed,
                                   int threads = 1);

// empirical CDF of the per-trial strongest received power on gamma_w (watts)
std::vector<double> estimate_strongest_power_cdf(const NetworkConfig& cfg, std::size_t trials,
                                                 const std::vector<double>& gamma_w,
                                                 std::uint64_t seed, int threads = 1);

InterferenceEstimate mean_interference(const NetworkConfig& cfg, std::size_t trials,
                                       std::uint64_t seed, int threads = 1);

}  // namespace scn
