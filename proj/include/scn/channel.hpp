#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace scn {

// Channel power-gain distributions: shadowing (log-normal) or multi-path
// fading (Rayleigh / Nakagami-m / Rician-approx / composite). All gains are
// linear power gains with (approximately) unit mean conventions matching the
// system model: LogNormal is exp(beta*xi) with xi ~ N(0, sigma_dB^2);
// Rayleigh power gain ~ Exp(1); Nakagami-m power gain ~ Gamma(m, 1/m).
struct GainDistribution {
  enum class Kind {
    Deterministic,             // H == 1
    LogNormal,                 // shadowing, sigma in dB
    Rayleigh,                  // Exp(1) power gain
    NakagamiM,                 // Gamma(m, scale 1/m)
    RicianApprox,              // Nakagami with m=(K+1)^2/(2K+1), K linear
    CompositeRayleighLogNormal // product of Exp(1) and lognormal(mu_s, sigma_s)
  };

  Kind kind = Kind::Deterministic;
  double sigma_db = 0.0;  // LogNormal
  double m = 1.0;         // NakagamiM
  double k_db = 0.0;      // RicianApprox (K-factor in dB; converted to linear)
  double mu_s = 0.0;      // Composite lognormal factor, natural-log mean
  double sigma_s = 1.0;   // Composite lognormal factor, natural-log std dev

  static GainDistribution deterministic();
  static GainDistribution lognormal(double sigma_db);
  static GainDistribution rayleigh();
  static GainDistribution nakagami(double m);
  static GainDistribution rician(double k_db);
  static GainDistribution composite(double mu_s, double sigma_s);

  // Rician links are handled as their Nakagami approximation everywhere.
  // Returns the effective Nakagami shape for Kind::RicianApprox.
  double nakagami_m_effective() const;

  // True when the distribution is a multi-path fading law (SIRP gains),
  // false for shadowing laws (SARP gains). Composite counts as fading.
  bool is_fading() const;

  std::string describe() const;
  // throws std::invalid_argument on bad parameters (e.g. m < 0.5)
  void check() const;
};

using Rng = std::mt19937_64;

double sample(const GainDistribution& dist, Rng& rng);

// E[H^p] for p > 0; throws std::domain_error if the moment diverges or the
// fallback quadrature fails to converge.
double fractional_moment(const GainDistribution& dist, double p);

// probability density at h > 0 (Deterministic has no density; throws)
double density(const GainDistribution& dist, double h);

// CDF Pr[H <= h]; defined for all variants except Composite (numeric;
// supported but slower).
double cdf(const GainDistribution& dist, double h);

// Quantile (inverse CDF) for u in (0,1). Not available for Composite
// (has_quantile() == false there).
bool has_quantile(const GainDistribution& dist);
double quantile(const GainDistribution& dist, double u);

}  // namespace scn
