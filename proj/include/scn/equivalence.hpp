#pragma once

#include <functional>
#include <memory>

#include "scn/config.hpp"

namespace scn {

// Machinery of the equivalent-distance transform: after mapping each BS to
// R*(B*H)^{-1/alpha}, the NLoS and LoS point sets become independent
// inhomogeneous Poisson processes on the line whose received power at the
// origin is simply t^{-alpha}. Everything downstream (strongest-power CDF,
// coverage inversion) consumes the pair of intensity measures built here.

struct IntensityPair {
  Branch branch;
  std::function<double(double)> measure;    // t -> Lambda^U([0,t])
  std::function<double(double)> intensity;  // t -> lambda^U(t) = d measure/dt
};

enum class IntensityBackend {
  GenericNumeric,
  ClosedFormLogNormal,
  ClosedFormNakagami,      // also covers the Rician approximation
  ClosedFormRayleighNL,    // Rayleigh NL branch + Nakagami L branch
};

struct EquivalentScenario {
  IntensityPair nl;
  IntensityPair l;
  double alpha_nl = 4.0;   // first-piece exponents (closed forms are single slope)
  double alpha_l = 2.0;
  IntensityBackend backend = IntensityBackend::GenericNumeric;

  const IntensityPair& pair(Branch u) const { return u == Branch::NL ? nl : l; }
};

// R * (b*h)^{-1/alpha}; received power is exactly (result)^{-alpha}
double equivalent_distance(double r, double b, double h, double alpha);

// Defining integral of the intensity measure, evaluated by quadrature over
// the gain law: E_H[2 pi lambda int p^U(R) R dR] with the upper limit
// min{d_n, t (B^U H)^{1/alpha}} per path-loss piece. This is the authority
// the closed forms are validated against.
double intensity_measure_numeric(const NetworkConfig& cfg, Branch u, double t);
// same, restricted to one path-loss piece (R in [d_{n-1}, d_n])
double intensity_measure_numeric_piece(const NetworkConfig& cfg, Branch u, std::size_t piece, double t);
// central finite difference of the measure
double intensity_numeric(const NetworkConfig& cfg, Branch u, double t);

// Closed-form accelerators (single slope + step blockage only; preconditions
// rejected with an explanation).
EquivalentScenario closed_form_lognormal(const NetworkConfig& cfg);
EquivalentScenario closed_form_nakagami(const NetworkConfig& cfg);
IntensityPair closed_form_rayleigh_nl(const NetworkConfig& cfg);

EquivalentScenario generic_numeric_scenario(const NetworkConfig& cfg);

// Picks the fastest applicable backend for the configured gains/blockage.
EquivalentScenario build_scenario(const NetworkConfig& cfg);

// Lemma-2 form: Pr[strongest received power <= gamma]
//   = exp(-Lambda^NL([0,gamma^{-1/a_NL}]) - Lambda^L([0,gamma^{-1/a_L}]))
double strongest_power_cdf(const EquivalentScenario& sc, double gamma_w);

// inverse of the CDF above (bisection on log gamma), q in (0,1)
double strongest_power_quantile(const EquivalentScenario& sc, double q);

}  // namespace scn
