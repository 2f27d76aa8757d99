#pragma once

#include <cmath>
#include <stdexcept>

namespace scn {

// dB <-> linear plumbing. Everything downstream of the config layer works in
// watts and meters; dB/dBm appear only at interfaces.

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// shadowing dB-to-linear constant: H = exp(beta * xi_dB), beta = -ln(10)/10.
// xi is zero-mean Gaussian so the sign is distributionally irrelevant, but the
// convention is fixed for reproducibility.
inline const double kBetaDb = -std::log(10.0) / 10.0;

inline double db_to_linear(double x_db) {
  if (!std::isfinite(x_db)) throw std::invalid_argument("db_to_linear: non-finite input");
  return std::pow(10.0, x_db / 10.0);
}

inline double linear_to_db(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("linear_to_db: input must be a positive finite value");
  return 10.0 * std::log10(x);
}

inline double dbm_to_watts(double x_dbm) {
  if (!std::isfinite(x_dbm)) throw std::invalid_argument("dbm_to_watts: non-finite input");
  return std::pow(10.0, (x_dbm - 30.0) / 10.0);
}

inline double watts_to_dbm(double w) {
  if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("watts_to_dbm: input must be a positive finite value");
  return 10.0 * std::log10(w) + 30.0;
}

// Propagation branch of a link: non-line-of-sight or line-of-sight.
enum class Branch { NL, L };

inline Branch other(Branch b) { return b == Branch::NL ? Branch::L : Branch::NL; }
inline const char* branch_name(Branch b) { return b == Branch::NL ? "NL" : "L"; }

}  // namespace scn
