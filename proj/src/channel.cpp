#include "scn/channel.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "scn/units.hpp"

namespace scn {

namespace {

// natural-log std dev of a lognormal shadowing gain specified in dB
double natural_sigma(double sigma_db) { return std::log(10.0) / 10.0 * sigma_db; }

double rician_m_from_kdb(double k_db) {
  const double k = db_to_linear(k_db);
  return (k + 1.0) * (k + 1.0) / (2.0 * k + 1.0);
}

}  // namespace

GainDistribution GainDistribution::deterministic() { return {}; }

GainDistribution GainDistribution::lognormal(double sigma_db) {
  GainDistribution d;
  d.kind = Kind::LogNormal;
  d.sigma_db = sigma_db;
  return d;
}

GainDistribution GainDistribution::rayleigh() {
  GainDistribution d;
  d.kind = Kind::Rayleigh;
  return d;
}

GainDistribution GainDistribution::nakagami(double m) {
  GainDistribution d;
  d.kind = Kind::NakagamiM;
  d.m = m;
  return d;
}

GainDistribution GainDistribution::rician(double k_db) {
  GainDistribution d;
  d.kind = Kind::RicianApprox;
  d.k_db = k_db;
  return d;
}

GainDistribution GainDistribution::composite(double mu_s, double sigma_s) {
  GainDistribution d;
  d.kind = Kind::CompositeRayleighLogNormal;
  d.mu_s = mu_s;
  d.sigma_s = sigma_s;
  return d;
}

double GainDistribution::nakagami_m_effective() const {
  switch (kind) {
    case Kind::NakagamiM: return m;
    case Kind::RicianApprox: return rician_m_from_kdb(k_db);
    case Kind::Rayleigh: return 1.0;
    default: throw std::logic_error("nakagami_m_effective: not a gamma-family gain");
  }
}

bool GainDistribution::is_fading() const {
  switch (kind) {
    case Kind::Rayleigh:
    case Kind::NakagamiM:
    case Kind::RicianApprox:
    case Kind::CompositeRayleighLogNormal:
      return true;
    default:
      return false;
  }
}

std::string GainDistribution::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Deterministic: os << "deterministic"; break;
    case Kind::LogNormal: os << "lognormal(sigma=" << sigma_db << " dB)"; break;
    case Kind::Rayleigh: os << "rayleigh"; break;
    case Kind::NakagamiM: os << "nakagami(m=" << m << ")"; break;
    case Kind::RicianApprox: os << "rician(K=" << k_db << " dB, m=" << nakagami_m_effective() << ")"; break;
    case Kind::CompositeRayleighLogNormal:
      os << "composite(mu_s=" << mu_s << ", sigma_s=" << sigma_s << ")";
      break;
  }
  return os.str();
}

void GainDistribution::check() const {
  switch (kind) {
    case Kind::Deterministic:
      break;
    case Kind::LogNormal:
      if (!(sigma_db >= 0.0) || !std::isfinite(sigma_db))
        throw std::invalid_argument("lognormal gain: sigma_db must be >= 0");
      break;
    case Kind::Rayleigh:
      break;
    case Kind::NakagamiM:
      if (!(m >= 0.5) || !std::isfinite(m))
        throw std::invalid_argument("nakagami gain: m must be >= 0.5");
      break;
    case Kind::RicianApprox:
      if (!std::isfinite(k_db)) throw std::invalid_argument("rician gain: k_db must be finite");
      break;
    case Kind::CompositeRayleighLogNormal:
      if (!(sigma_s > 0.0) || !std::isfinite(sigma_s) || !std::isfinite(mu_s))
        throw std::invalid_argument("composite gain: sigma_s must be > 0 and mu_s finite");
      break;
  }
}

double sample(const GainDistribution& dist, Rng& rng) {
  switch (dist.kind) {
    case GainDistribution::Kind::Deterministic:
      return 1.0;
    case GainDistribution::Kind::LogNormal: {
      std::normal_distribution<double> n(0.0, dist.sigma_db);
      return std::exp(kBetaDb * n(rng));
    }
    case GainDistribution::Kind::Rayleigh: {
      std::exponential_distribution<double> e(1.0);
      return e(rng);
    }
    case GainDistribution::Kind::NakagamiM:
    case GainDistribution::Kind::RicianApprox: {
      const double m = dist.nakagami_m_effective();
      std::gamma_distribution<double> g(m, 1.0 / m);
      return g(rng);
    }
    case GainDistribution::Kind::CompositeRayleighLogNormal: {
      std::exponential_distribution<double> e(1.0);
      std::normal_distribution<double> n(dist.mu_s, dist.sigma_s);
      return e(rng) * std::exp(n(rng));
    }
  }
  throw std::logic_error("sample: unreachable");
}

double fractional_moment(const GainDistribution& dist, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("fractional_moment: p must be > 0");
  switch (dist.kind) {
    case GainDistribution::Kind::Deterministic:
      return 1.0;
    case GainDistribution::Kind::LogNormal: {
      const double s = natural_sigma(dist.sigma_db);
      return std::exp(p * p * s * s / 2.0);
    }
    case GainDistribution::Kind::Rayleigh:
      return std::tgamma(1.0 + p);
    case GainDistribution::Kind::NakagamiM:
    case GainDistribution::Kind::RicianApprox: {
      const double m = dist.nakagami_m_effective();
      return boost::math::tgamma(m + p) / (boost::math::tgamma(m) * std::pow(m, p));
    }
    case GainDistribution::Kind::CompositeRayleighLogNormal: {
      // product of independent factors: E[(XS)^p] = E[X^p] E[S^p]
      const double exp_part = std::tgamma(1.0 + p);
      const double ln_part = std::exp(p * dist.mu_s + p * p * dist.sigma_s * dist.sigma_s / 2.0);
      return exp_part * ln_part;
    }
  }
  throw std::logic_error("fractional_moment: unreachable");
}

double density(const GainDistribution& dist, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("density: h must be > 0");
  switch (dist.kind) {
    case GainDistribution::Kind::Deterministic:
      throw std::invalid_argument("density: deterministic gain has no density");
    case GainDistribution::Kind::LogNormal: {
      const double s = natural_sigma(dist.sigma_db);
      const double z = std::log(h) / s;
      return std::exp(-0.5 * z * z) / (h * s * std::sqrt(2.0 * kPi));
    }
    case GainDistribution::Kind::Rayleigh:
      return std::exp(-h);
    case GainDistribution::Kind::NakagamiM:
    case GainDistribution::Kind::RicianApprox: {
      const double m = dist.nakagami_m_effective();
      return std::exp(m * std::log(m) + (m - 1.0) * std::log(h) - m * h - std::lgamma(m));
    }
    case GainDistribution::Kind::CompositeRayleighLogNormal: {
      // marginal of X*S: integrate the exponential factor against the
      // lognormal scale on a log axis (the integrand spans many decades)
      const double mu = dist.mu_s, sg = dist.sigma_s;
      auto f = [&](double w) {
        const double sv = std::exp(w);
        const double lnpdf = std::exp(-0.5 * (w - mu) * (w - mu) / (sg * sg)) / (sg * std::sqrt(2.0 * kPi));
        return std::exp(-h / sv) / sv * lnpdf;
      };
      double err = 0.0;
      const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          f, mu - 12.0 * sg, mu + 12.0 * sg, 12, 1e-8, &err);
      if (!(err <= 1e-6 * std::max(v, 1e-300)) && err > 1e-14)
        throw std::runtime_error("composite density: quadrature did not converge");
      return v;
    }
  }
  throw std::logic_error("density: unreachable");
}

double cdf(const GainDistribution& dist, double h) {
  if (h <= 0.0) return 0.0;
  switch (dist.kind) {
    case GainDistribution::Kind::Deterministic:
      return h >= 1.0 ? 1.0 : 0.0;
    case GainDistribution::Kind::LogNormal: {
      const double s = natural_sigma(dist.sigma_db);
      return 0.5 * boost::math::erfc(-std::log(h) / (s * std::sqrt(2.0)));
    }
    case GainDistribution::Kind::Rayleigh:
      return -std::expm1(-h);
    case GainDistribution::Kind::NakagamiM:
    case GainDistribution::Kind::RicianApprox: {
      const double m = dist.nakagami_m_effective();
      return boost::math::gamma_p(m, m * h);
    }
    case GainDistribution::Kind::CompositeRayleighLogNormal: {
      // Pr[XS <= h] = E_S[1 - exp(-h/S)]
      const double mu = dist.mu_s, sg = dist.sigma_s;
      auto f = [&](double w) {
        const double lnpdf = std::exp(-0.5 * (w - mu) * (w - mu) / (sg * sg)) / (sg * std::sqrt(2.0 * kPi));
        return -std::expm1(-h / std::exp(w)) * lnpdf;
      };
      return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          f, mu - 12.0 * sg, mu + 12.0 * sg, 12, 1e-10);
    }
  }
  throw std::logic_error("cdf: unreachable");
}

bool has_quantile(const GainDistribution& dist) {
  return dist.kind != GainDistribution::Kind::CompositeRayleighLogNormal;
}

double quantile(const GainDistribution& dist, double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("quantile: u must be in (0,1)");
  switch (dist.kind) {
    case GainDistribution::Kind::Deterministic:
      return 1.0;
    case GainDistribution::Kind::LogNormal: {
      const double s = natural_sigma(dist.sigma_db);
      return std::exp(s * std::sqrt(2.0) * boost::math::erf_inv(2.0 * u - 1.0));
    }
    case GainDistribution::Kind::Rayleigh:
      return -std::log1p(-u);
    case GainDistribution::Kind::NakagamiM:
    case GainDistribution::Kind::RicianApprox: {
      const double m = dist.nakagami_m_effective();
      return boost::math::gamma_p_inv(m, u) / m;
    }
    case GainDistribution::Kind::CompositeRayleighLogNormal:
      throw std::invalid_argument("quantile: not available for the composite gain");
  }
  throw std::logic_error("quantile: unreachable");
}

}  // namespace scn
