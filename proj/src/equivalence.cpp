#include "scn/equivalence.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scn {

namespace {

using GL64 = boost::math::quadrature::gauss<double, 64>;

// integral of f(u) du over [a,b] with a 64-point Gauss-Legendre rule
template <typename F>
double gl64(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const auto& xs = GL64::abscissa();  // nonnegative half
  const auto& ws = GL64::weights();
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    acc += ws[i] * f(c + h * xs[i]);
    if (xs[i] != 0.0) acc += ws[i] * f(c - h * xs[i]);
  }
  return acc * h;
}

// antiderivative (from 0) of p^U(R)*R for the configured blockage
double branch_primitive(const BlockageModel& blockage, Branch u, double r) {
  const double los = p_los_primitive(blockage, r);
  return u == Branch::L ? los : 0.5 * r * r - los;
}

// area integral of p^U(R) R dR over [lo, min(hi, x)] for one gain value;
// x = t*(B*H)^{1/alpha} is the reach of the transformed ball
double piece_area(const NetworkConfig& cfg, Branch u, std::size_t n, double x) {
  const double lo = cfg.pathloss.lower_edge(n);
  const double hi = cfg.pathloss.upper_edge(n);
  const double c = std::clamp(x, lo, hi);
  if (c <= lo) return 0.0;
  return branch_primitive(cfg.blockage, u, c) - branch_primitive(cfg.blockage, u, lo);
}

// gain values at which the reach x(H) crosses a geometry edge; the integrand
// is only piecewise smooth in H, so the quantile quadrature splits there
void collect_kinks(const NetworkConfig& cfg, Branch u, std::size_t n, double t, double b, double alpha,
                   std::vector<double>& h_kinks) {
  auto h_at = [&](double x_star) {
    // solve x_star = t*(b*H)^{1/alpha} for H
    return std::pow(x_star / t, alpha) / b;
  };
  const double lo = cfg.pathloss.lower_edge(n);
  const double hi = cfg.pathloss.upper_edge(n);
  if (lo > 0.0) h_kinks.push_back(h_at(lo));
  if (std::isfinite(hi)) h_kinks.push_back(h_at(hi));
  if (cfg.blockage.kind == BlockageModel::Kind::Step && std::isfinite(cfg.blockage.d))
    h_kinks.push_back(h_at(cfg.blockage.d));
}

// E over one scalar gain law with a quantile transform, splitting at kinks
template <typename F>
double expect_quantile(const GainDistribution& g, const std::vector<double>& h_kinks, F&& f) {
  // fixed cuts concentrate nodes near u = 0 and u = 1 where the quantile
  // function has unbounded derivatives (erf_inv / gamma_p_inv endpoints)
  std::vector<double> cuts{0.0,    1e-9,  1e-7,  1e-5,  1e-3,       1e-2,       0.05,
                           0.2,    0.5,   0.8,   0.95,  0.99,       0.999,      1 - 1e-5,
                           1 - 1e-7, 1 - 1e-9, 1.0};
  for (double h : h_kinks) {
    if (!(h > 0.0) || !std::isfinite(h)) continue;
    const double u = cdf(g, h);
    if (u > 1e-13 && u < 1.0 - 1e-13) cuts.push_back(u);
  }
  std::sort(cuts.begin(), cuts.end());
  // rounding in the node arithmetic can land exactly on the endpoints where
  // the quantile is undefined
  const double u_lo = std::numeric_limits<double>::min();
  const double u_hi = std::nextafter(1.0, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-15) continue;
    acc += gl64([&](double u) { return f(quantile(g, std::clamp(u, u_lo, u_hi))); }, cuts[i],
                cuts[i + 1]);
  }
  return acc;
}

double measure_piece(const NetworkConfig& cfg, Branch u, std::size_t n, double t) {
  if (!(t > 0.0)) return 0.0;
  const double b = cfg.b_lin(n, u);
  const double alpha = cfg.alpha(n, u);
  const double pref = 2.0 * kPi * cfg.lambda_m2();
  auto reach = [&](double h) { return t * std::pow(b * h, 1.0 / alpha); };
  const auto& g = cfg.gain(u);

  if (g.kind == GainDistribution::Kind::Deterministic)
    return pref * piece_area(cfg, u, n, reach(1.0));

  std::vector<double> kinks;
  collect_kinks(cfg, u, n, t, b, alpha, kinks);

  if (g.kind == GainDistribution::Kind::CompositeRayleighLogNormal) {
    // product gain: iterate the exponential factor inside the lognormal one
    GainDistribution ln_factor;  // natural-parameter lognormal scale
    ln_factor.kind = GainDistribution::Kind::LogNormal;
    ln_factor.sigma_db = g.sigma_s / (std::log(10.0) / 10.0);
    const double mu_shift = std::exp(g.mu_s);
    GainDistribution exp_factor = GainDistribution::rayleigh();
    return pref * expect_quantile(ln_factor, {}, [&](double s) {
      const double scale = s * mu_shift;
      std::vector<double> inner_kinks;
      inner_kinks.reserve(kinks.size());
      for (double h : kinks) inner_kinks.push_back(h / scale);
      return expect_quantile(exp_factor, inner_kinks,
                             [&](double x) { return piece_area(cfg, u, n, reach(x * scale)); });
    });
  }

  return pref * expect_quantile(g, kinks, [&](double h) { return piece_area(cfg, u, n, reach(h)); });
}

}  // namespace

double equivalent_distance(double r, double b, double h, double alpha) {
  return r * std::pow(b * h, -1.0 / alpha);
}

double intensity_measure_numeric_piece(const NetworkConfig& cfg, Branch u, std::size_t piece, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("intensity_measure_numeric: t must be >= 0");
  return measure_piece(cfg, u, piece, t);
}

double intensity_measure_numeric(const NetworkConfig& cfg, Branch u, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("intensity_measure_numeric: t must be >= 0");
  double acc = 0.0;
  for (std::size_t n = 0; n < cfg.pathloss.pieces.size(); ++n) acc += measure_piece(cfg, u, n, t);
  return acc;
}

double intensity_numeric(const NetworkConfig& cfg, Branch u, double t) {
  if (!(t > 0.0)) return 0.0;
  const double h = std::max(1e-6 * t, 1e-9);
  const double lo = std::max(t - h, 0.0);
  return (intensity_measure_numeric(cfg, u, t + h) - intensity_measure_numeric(cfg, u, lo)) / (t + h - lo);
}

// ---------------------------------------------------------------------------
// closed forms (single slope, step blockage)

namespace {

void require_single_slope_step(const NetworkConfig& cfg, const char* who, bool need_finite_d) {
  if (!cfg.pathloss.single_slope())
    throw std::invalid_argument(std::string(who) + ": closed form needs a single-slope path loss model");
  if (cfg.blockage.kind != BlockageModel::Kind::Step)
    throw std::invalid_argument(std::string(who) + ": closed form needs the step blockage model");
  if (need_finite_d && !std::isfinite(cfg.blockage.d))
    throw std::invalid_argument(std::string(who) + ": closed form needs a finite LoS radius");
}

// Uniform-disk reduction for an all-LoS network (step blockage, d = inf):
// Lambda^L(t) = pi*lam*t^2*B^{2/a}*E[H^{2/a}], NL branch empty. Valid for any
// gain with a finite fractional moment.
EquivalentScenario all_los_scenario(const NetworkConfig& cfg, IntensityBackend tag) {
  const double alpha = cfg.alpha(0, Branch::L);
  const double coef = kPi * cfg.lambda_m2() * std::pow(cfg.b_lin(0, Branch::L), 2.0 / alpha) *
                      fractional_moment(cfg.gain_l, 2.0 / alpha);
  EquivalentScenario sc;
  sc.backend = tag;
  sc.alpha_nl = cfg.alpha(0, Branch::NL);
  sc.alpha_l = alpha;
  sc.nl = {Branch::NL, [](double) { return 0.0; }, [](double) { return 0.0; }};
  sc.l = {Branch::L, [coef](double t) { return t > 0.0 ? coef * t * t : 0.0; },
          [coef](double t) { return t > 0.0 ? 2.0 * coef * t : 0.0; }};
  return sc;
}

struct LogNormalConsts {
  double m, q, v, b_p, pref, e_inv_m2;
};

// branch constants for the erfc-based closed forms; sigma enters in natural
// log units (ln10/10 * sigma_dB) -- the printed forms only reproduce the
// defining integral under that convention
LogNormalConsts lognormal_consts(const NetworkConfig& cfg, Branch u) {
  const double alpha = cfg.alpha(0, u);
  const double b = cfg.b_lin(0, u);
  const double s = std::log(10.0) / 10.0 * cfg.gain(u).sigma_db;
  const double d = cfg.blockage.d;
  LogNormalConsts c{};
  const double r2s = std::sqrt(2.0) * s;
  c.v = (alpha * std::log(d) - std::log(b)) / r2s;
  if (u == Branch::NL) {
    c.m = -alpha / r2s;
    // note: +1/M here (M < 0). The sign differs from the printed constant;
    // this is the form that matches the defining integral (see tests).
    c.q = c.v + 1.0 / c.m;
  } else {
    c.m = alpha / r2s;
    c.q = -c.v + 1.0 / c.m;
  }
  c.b_p = std::pow(b, 2.0 / alpha);
  c.pref = kPi * cfg.lambda_m2();
  c.e_inv_m2 = std::exp(1.0 / (c.m * c.m));
  return c;
}

IntensityPair lognormal_pair(const NetworkConfig& cfg, Branch u) {
  const LogNormalConsts c = lognormal_consts(cfg, u);
  const double d = cfg.blockage.d;
  const double lam = cfg.lambda_m2();
  auto measure = [c, d, u](double t) {
    if (!(t > 0.0)) return 0.0;
    const double lt = std::log(t);
    const double grow = 0.5 * c.pref * t * t * c.b_p * c.e_inv_m2 * boost::math::erfc(c.m * lt + c.q);
    if (u == Branch::NL)
      return grow - 0.5 * c.pref * d * d * boost::math::erfc(c.m * lt + c.v);
    return grow + 0.5 * c.pref * d * d * boost::math::erfc(-c.m * lt + c.v);
  };
  auto intensity = [c, d, lam, u](double t) {
    if (!(t > 0.0)) return 0.0;
    const double lt = std::log(t);
    const double sq = std::sqrt(kPi);
    const double a1 = c.m * lt + c.q;
    double acc = c.pref * t * c.b_p * c.e_inv_m2 * boost::math::erfc(a1);
    acc -= c.m * lam * t * sq * c.b_p * std::exp(1.0 / (c.m * c.m) - a1 * a1);
    const double a2 = (u == Branch::NL) ? (c.m * lt + c.v) : (-c.m * lt + c.v);
    acc += c.m * lam * sq * d * d / t * std::exp(-a2 * a2);
    return std::max(acc, 0.0);
  };
  return {u, measure, intensity};
}

// gamma-family branch (Nakagami/Rician/Rayleigh): upper incomplete gamma for
// the NL branch, lower for the L branch
IntensityPair gamma_family_pair(const NetworkConfig& cfg, Branch u, double m) {
  const double alpha = cfg.alpha(0, u);
  const double b = cfg.b_lin(0, u);
  const double d = cfg.blockage.d;
  const double pref = kPi * cfg.lambda_m2();
  const double p = 2.0 / alpha;
  const double bp = std::pow(b / m, p);
  const double gm = boost::math::tgamma(m);
  auto xarg = [m, b, d, alpha](double t) { return m / b * std::pow(d / t, alpha); };
  auto measure = [=](double t) {
    if (!(t > 0.0)) return 0.0;
    const double x = xarg(t);
    if (u == Branch::NL)
      return -pref * d * d * boost::math::gamma_q(m, x) +
             pref * t * t * bp * boost::math::tgamma(p + m, x) / gm;
    return pref * d * d * boost::math::gamma_q(m, x) +
           pref * t * t * bp * boost::math::tgamma_lower(p + m, x) / gm;
  };
  auto intensity = [=](double t) {
    if (!(t > 0.0)) return 0.0;
    const double x = xarg(t);
    const double inc = (u == Branch::NL) ? boost::math::tgamma(p + m, x)
                                         : boost::math::tgamma_lower(p + m, x);
    return 2.0 * pref * t * bp * inc / gm;
  };
  return {u, measure, intensity};
}

}  // namespace

EquivalentScenario closed_form_lognormal(const NetworkConfig& cfg) {
  require_single_slope_step(cfg, "closed_form_lognormal", false);
  for (Branch u : {Branch::NL, Branch::L})
    if (cfg.gain(u).kind != GainDistribution::Kind::LogNormal)
      throw std::invalid_argument("closed_form_lognormal: both branch gains must be lognormal shadowing");
  if (!std::isfinite(cfg.blockage.d)) return all_los_scenario(cfg, IntensityBackend::ClosedFormLogNormal);
  EquivalentScenario sc;
  sc.backend = IntensityBackend::ClosedFormLogNormal;
  sc.alpha_nl = cfg.alpha(0, Branch::NL);
  sc.alpha_l = cfg.alpha(0, Branch::L);
  sc.nl = lognormal_pair(cfg, Branch::NL);
  sc.l = lognormal_pair(cfg, Branch::L);
  return sc;
}

EquivalentScenario closed_form_nakagami(const NetworkConfig& cfg) {
  require_single_slope_step(cfg, "closed_form_nakagami", false);
  for (Branch u : {Branch::NL, Branch::L}) {
    const auto k = cfg.gain(u).kind;
    if (k != GainDistribution::Kind::NakagamiM && k != GainDistribution::Kind::RicianApprox &&
        k != GainDistribution::Kind::Rayleigh)
      throw std::invalid_argument("closed_form_nakagami: both branch gains must be gamma-family fading");
  }
  if (!std::isfinite(cfg.blockage.d)) return all_los_scenario(cfg, IntensityBackend::ClosedFormNakagami);
  EquivalentScenario sc;
  sc.backend = IntensityBackend::ClosedFormNakagami;
  sc.alpha_nl = cfg.alpha(0, Branch::NL);
  sc.alpha_l = cfg.alpha(0, Branch::L);
  sc.nl = gamma_family_pair(cfg, Branch::NL, cfg.gain_nl.nakagami_m_effective());
  sc.l = gamma_family_pair(cfg, Branch::L, cfg.gain_l.nakagami_m_effective());
  return sc;
}

IntensityPair closed_form_rayleigh_nl(const NetworkConfig& cfg) {
  require_single_slope_step(cfg, "closed_form_rayleigh_nl", true);
  if (cfg.gain_nl.kind != GainDistribution::Kind::Rayleigh)
    throw std::invalid_argument("closed_form_rayleigh_nl: NL gain must be Rayleigh");
  const double alpha = cfg.alpha(0, Branch::NL);
  const double b = cfg.b_lin(0, Branch::NL);
  const double d = cfg.blockage.d;
  const double pref = kPi * cfg.lambda_m2();
  const double p = 2.0 / alpha;
  const double bp = std::pow(b, p);
  auto xarg = [b, d, alpha](double t) { return std::pow(d / t, alpha) / b; };
  auto measure = [=](double t) {
    if (!(t > 0.0)) return 0.0;
    const double x = xarg(t);
    return pref * t * t * bp * boost::math::tgamma(p + 1.0, x) - pref * d * d * std::exp(-x);
  };
  auto intensity = [=](double t) {
    if (!(t > 0.0)) return 0.0;
    return 2.0 * pref * t * bp * boost::math::tgamma(p + 1.0, xarg(t));
  };
  return {Branch::NL, measure, intensity};
}

EquivalentScenario generic_numeric_scenario(const NetworkConfig& cfg) {
  EquivalentScenario sc;
  sc.backend = IntensityBackend::GenericNumeric;
  sc.alpha_nl = cfg.alpha(0, Branch::NL);
  sc.alpha_l = cfg.alpha(0, Branch::L);
  for (Branch u : {Branch::NL, Branch::L}) {
    IntensityPair pair{u,
                       [cfg, u](double t) { return intensity_measure_numeric(cfg, u, t); },
                       [cfg, u](double t) { return intensity_numeric(cfg, u, t); }};
    (u == Branch::NL ? sc.nl : sc.l) = std::move(pair);
  }
  return sc;
}

EquivalentScenario build_scenario(const NetworkConfig& cfg) {
  const bool closed_geometry =
      cfg.pathloss.single_slope() && cfg.blockage.kind == BlockageModel::Kind::Step;
  if (closed_geometry) {
    const auto knl = cfg.gain_nl.kind;
    const auto kl = cfg.gain_l.kind;
    auto gamma_family = [](GainDistribution::Kind k) {
      return k == GainDistribution::Kind::NakagamiM || k == GainDistribution::Kind::RicianApprox ||
             k == GainDistribution::Kind::Rayleigh;
    };
    if (knl == GainDistribution::Kind::LogNormal && kl == GainDistribution::Kind::LogNormal)
      return closed_form_lognormal(cfg);
    if (gamma_family(knl) && gamma_family(kl)) {
      if (knl == GainDistribution::Kind::Rayleigh && std::isfinite(cfg.blockage.d)) {
        EquivalentScenario sc = closed_form_nakagami(cfg);
        sc.backend = IntensityBackend::ClosedFormRayleighNL;
        sc.nl = closed_form_rayleigh_nl(cfg);
        return sc;
      }
      return closed_form_nakagami(cfg);
    }
  }
  return generic_numeric_scenario(cfg);
}

double strongest_power_cdf(const EquivalentScenario& sc, double gamma_w) {
  if (!(gamma_w > 0.0)) throw std::invalid_argument("strongest_power_cdf: gamma must be > 0");
  const double t_nl = std::pow(gamma_w, -1.0 / sc.alpha_nl);
  const double t_l = std::pow(gamma_w, -1.0 / sc.alpha_l);
  return std::exp(-sc.nl.measure(t_nl) - sc.l.measure(t_l));
}

double strongest_power_quantile(const EquivalentScenario& sc, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("strongest_power_quantile: q must be in (0,1)");
  // bracket on log10(gamma), then bisect
  double lo = -30.0, hi = 10.0;
  auto cdf_at = [&](double lg) { return strongest_power_cdf(sc, std::pow(10.0, lg)); };
  for (int i = 0; i < 60 && cdf_at(lo) > q; ++i) lo -= 10.0;
  for (int i = 0; i < 60 && cdf_at(hi) < q; ++i) hi += 10.0;
  if (cdf_at(lo) > q || cdf_at(hi) < q)
    throw std::runtime_error("strongest_power_quantile: could not bracket the quantile");
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf_at(mid) < q ? lo : hi) = mid;
  }
  return std::pow(10.0, 0.5 * (lo + hi));
}

}  // namespace scn
