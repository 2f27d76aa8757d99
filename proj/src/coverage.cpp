#include "scn/coverage.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace scn {

namespace {

using cplx = std::complex<double>;
constexpr cplx kJ{0.0, 1.0};

// (e^z - 1)/z and int_0^1 u e^{zu} du, stable near z = 0
template <typename T>
T phi1(T z) {
  if (std::abs(z) < 0.05)
    return 1.0 + z * (1.0 / 2 + z * (1.0 / 6 + z * (1.0 / 24 + z * (1.0 / 120 + z / 720.0))));
  return (std::exp(z) - 1.0) / z;
}

template <typename T>
T phi2h(T z) {
  if (std::abs(z) < 0.05)
    return 0.5 + z * (1.0 / 3 + z * (1.0 / 8 + z * (1.0 / 30 + z * (1.0 / 144 + z / 840.0))));
  return (std::exp(z) * (z - 1.0) + 1.0) / (z * z);
}

// int_a^{a+len} (e^{cv} - 1) g(v) dv with g linear between ga and gb; exact in
// c for the linear model, which keeps the accuracy frequency-independent
template <typename T>
T filon_segment(T c, double a, double len, double ga, double gb) {
  const T z = c * len;
  return std::exp(c * a) * len * (ga * phi1(z) + (gb - ga) * phi2h(z)) - len * 0.5 * (ga + gb);
}

// Interference from one branch, conditioned on service at equivalent distance
// y: each interferer contributes v = y^{a_s} t^{-a_o} in (0, 1]. The point set
// is Poisson with density g(v); everything below the relative floor is folded
// into a deterministic mean shift (the sub-floor sum concentrates there).
struct BranchGrid {
  std::vector<double> v, g;
  double m1 = 0.0, m2 = 0.0, mass = 0.0, mtail = 0.0;
};

BranchGrid build_grid(const EquivalentScenario& sc, Branch serving, Branch other_b, double y,
                      const QuadratureSpec& quad) {
  const double a_s = serving == Branch::NL ? sc.alpha_nl : sc.alpha_l;
  const double a_o = other_b == Branch::NL ? sc.alpha_nl : sc.alpha_l;
  const double scale = std::pow(y, a_s / a_o);
  const int n = quad.v_points;
  BranchGrid grid;
  grid.v.resize(n);
  grid.g.resize(n);
  const double lv0 = std::log(quad.t_tail);
  const auto& intensity = sc.pair(other_b).intensity;
  for (int j = 0; j < n; ++j) {
    const double v = (j == n - 1) ? 1.0 : std::exp(lv0 * (1.0 - double(j) / (n - 1)));
    const double t = scale * std::pow(v, -1.0 / a_o);
    grid.v[j] = v;
    grid.g[j] = intensity(t) * scale * std::pow(v, -1.0 / a_o - 1.0) / a_o;
  }
  for (int j = 0; j + 1 < n; ++j) {
    const double va = grid.v[j], vb = grid.v[j + 1], len = vb - va;
    const double ga = grid.g[j], gb = grid.g[j + 1];
    const double vm = 0.5 * (va + vb), gm = 0.5 * (ga + gb);
    grid.mass += len * gm;
    grid.m1 += len / 6.0 * (ga * va + 4.0 * gm * vm + gb * vb);
    grid.m2 += len / 6.0 * (ga * va * va + 4.0 * gm * vm * vm + gb * vb * vb);
  }
  // mean of the sub-floor points under the v^{-2/a-1} tail profile
  grid.mtail = grid.g.front() * quad.t_tail * quad.t_tail / (1.0 - 2.0 / a_o);
  return grid;
}

template <typename T>
T exponent_over_grid(const BranchGrid& grid, T c) {
  T acc{};
  for (std::size_t j = 0; j + 1 < grid.v.size(); ++j)
    acc += filon_segment(c, grid.v[j], grid.v[j + 1] - grid.v[j], grid.g[j], grid.g[j + 1]);
  return acc;
}

// sampled CF of the above-floor interference sum, reusable across thresholds
struct CfTable {
  std::vector<double> node, weight;
  std::vector<cplx> cf;
  double x_built = -1.0;
  bool capped = false;
  double tail_bound = 0.0;
};

struct YCase {
  double y = 0.0, wdy = 0.0, f = 0.0;
  double noise = 0.0;  // eta * y^{a_s} (0 under the SIR metric)
  double shift = 0.0;  // sub-floor interference mean, both branches
  BranchGrid gnl, gl;
  std::vector<double> frac;  // per-piece share of the serving intensity
  bool psi_ready = false;
  std::vector<double> s_up, psi_up, s_dn, psi_dn;
  CfTable table;
  bool direct_ready = false;  // lattice CDF for low-mass cases
  std::vector<double> cum;
  double bin_h = 0.0;
};

cplx cf_exponent(const YCase& c, double omega) {
  const cplx jc = kJ * omega;
  return exponent_over_grid(c.gnl, jc) + exponent_over_grid(c.gl, jc);
}

void ensure_psi(YCase& c) {
  if (c.psi_ready) return;
  for (int k = -4; k <= 9; ++k) {
    const double s = std::ldexp(1.0, k);
    c.s_up.push_back(s);
    c.psi_up.push_back(exponent_over_grid(c.gnl, s) + exponent_over_grid(c.gl, s));
  }
  for (int k = -4; k <= 34; ++k) {
    const double s = std::ldexp(1.0, k);
    c.s_dn.push_back(s);
    c.psi_dn.push_back(exponent_over_grid(c.gnl, -s) + exponent_over_grid(c.gl, -s));
  }
  c.psi_ready = true;
}

// Chernoff bound on Pr[sum >= x] (hi=true) or Pr[sum <= x] (hi=false)
double chernoff_bound(const YCase& c, double x, bool hi) {
  double best = 1.0;
  const auto& ss = hi ? c.s_up : c.s_dn;
  const auto& ps = hi ? c.psi_up : c.psi_dn;
  for (std::size_t k = 0; k < ss.size(); ++k) {
    const double e = hi ? ps[k] - ss[k] * x : ps[k] + ss[k] * x;
    if (std::isfinite(e) && e < 0.0) best = std::min(best, std::exp(e));
  }
  return best;
}

// When few interferers sit above the floor the CF of their sum never decays
// below e^{-mass} and frequency inversion cannot terminate, so low-mass cases
// are priced exactly on a value lattice instead: the intensity is binned with
// mass- and mean-preserving deposition and the compound Poisson law follows
// from the Panjer recursion.
constexpr double kDirectMassLimit = 150.0;
constexpr int kDirectBins = 4096;

// mass- and mean-preserving deposition of the piecewise-linear intensity onto
// value-lattice nodes k*h; mass beyond the lattice goes to `overflow`
void deposit_bins(const BranchGrid& grid, std::vector<double>& w, double h, double& overflow) {
  const int nb = static_cast<int>(w.size());
  const double cap = (nb - 1) * h;
  for (std::size_t j = 0; j + 1 < grid.v.size(); ++j) {
    const double va = grid.v[j], vb = grid.v[j + 1];
    const double slope = (grid.g[j + 1] - grid.g[j]) / (vb - va);
    if (va >= cap) {
      overflow += 0.5 * (vb - va) * (grid.g[j] + grid.g[j + 1]);
      continue;
    }
    if (vb > cap) {
      const double gc = grid.g[j] + slope * (cap - va);
      overflow += 0.5 * (vb - cap) * (gc + grid.g[j + 1]);
    }
    double a = va;
    const double vend = std::min(vb, cap);
    while (a < vend) {
      int idx = std::min(static_cast<int>(a / h), nb - 2);
      // rounding at a bin boundary must not stall the sweep
      if ((idx + 1) * h <= a) idx = std::min(idx + 1, nb - 2);
      const double b = ((idx + 1) * h <= a) ? vend : std::min(vend, (idx + 1) * h);
      const double ga = grid.g[j] + slope * (a - va), gb = grid.g[j] + slope * (b - va);
      const double m = 0.5 * (b - a) * (ga + gb);
      if (m > 0.0) {
        const double vm = 0.5 * (a + b), gm = 0.5 * (ga + gb);
        const double mu = (b - a) / 6.0 * (a * ga + 4.0 * vm * gm + b * gb) / m;
        const double fr = std::clamp(mu / h - idx, 0.0, 1.0);
        w[idx] += m * (1.0 - fr);
        w[idx + 1] += m * fr;
      }
      if (b >= vend) break;
      a = b;
    }
  }
}

// compound Poisson pmf on the lattice via the Panjer recursion
std::vector<double> panjer_pmf(const std::vector<double>& w) {
  const int nb = static_cast<int>(w.size());
  double mass = 0.0;
  for (double v : w) mass += v;
  std::vector<double> p(nb, 0.0);
  p[0] = std::exp(-(mass - w[0]));
  for (int j = 1; j < nb; ++j) {
    double s = 0.0;
    for (int k = 1; k <= j; ++k) s += k * w[k] * p[j - k];
    p[j] = s / j;
  }
  return p;
}

void build_direct(YCase& c) {
  const double h = 1.0 / (kDirectBins - 1);
  std::vector<double> w(kDirectBins, 0.0);
  double overflow = 0.0;  // atoms never exceed 1, stays 0
  deposit_bins(c.gnl, w, h, overflow);
  deposit_bins(c.gl, w, h, overflow);
  const std::vector<double> p = panjer_pmf(w);
  c.cum.resize(kDirectBins);
  double acc = 0.0;
  for (int j = 0; j < kDirectBins; ++j) {
    acc += p[j];
    c.cum[j] = std::min(acc, 1.0);
  }
  c.bin_h = h;
  c.direct_ready = true;
}

double direct_cdf(const YCase& c, double x) {
  if (x <= 0.0) return 0.0;
  const double pos = x / c.bin_h;
  const std::size_t idx = static_cast<std::size_t>(pos);
  if (idx + 1 >= c.cum.size()) return c.cum.back();
  const double fr = pos - static_cast<double>(idx);
  return c.cum[idx] + fr * (c.cum[idx + 1] - c.cum[idx]);
}

// Thresholds below the shared-lattice resolution: a single atom above x is
// already a violation (probability factor e^{-mass(>x)}), the remaining sub-x
// atoms get a lattice scaled to x. Exact decomposition, evaluated per query.
double direct_small_x(const YCase& c, double x, double& err) {
  const int nb = 1024;
  const double h = x / (nb - 1);
  std::vector<double> w(nb, 0.0);
  double m_big = 0.0;
  deposit_bins(c.gnl, w, h, m_big);
  deposit_bins(c.gl, w, h, m_big);
  const std::vector<double> p = panjer_pmf(w);
  double below = 0.0;
  for (int j = 0; j < nb; ++j) below += p[j];
  err = std::exp(-m_big) * (p[nb - 1] + p[nb - 2]);
  return std::exp(-m_big) * std::min(below, 1.0);
}

void build_cf_table(YCase& c, double x, const QuadratureSpec& quad) {
  CfTable t;
  const int sub = std::max(1, quad.omega_points / 16);
  const auto& xs = boost::math::quadrature::gauss<double, 16>::abscissa();
  const auto& ws = boost::math::quadrature::gauss<double, 16>::weights();
  double omega0 = 0.0, rate = c.gnl.m1 + c.gl.m1, prev_im = 0.0, prev_re = 0.0;
  int panels = 0;
  while (true) {
    double dw = 2.0 * kPi / (x + 1.3 * rate + 1e-300);
    if (omega0 + dw > quad.omega_max) dw = quad.omega_max - omega0;
    for (int p = 0; p < sub; ++p) {
      const double a = omega0 + dw * p / sub, h = 0.5 * dw / sub;
      const double mid = a + h;
      for (std::size_t i = 0; i < xs.size(); ++i)
        for (double sgn : {1.0, -1.0}) {
          if (xs[i] == 0.0 && sgn < 0) continue;
          const double w = mid + sgn * h * xs[i];
          t.node.push_back(w);
          t.weight.push_back(ws[i] * h);
          t.cf.push_back(std::exp(cf_exponent(c, w)));
        }
    }
    const cplx g_end = cf_exponent(c, omega0 + dw);
    rate = std::max(std::abs(std::imag(g_end) - prev_im) / dw, 0.25 * rate);
    prev_im = std::imag(g_end);
    const double re_end = std::real(g_end);
    // remainder of the inversion integral beyond the current frequency,
    // estimated from the local decay law Re G ~ -c omega^beta
    double tail = 1.0;
    if (re_end < prev_re && prev_re < 0.0 && omega0 > 0.0) {
      const double beta = std::log(re_end / prev_re) / std::log((omega0 + dw) / omega0);
      tail = 2.0 / kPi * std::exp(re_end) / std::max(std::min(beta, 2.0) * (-re_end), 0.05);
    }
    prev_re = re_end;
    omega0 += dw;
    ++panels;
    if (tail < 0.1 * quad.target_abs_tol && panels >= 4) {
      t.tail_bound = tail;
      break;
    }
    if (omega0 >= quad.omega_max * (1.0 - 1e-12)) {
      t.capped = true;
      t.tail_bound = std::min(tail, 1.0);
      break;
    }
  }
  t.x_built = x;
  c.table = std::move(t);
}

// (1 - e^{-j w x}) / (2 pi j w), stable as w x -> 0
cplx inversion_kernel(double omega, double x) {
  const cplx z = kJ * (omega * x);
  if (omega * x < 1e-3)
    return x / (2.0 * kPi) * (1.0 - z / 2.0 + z * z / 6.0);
  return (1.0 - std::exp(-z)) / (2.0 * kPi * kJ * omega);
}

// Pr[interference sum + noise < 1/T] for one serving-distance case
double p2_of_case(YCase& c, double inv_t, const QuadratureSpec& quad, double& err, bool& converged) {
  const double x = inv_t - c.noise - c.shift;
  err = 0.0;
  if (x <= 0.0) return 0.0;
  ensure_psi(c);
  const double eps = 0.1 * quad.target_abs_tol;
  const double ub = chernoff_bound(c, x, true);
  if (ub < eps) {
    err = 0.5 * ub;
    return 1.0 - 0.5 * ub;
  }
  const double lb = chernoff_bound(c, x, false);
  if (lb < eps) {
    err = 0.5 * lb;
    return 0.5 * lb;
  }
  if (c.gnl.mass + c.gl.mass <= kDirectMassLimit) {
    if (x < 32.0 / (kDirectBins - 1)) return direct_small_x(c, x, err);
    if (!c.direct_ready) build_direct(c);
    const double p = direct_cdf(c, x);
    // lattice resolution error scales with the local density
    err = 0.5 * std::abs(direct_cdf(c, x + c.bin_h) - direct_cdf(c, x - c.bin_h));
    return p;
  }
  if (c.table.x_built < x) build_cf_table(c, x, quad);
  if (c.table.capped && c.table.tail_bound > 0.5 * quad.target_abs_tol) converged = false;
  // split off the "no above-floor interferer" atom so the remaining CF is
  // integrable; the atom lands at the mean shift, i.e. below x
  const double atom = std::exp(-(c.gnl.mass + c.gl.mass));
  double sum = atom;
  for (std::size_t i = 0; i < c.table.node.size(); ++i) {
    const cplx k = inversion_kernel(c.table.node[i], x);
    sum += c.table.weight[i] * 2.0 * std::real(k * (c.table.cf[i] - atom));
  }
  err = c.table.tail_bound;
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace

void QuadratureSpec::check() const {
  if (!(omega_max > 0.0)) throw std::invalid_argument("QuadratureSpec: omega_max must be > 0");
  if (!(target_abs_tol > 0.0 && target_abs_tol <= 0.01))
    throw std::invalid_argument("QuadratureSpec: target_abs_tol must be in (0, 0.01]");
  if (omega_points < 16 || y_points < 16 || v_points < 16)
    throw std::invalid_argument("QuadratureSpec: node counts must be >= 16");
  if (!(y_quantile_lo > 0.0 && y_quantile_lo < y_quantile_hi && y_quantile_hi < 1.0))
    throw std::invalid_argument("QuadratureSpec: quantile range must satisfy 0 < lo < hi < 1");
  if (!(t_tail > 0.0 && t_tail <= 1e-2))
    throw std::invalid_argument("QuadratureSpec: t_tail must be in (0, 1e-2]");
}

struct CoverageEvaluator::Impl {
  NetworkConfig cfg;
  QuadratureSpec quad;
  EquivalentScenario sc;
  mutable std::vector<YCase> cases_nl, cases_l;
  double mass_covered = 0.0;

  Impl(const NetworkConfig& cfg_in, const QuadratureSpec& quad_in) : cfg(cfg_in), quad(quad_in) {
    quad.check();
    const auto problems = validate(cfg);
    if (!problems.empty()) throw std::invalid_argument("coverage: invalid config: " + problems.front());
    for (std::size_t n = 0; n < cfg.pathloss.pieces.size(); ++n)
      for (Branch u : {Branch::NL, Branch::L})
        if (!(cfg.alpha(n, u) > 2.0))
          throw std::invalid_argument(
              "coverage: all path-loss exponents must exceed 2 (interference tail integrability)");
    sc = build_scenario(cfg);
    const double g_lo = strongest_power_quantile(sc, quad.y_quantile_lo);
    const double g_hi = strongest_power_quantile(sc, quad.y_quantile_hi);
    for (Branch s : {Branch::NL, Branch::L}) build_branch(s, g_lo, g_hi);
    for (const auto& c : cases_nl) mass_covered += c.wdy * c.f;
    for (const auto& c : cases_l) mass_covered += c.wdy * c.f;
  }

  void build_branch(Branch s, double g_lo, double g_hi) {
    const double a_s = s == Branch::NL ? sc.alpha_nl : sc.alpha_l;
    const Branch o = other(s);
    const double a_o = o == Branch::NL ? sc.alpha_nl : sc.alpha_l;
    const double y_lo = std::pow(g_hi, -1.0 / a_s);
    const double y_hi = std::pow(g_lo, -1.0 / a_s);
    if (sc.pair(s).measure(y_hi) <= 0.0) return;  // branch holds no BSs in range
    auto& cases = s == Branch::NL ? cases_nl : cases_l;
    const int n = quad.y_points;
    const double du = std::log(y_hi / y_lo) / (n - 1);
    const bool multi = cfg.pathloss.pieces.size() > 1;
    for (int i = 0; i < n; ++i) {
      YCase c;
      c.y = y_lo * std::exp(du * i);
      const double lam_s = sc.pair(s).intensity(c.y);
      c.f = lam_s * std::exp(-sc.pair(s).measure(c.y) - sc.pair(o).measure(std::pow(c.y, a_s / a_o)));
      c.wdy = du * c.y * ((i == 0 || i == n - 1) ? 0.5 : 1.0);
      if (c.f * c.wdy <= 0.0) continue;
      c.noise = cfg.metric == Metric::SINR ? cfg.noise_w() * std::pow(c.y, a_s) : 0.0;
      c.gnl = build_grid(sc, s, Branch::NL, c.y, quad);
      c.gl = build_grid(sc, s, Branch::L, c.y, quad);
      c.shift = c.gnl.mtail + c.gl.mtail;
      if (multi) {
        // per-piece share of the serving intensity at y (finite difference of
        // each piece's restricted measure)
        const double h = std::max(1e-6 * c.y, 1e-9);
        double tot = 0.0;
        for (std::size_t m = 0; m < cfg.pathloss.pieces.size(); ++m) {
          const double d = (intensity_measure_numeric_piece(cfg, s, m, c.y + h) -
                            intensity_measure_numeric_piece(cfg, s, m, std::max(c.y - h, 0.0))) /
                           (c.y + h - std::max(c.y - h, 0.0));
          c.frac.push_back(std::max(d, 0.0));
          tot += c.frac.back();
        }
        for (auto& fr : c.frac) fr = tot > 0.0 ? fr / tot : 0.0;
      }
      cases.push_back(std::move(c));
    }
  }

  CoverageResult evaluate(double t_lin) const {
    if (!(t_lin > 0.0) || !std::isfinite(t_lin))
      throw std::invalid_argument("coverage: threshold must be finite and > 0");
    const double inv_t = 1.0 / t_lin;
    CoverageResult res;
    const std::size_t n_pieces = cfg.pathloss.pieces.size();
    if (n_pieces > 1) {
      res.piece_nl.assign(n_pieces, 0.0);
      res.piece_l.assign(n_pieces, 0.0);
    }
    for (Branch s : {Branch::NL, Branch::L}) {
      auto& cases = s == Branch::NL ? cases_nl : cases_l;
      double acc = 0.0;
      for (auto& c : cases) {
        double err = 0.0;
        const double p2 = p2_of_case(c, inv_t, quad, err, res.converged);
        const double w = c.wdy * c.f;
        acc += w * p2;
        res.est_error += w * err;
        if (n_pieces > 1)
          for (std::size_t m = 0; m < n_pieces; ++m)
            (s == Branch::NL ? res.piece_nl : res.piece_l)[m] += w * p2 * c.frac[m];
      }
      (s == Branch::NL ? res.p_nl : res.p_l) = acc;
    }
    res.p_c = res.p_nl + res.p_l;
    res.est_error += std::max(1.0 - mass_covered, 0.0) + quad.y_quantile_lo;
    if (!res.converged) res.note = "characteristic-function inversion hit the frequency cap";
    return res;
  }
};

CoverageEvaluator::CoverageEvaluator(const NetworkConfig& cfg, const QuadratureSpec& quad)
    : impl_(std::make_unique<Impl>(cfg, quad)) {}
CoverageEvaluator::~CoverageEvaluator() = default;
CoverageEvaluator::CoverageEvaluator(CoverageEvaluator&&) noexcept = default;
CoverageEvaluator& CoverageEvaluator::operator=(CoverageEvaluator&&) noexcept = default;

CoverageResult CoverageEvaluator::at_threshold_lin(double t_lin) const { return impl_->evaluate(t_lin); }
CoverageResult CoverageEvaluator::at_threshold_db(double t_db) const {
  return impl_->evaluate(db_to_linear(t_db));
}
const EquivalentScenario& CoverageEvaluator::scenario() const { return impl_->sc; }

CoverageResult coverage_probability(const NetworkConfig& cfg, const QuadratureSpec& quad) {
  return CoverageEvaluator(cfg, quad).at_threshold_lin(cfg.t_lin());
}

std::complex<double> charfunc_inv_sinr(const NetworkConfig& cfg, const EquivalentScenario& sc,
                                       double y, Branch branch, double omega,
                                       const QuadratureSpec& quad) {
  if (!(y > 0.0)) throw std::invalid_argument("charfunc_inv_sinr: y must be > 0");
  quad.check();
  YCase c;
  c.y = y;
  c.gnl = build_grid(sc, branch, Branch::NL, y, quad);
  c.gl = build_grid(sc, branch, Branch::L, y, quad);
  const double a_s = branch == Branch::NL ? sc.alpha_nl : sc.alpha_l;
  const double noise = cfg.metric == Metric::SINR ? cfg.noise_w() * std::pow(y, a_s) : 0.0;
  const double shift = c.gnl.mtail + c.gl.mtail;
  return std::exp(cf_exponent(c, omega) + kJ * (omega * (noise + shift)));
}

double asymptotic_coverage(double alpha_l, double t_lin) {
  if (!(alpha_l >= 2.0)) throw std::invalid_argument("asymptotic_coverage: alpha must be >= 2");
  if (!(t_lin >= 1.0))
    throw std::invalid_argument("asymptotic_coverage: threshold below 1 is outside the limit's domain");
  return alpha_l * std::sin(2.0 * kPi / alpha_l) / (2.0 * kPi * std::pow(t_lin, 2.0 / alpha_l));
}

double asymptotic_coverage_multislope(const NetworkConfig& cfg, double t_lin) {
  const auto& pieces = cfg.pathloss.pieces;
  for (std::size_t n = 0; n + 1 < pieces.size(); ++n)
    if (pieces[n].alpha_l > pieces[n + 1].alpha_l)
      throw std::invalid_argument(
          "asymptotic_coverage_multislope: LoS exponents must be nondecreasing across pieces");
  return asymptotic_coverage(pieces.front().alpha_l, t_lin);
}

double ase_upper_bound(const NetworkConfig& cfg, const QuadratureSpec& quad,
                       const std::function<double(double)>& p_c_fn) {
  quad.check();
  // w = ln(1+u) flattens the integrand: ASE = (lambda/ln2) * int p_c(e^w - 1) dw
  const double h = 0.125;
  const double w_max = 40.0;
  auto pc_at = [&](double w) {
    const double u = std::max(std::expm1(w), 1e-12);
    return std::clamp(p_c_fn(u), 0.0, 1.0);
  };
  double integral = 0.0;
  double f0 = pc_at(0.0);
  for (double w = 0.0; w < w_max; w += 2.0 * h) {
    const double f1 = pc_at(w + h), f2 = pc_at(w + 2.0 * h);
    integral += h / 3.0 * (f0 + 4.0 * f1 + f2);
    f0 = f2;
    if (w > 2.0 && f2 < 1e-8 * integral) break;  // spent tail
  }
  return cfg.lambda / std::log(2.0) * integral;
}

}  // namespace scn
