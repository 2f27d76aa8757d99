#include "scn/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace scn {

namespace {

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

void deploy_into(const NetworkConfig& cfg, double window_radius, Rng& rng, Deployment& dep) {
  dep.window_radius = window_radius;
  dep.bs.clear();
  const double mean = cfg.lambda_m2() * kPi * window_radius * window_radius;
  std::poisson_distribution<long> count(mean);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const long n = count(rng);
  dep.bs.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    Deployment::Bs bs;
    do {
      bs.r = window_radius * std::sqrt(uni(rng));
    } while (bs.r == 0.0);  // singular path loss at the origin: resample
    const double ang = 2.0 * kPi * uni(rng);
    bs.x = bs.r * std::cos(ang);
    bs.y = bs.r * std::sin(ang);
    bs.branch = uni(rng) < p_los(cfg.blockage, bs.r) ? Branch::L : Branch::NL;
    bs.gain = sample(cfg.gain(bs.branch), rng);
    dep.bs.push_back(bs);
  }
}

// runs trials in deterministic fixed-size blocks; fn(block_index, record)
template <typename PerTrial>
void run_trials(const NetworkConfig& cfg, std::size_t trials, std::uint64_t seed, int threads,
                PerTrial&& fn) {
  const double radius = default_window_radius(cfg);
  constexpr std::size_t kBlock = 512;
  const std::size_t blocks = (trials + kBlock - 1) / kBlock;
  auto run_block = [&](std::size_t b, Deployment& dep) {
    const std::size_t lo = b * kBlock, hi = std::min(lo + kBlock, trials);
    for (std::size_t t = lo; t < hi; ++t) {
      Rng rng = trial_rng(seed, t);
      deploy_into(cfg, radius, rng, dep);
      fn(b, associate(cfg, dep));
    }
  };
  threads = std::max(threads, 1);
  if (threads == 1 || blocks <= 1) {
    Deployment dep;
    for (std::size_t b = 0; b < blocks; ++b) run_block(b, dep);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      Deployment dep;
      for (std::size_t b = static_cast<std::size_t>(w); b < blocks; b += threads) run_block(b, dep);
    });
  for (auto& th : pool) th.join();
}

double wilson_lo(double p, double n, bool upper) {
  const double z = 1.959963984540054;
  const double denom = 1.0 + z * z / n;
  const double center = p + z * z / (2.0 * n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
  return (center + (upper ? half : -half)) / denom;
}

}  // namespace

double default_window_radius(const NetworkConfig& cfg) {
  const double r300 = std::sqrt(300.0 / (cfg.lambda_m2() * kPi));
  return std::max(2000.0, r300);
}

Deployment deploy(const NetworkConfig& cfg, double window_radius, Rng& rng) {
  if (!(window_radius > 0.0)) throw std::invalid_argument("deploy: window_radius must be > 0");
  Deployment dep;
  deploy_into(cfg, window_radius, rng, dep);
  return dep;
}

double received_power(const NetworkConfig& cfg, Branch branch, double r, double gain) {
  if (!(r > 0.0)) throw std::invalid_argument("received_power: distance must be > 0");
  const std::size_t n = cfg.pathloss.piece_index(r);
  return cfg.b_lin(n, branch) * gain * std::pow(r, -cfg.alpha(n, branch));
}

TrialRecord associate(const NetworkConfig& cfg, const Deployment& dep) {
  TrialRecord rec;
  if (dep.bs.empty()) {
    rec.empty = true;
    return rec;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < dep.bs.size(); ++i) {
    const auto& bs = dep.bs[i];
    const double p = received_power(cfg, bs.branch, bs.r, bs.gain);
    total += p;
    if (p > rec.serving_power) {
      rec.serving_power = p;
      rec.serving_index = static_cast<std::ptrdiff_t>(i);
      rec.serving_branch = bs.branch;
    }
  }
  rec.interference = std::max(total - rec.serving_power, 0.0);
  rec.sinr = rec.serving_power / (cfg.noise_w() + rec.interference);
  rec.sir = rec.interference > 0.0 ? rec.serving_power / rec.interference
                                   : std::numeric_limits<double>::infinity();
  return rec;
}

CoverageEstimate estimate_coverage(const NetworkConfig& cfg, std::size_t trials, std::uint64_t seed,
                                   int threads) {
  if (trials < 1000) throw std::invalid_argument("estimate_coverage: need at least 1000 trials");
  const double t_lin = cfg.t_lin();
  const std::size_t blocks = (trials + 511) / 512;
  std::vector<std::size_t> covered(blocks, 0), empties(blocks, 0);
  run_trials(cfg, trials, seed, threads, [&](std::size_t b, const TrialRecord& rec) {
    if (rec.empty) {
      ++empties[b];
      return;
    }
    const double metric = cfg.metric == Metric::SINR ? rec.sinr : rec.sir;
    if (metric > t_lin) ++covered[b];
  });
  std::size_t n_cov = 0, n_empty = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    n_cov += covered[b];
    n_empty += empties[b];
  }
  CoverageEstimate est;
  est.trials = trials;
  est.p = static_cast<double>(n_cov) / trials;
  est.ci_lo = wilson_lo(est.p, static_cast<double>(trials), false);
  est.ci_hi = wilson_lo(est.p, static_cast<double>(trials), true);
  est.empty_fraction = static_cast<double>(n_empty) / trials;
  return est;
}

std::vector<double> estimate_strongest_power_cdf(const NetworkConfig& cfg, std::size_t trials,
                                                 const std::vector<double>& gamma_w,
                                                 std::uint64_t seed, int threads) {
  if (trials == 0) throw std::invalid_argument("estimate_strongest_power_cdf: trials must be > 0");
  std::vector<double> maxp(trials, 0.0);  // empty deployment: max power 0
  const double radius = default_window_radius(cfg);
  constexpr std::size_t kBlock = 512;
  const std::size_t blocks = (trials + kBlock - 1) / kBlock;
  auto run_block = [&](std::size_t b, Deployment& dep) {
    const std::size_t lo = b * kBlock, hi = std::min(lo + kBlock, trials);
    for (std::size_t t = lo; t < hi; ++t) {
      Rng rng = trial_rng(seed, t);
      deploy_into(cfg, radius, rng, dep);
      double m = 0.0;
      for (const auto& bs : dep.bs)
        m = std::max(m, received_power(cfg, bs.branch, bs.r, bs.gain));
      maxp[t] = m;
    }
  };
  if (threads <= 1 || blocks <= 1) {
    Deployment dep;
    for (std::size_t b = 0; b < blocks; ++b) run_block(b, dep);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        Deployment dep;
        for (std::size_t b = static_cast<std::size_t>(w); b < blocks; b += threads) run_block(b, dep);
      });
    for (auto& th : pool) th.join();
  }
  std::sort(maxp.begin(), maxp.end());
  std::vector<double> cdf;
  cdf.reserve(gamma_w.size());
  for (double g : gamma_w) {
    const auto it = std::upper_bound(maxp.begin(), maxp.end(), g);
    cdf.push_back(static_cast<double>(it - maxp.begin()) / trials);
  }
  return cdf;
}

InterferenceEstimate mean_interference(const NetworkConfig& cfg, std::size_t trials,
                                       std::uint64_t seed, int threads) {
  if (trials < 10000) throw std::invalid_argument("mean_interference: need at least 10000 trials");
  const std::size_t blocks = (trials + 511) / 512;
  std::vector<double> sums(blocks, 0.0), sq_sums(blocks, 0.0);
  std::vector<double> log_sums(blocks, 0.0), log_sq(blocks, 0.0);
  std::vector<std::size_t> zeros(blocks, 0);
  run_trials(cfg, trials, seed, threads, [&](std::size_t b, const TrialRecord& rec) {
    sums[b] += rec.interference;
    sq_sums[b] += rec.interference * rec.interference;
    if (rec.interference > 0.0) {
      const double l = std::log(rec.interference);
      log_sums[b] += l;
      log_sq[b] += l * l;
    } else {
      ++zeros[b];
    }
  });
  double s = 0.0, sq = 0.0, ls = 0.0, lsq = 0.0;
  std::size_t n_zero = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    s += sums[b];
    sq += sq_sums[b];
    ls += log_sums[b];
    lsq += log_sq[b];
    n_zero += zeros[b];
  }
  InterferenceEstimate est;
  const double n = static_cast<double>(trials);
  est.mean = s / n;
  const double var = std::max(sq / n - est.mean * est.mean, 0.0);
  est.std_error = std::sqrt(var / n);
  est.zero_fraction = static_cast<double>(n_zero) / n;
  const double nl = n - static_cast<double>(n_zero);
  if (nl > 0.0) {
    const double lm = ls / nl;
    est.log_mean = std::exp(lm);
    const double lvar = std::max(lsq / nl - lm * lm, 0.0);
    est.log_se = std::sqrt(lvar / nl);
  }
  return est;
}

}  // namespace scn
