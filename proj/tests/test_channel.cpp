#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "scn/channel.hpp"
#include "scn/units.hpp"

using namespace scn;

namespace {

// sample-mean check helper
template <typename F>
double mc_mean(const GainDistribution& g, std::size_t n, F&& f) {
  Rng rng(12345);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += f(sample(g, rng));
  return acc / n;
}

}  // namespace

TEST_CASE("distribution factories and checks") {
  CHECK(GainDistribution::deterministic().kind == GainDistribution::Kind::Deterministic);
  CHECK(!GainDistribution::lognormal(4.0).is_fading());
  CHECK(GainDistribution::rayleigh().is_fading());
  CHECK_THROWS_AS(GainDistribution::nakagami(0.2).check(), std::invalid_argument);
  CHECK_NOTHROW(GainDistribution::nakagami(0.5).check());
  CHECK_THROWS_AS(GainDistribution::composite(0.0, -1.0).check(), std::invalid_argument);
  // a strong Rician line-of-sight component concentrates the gain: K=10 dB
  // maps to shape 121/21
  CHECK(GainDistribution::rician(10.0).nakagami_m_effective() ==
        doctest::Approx(121.0 / 21.0).epsilon(1e-12));
  CHECK(GainDistribution::rayleigh().nakagami_m_effective() == 1.0);
  // K -> 0 degenerates to Rayleigh
  CHECK(GainDistribution::rician(-60.0).nakagami_m_effective() == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("unit mean") {
  // every gain law used by the model is normalized to E[H] = 1, except the
  // composite whose lognormal factor is specified on the log scale directly
  for (const auto& g : {GainDistribution::lognormal(4.0), GainDistribution::lognormal(3.0),
                        GainDistribution::rayleigh(), GainDistribution::nakagami(2.5),
                        GainDistribution::rician(10.0)}) {
    if (g.kind == GainDistribution::Kind::LogNormal) {
      const double s = std::log(10.0) / 10.0 * g.sigma_db;
      CHECK(fractional_moment(g, 1.0) == doctest::Approx(std::exp(s * s / 2.0)).epsilon(1e-12));
    } else {
      CHECK(fractional_moment(g, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("fractional moments match sampling") {
  const double p = 2.0 / 4.28;
  for (const auto& g : {GainDistribution::lognormal(4.0), GainDistribution::rayleigh(),
                        GainDistribution::nakagami(121.0 / 21.0),
                        GainDistribution::composite(0.3, 0.6)}) {
    const double analytic = fractional_moment(g, p);
    const double sampled = mc_mean(g, 400000, [&](double h) { return std::pow(h, p); });
    CHECK(sampled == doctest::Approx(analytic).epsilon(0.01));
  }
  CHECK_THROWS_AS(fractional_moment(GainDistribution::rayleigh(), 0.0), std::invalid_argument);
}

TEST_CASE("cdf, density and quantile are consistent") {
  for (const auto& g : {GainDistribution::lognormal(4.0), GainDistribution::rayleigh(),
                        GainDistribution::nakagami(3.0), GainDistribution::rician(10.0)}) {
    for (double u : {0.05, 0.3, 0.5, 0.9, 0.999}) {
      CHECK(has_quantile(g));
      const double h = quantile(g, u);
      CHECK(cdf(g, h) == doctest::Approx(u).epsilon(1e-9));
    }
    for (double h : {0.2, 1.0, 3.0}) {
      const double eps = 1e-5 * h;
      const double num = (cdf(g, h + eps) - cdf(g, h - eps)) / (2 * eps);
      CHECK(num == doctest::Approx(density(g, h)).epsilon(1e-5));
    }
  }
  // composite gain has no closed quantile; cdf/density still agree
  const auto comp = GainDistribution::composite(0.0, 0.5);
  CHECK(!has_quantile(comp));
  CHECK_THROWS_AS(quantile(comp, 0.5), std::invalid_argument);
  for (double h : {0.3, 1.0, 4.0}) {
    const double eps = 1e-4 * h;
    const double num = (cdf(comp, h + eps) - cdf(comp, h - eps)) / (2 * eps);
    CHECK(num == doctest::Approx(density(comp, h)).epsilon(1e-4));
  }
  // and the empirical CDF matches
  Rng rng(7);
  std::size_t below = 0;
  const std::size_t n = 200000;
  for (std::size_t i = 0; i < n; ++i)
    if (sample(comp, rng) <= 1.0) ++below;
  CHECK(static_cast<double>(below) / n == doctest::Approx(cdf(comp, 1.0)).epsilon(0.01));
}

TEST_CASE("deterministic gain") {
  const auto g = GainDistribution::deterministic();
  Rng rng(1);
  CHECK(sample(g, rng) == 1.0);
  CHECK(fractional_moment(g, 0.7) == 1.0);
  CHECK(cdf(g, 0.5) == 0.0);
  CHECK(cdf(g, 1.5) == 1.0);
  CHECK(quantile(g, 0.3) == 1.0);
  CHECK_THROWS_AS(density(g, 1.0), std::invalid_argument);
}

TEST_CASE("lognormal sampling matches its dB parameterization") {
  // log10 statistics of the sampled gain: std = sigma_db / 10
  const auto g = GainDistribution::lognormal(4.0);
  Rng rng(99);
  std::vector<double> logs;
  for (int i = 0; i < 200000; ++i) logs.push_back(10.0 * std::log10(sample(g, rng)));
  const double mean = std::accumulate(logs.begin(), logs.end(), 0.0) / logs.size();
  double var = 0.0;
  for (double v : logs) var += (v - mean) * (v - mean);
  var /= logs.size();
  CHECK(mean == doctest::Approx(0.0).epsilon(0.05));
  CHECK(std::sqrt(var) == doctest::Approx(4.0).epsilon(0.01));
}
