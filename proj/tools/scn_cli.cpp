#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scn/coverage.hpp"
#include "scn/csvplot.hpp"
#include "scn/equivalence.hpp"
#include "scn/montecarlo.hpp"
#include "scn/regimes.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitBracket = 4;

bool log_enabled() {
  const char* v = std::getenv("SCN_LOG");
  return v != nullptr && *v != '\0';
}

void log_line(const std::string& msg) {
  if (log_enabled()) std::cerr << "[scn] " << msg << "\n";
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  std::size_t trials = 10000;
  std::string engine = "analytic";
  std::string metric;
  std::string association;
  double epsilon = 100.0;
  int threads = 1;
  std::string lambdas;  // comma list overriding the default sweep
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "scenario file (INI)");
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--seed", o.seed, "master RNG seed");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials per point");
  cmd->add_option("--engine", o.engine, "analytic | mc | both")
      ->check(CLI::IsMember({"analytic", "mc", "both"}));
  cmd->add_option("--metric", o.metric, "sinr | sir")->check(CLI::IsMember({"sinr", "sir"}));
  cmd->add_option("--association", o.association, "sirp | sarp")
      ->check(CLI::IsMember({"sirp", "sarp"}));
  cmd->add_option("--epsilon", o.epsilon, "IDR/ILR interference-to-noise ratio");
  cmd->add_option("--threads", o.threads, "worker threads");
  cmd->add_option("--lambdas", o.lambdas, "comma-separated BS densities (BSs/km^2)");
}

scn::NetworkConfig load(const CommonOpts& o) {
  scn::NetworkConfig cfg =
      o.config_path.empty() ? scn::default_scenario() : scn::load_config(o.config_path);
  if (o.metric == "sinr") cfg.metric = scn::Metric::SINR;
  if (o.metric == "sir") cfg.metric = scn::Metric::SIR;
  if (o.association == "sirp") cfg.association = scn::Association::SIRP;
  if (o.association == "sarp") cfg.association = scn::Association::SARP;
  const auto problems = scn::validate(cfg);
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw scn::ConfigError(msg);
  }
  return cfg;
}

std::vector<double> sweep_values(const CommonOpts& o) {
  std::vector<double> vals;
  if (!o.lambdas.empty()) {
    std::istringstream in(o.lambdas);
    std::string tok;
    while (std::getline(in, tok, ',')) vals.push_back(std::stod(tok));
  } else {
    const int n = 20;
    for (int i = 0; i < n; ++i)
      vals.push_back(0.1 * std::pow(1e4 / 0.1, double(i) / (n - 1)));
  }
  for (double v : vals)
    if (!(v > 0.0)) throw scn::ConfigError("sweep densities must be positive");
  if (!std::is_sorted(vals.begin(), vals.end()))
    throw scn::ConfigError("sweep densities must be ascending");
  return vals;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int cmd_coverage(const CommonOpts& o) {
  const scn::NetworkConfig base = load(o);
  const bool analytic = o.engine != "mc", mc = o.engine != "analytic";
  scn::CsvTable table;
  table.comment = scn::standard_comment(base, o.seed);
  table.columns = {"lambda", "p_c_analytic", "p_c_mc", "ci_lo", "ci_hi", "p_c_nl", "p_c_l"};
  bool tol_failure = false;
  for (double lambda : sweep_values(o)) {
    scn::NetworkConfig cfg = base;
    cfg.lambda = lambda;
    std::vector<double> row(7, kNaN);
    row[0] = lambda;
    if (analytic) {
      const auto res = scn::coverage_probability(cfg);
      row[1] = res.p_c;
      row[5] = res.p_nl;
      row[6] = res.p_l;
      if (!res.converged) tol_failure = true;
    }
    if (mc) {
      const auto est = scn::estimate_coverage(cfg, std::max<std::size_t>(o.trials, 1000),
                                              o.seed, o.threads);
      row[2] = est.p;
      row[3] = est.ci_lo;
      row[4] = est.ci_hi;
    }
    table.rows.push_back(row);
    log_line("coverage lambda=" + std::to_string(lambda) + " done");
  }
  scn::write_csv(o.out_dir + "/coverage.csv", table);
  if (tol_failure) {
    std::cerr << "numeric tolerance not met on at least one sweep point\n";
    return kExitNumeric;
  }
  return 0;
}

int cmd_cdf(const CommonOpts& o) {
  const scn::NetworkConfig cfg = load(o);
  const auto sc = scn::build_scenario(cfg);
  const double g_lo = scn::strongest_power_quantile(sc, 1e-3);
  const double g_hi = scn::strongest_power_quantile(sc, 0.999);
  const int n = 60;
  std::vector<double> gamma;
  for (int i = 0; i < n; ++i) gamma.push_back(g_lo * std::pow(g_hi / g_lo, double(i) / (n - 1)));
  std::vector<double> empirical;
  if (o.engine != "analytic")
    empirical = scn::estimate_strongest_power_cdf(cfg, o.trials, gamma, o.seed, o.threads);
  scn::CsvTable table;
  table.comment = scn::standard_comment(cfg, o.seed);
  table.columns = {"gamma_dbm", "cdf_analytic", "cdf_empirical"};
  for (int i = 0; i < n; ++i)
    table.rows.push_back({scn::watts_to_dbm(gamma[i]), scn::strongest_power_cdf(sc, gamma[i]),
                          empirical.empty() ? kNaN : empirical[i]});
  scn::write_csv(o.out_dir + "/cdf.csv", table);
  return 0;
}

int cmd_ase(const CommonOpts& o) {
  const scn::NetworkConfig base = load(o);
  scn::CsvTable table;
  table.comment = scn::standard_comment(base, o.seed);
  table.columns = {"lambda", "ase_upper"};
  const scn::QuadratureSpec quad;
  for (double lambda : sweep_values(o)) {
    scn::NetworkConfig cfg = base;
    cfg.lambda = lambda;
    const scn::CoverageEvaluator eval(cfg, quad);
    const double ase = scn::ase_upper_bound(
        cfg, quad, [&](double u) { return eval.at_threshold_lin(u).p_c; });
    table.rows.push_back({lambda, ase});
    log_line("ase lambda=" + std::to_string(lambda) + " done");
  }
  scn::write_csv(o.out_dir + "/ase.csv", table);
  return 0;
}

int cmd_regimes(const CommonOpts& o) {
  const scn::NetworkConfig cfg = load(o);
  scn::SolverOptions opts;
  opts.seed = o.seed;
  opts.trials = std::max<std::size_t>(o.trials, 10000);
  opts.threads = o.threads;
  const auto rep = scn::regime_report(cfg, o.epsilon, opts);
  std::cout << scn::render_report(rep);
  scn::CsvTable table;
  table.comment = scn::standard_comment(cfg, o.seed);
  table.columns = {"lambda_nlr_sdr", "lambda_sdr_idr", "lambda_idr_ilr", "epsilon", "p_c_max"};
  table.rows.push_back(
      {rep.lambda_nlr_sdr, rep.lambda_sdr_idr, rep.lambda_idr_ilr, rep.epsilon, rep.p_c_max});
  scn::write_csv(o.out_dir + "/regimes.csv", table);
  if (rep.diag_nlr_sdr.bracket_failed || rep.diag_idr_ilr.bracket_failed) {
    std::cerr << "solver bracket failure\n";
    return kExitBracket;
  }
  return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& title, const CommonOpts& o) {
  const scn::CsvTable table = scn::read_csv(csv_path);
  if (table.columns.size() < 2 || table.rows.empty())
    throw scn::ConfigError("plot: CSV needs an x column, one series, and data rows");
  const std::string svg = scn::render_svg_chart(table, title.empty() ? csv_path : title);
  const std::string out = o.out_dir + "/plot.svg";
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("plot: cannot open " + out);
  f << svg;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"small-cell coverage and ASE calculator"};
  app.require_subcommand(1);
  CommonOpts o;
  std::string plot_csv, plot_title;

  auto* c_cov = app.add_subcommand("coverage", "coverage probability vs BS density");
  add_common(c_cov, o);
  auto* c_cdf = app.add_subcommand("cdf", "strongest received power CDF");
  add_common(c_cdf, o);
  auto* c_ase = app.add_subcommand("ase", "area spectral efficiency bound vs density");
  add_common(c_ase, o);
  auto* c_reg = app.add_subcommand("regimes", "density regime boundaries");
  add_common(c_reg, o);
  auto* c_plot = app.add_subcommand("plot", "render a CSV as an SVG line chart");
  add_common(c_plot, o);
  c_plot->add_option("csv", plot_csv, "input CSV path")->required();
  c_plot->add_option("--title", plot_title, "chart title");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_cov->parsed()) return cmd_coverage(o);
    if (c_cdf->parsed()) return cmd_cdf(o);
    if (c_ase->parsed()) return cmd_ase(o);
    if (c_reg->parsed()) return cmd_regimes(o);
    if (c_plot->parsed()) return cmd_plot(plot_csv, plot_title, o);
  } catch (const scn::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
