#include "scn/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace scn {

BlockageModel BlockageModel::step(double d) {
  BlockageModel b;
  b.kind = Kind::Step;
  b.d = d;
  return b;
}

BlockageModel BlockageModel::neg_exp(double kappa) {
  BlockageModel b;
  b.kind = Kind::NegExp;
  b.kappa = kappa;
  return b;
}

double p_los(const BlockageModel& model, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("p_los: distance must be >= 0");
  switch (model.kind) {
    case BlockageModel::Kind::Step: return r <= model.d ? 1.0 : 0.0;
    case BlockageModel::Kind::NegExp: return std::exp(-model.kappa * r);
  }
  throw std::logic_error("p_los: unreachable");
}

double p_nlos(const BlockageModel& model, double r) {
  // complement computed as 1 - p_los so the two sum to 1 exactly
  return 1.0 - p_los(model, r);
}

double p_los_primitive(const BlockageModel& model, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("p_los_primitive: distance must be >= 0");
  switch (model.kind) {
    case BlockageModel::Kind::Step: {
      const double x = std::min(r, model.d);
      return 0.5 * x * x;
    }
    case BlockageModel::Kind::NegExp: {
      const double k = model.kappa;
      if (k == 0.0) return 0.5 * r * r;
      // int_0^r s e^{-ks} ds; -expm1 keeps precision for small k*r
      const double kr = k * r;
      return (-std::expm1(-kr) - kr * std::exp(-kr)) / (k * k);
    }
  }
  throw std::logic_error("p_los_primitive: unreachable");
}

std::size_t PathLossModel::piece_index(double r) const {
  std::size_t n = 0;
  while (n < breakpoints.size() && r > breakpoints[n]) ++n;
  return n;
}

double PathLossModel::lower_edge(std::size_t n) const {
  return n == 0 ? 0.0 : breakpoints[n - 1];
}

double PathLossModel::upper_edge(std::size_t n) const {
  return n < breakpoints.size() ? breakpoints[n] : std::numeric_limits<double>::infinity();
}

double NetworkConfig::b_lin(std::size_t piece, Branch u) const {
  const auto& p = pathloss.pieces.at(piece);
  const double a_db = u == Branch::NL ? p.a_db_nl : p.a_db_l;
  return pt_w() * std::pow(10.0, -a_db / 10.0);
}

double NetworkConfig::alpha(std::size_t piece, Branch u) const {
  const auto& p = pathloss.pieces.at(piece);
  return u == Branch::NL ? p.alpha_nl : p.alpha_l;
}

NetworkConfig default_scenario() {
  NetworkConfig cfg;
  cfg.lambda = 10.0;
  cfg.pt_dbm = 30.0;
  cfg.noise_dbm = -95.0;
  cfg.threshold_db = 0.0;
  cfg.pathloss.pieces = {PathLossPiece{30.8, 2.7, 4.28, 2.42}};
  cfg.blockage = BlockageModel::step(250.0);
  cfg.gain_nl = GainDistribution::lognormal(4.0);
  cfg.gain_l = GainDistribution::lognormal(3.0);
  cfg.association = Association::SARP;
  cfg.metric = Metric::SINR;
  return cfg;
}

std::vector<std::string> validate(const NetworkConfig& cfg) {
  std::vector<std::string> errs;
  auto bad = [&](const std::string& field, const std::string& msg) {
    errs.push_back(field + ": " + msg);
  };

  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda)) bad("network.lambda", "must be positive");
  if (!std::isfinite(cfg.pt_dbm) || !std::isfinite(dbm_to_watts(cfg.pt_dbm)) || dbm_to_watts(cfg.pt_dbm) <= 0.0)
    bad("network.pt_dbm", "must convert to a finite positive power");
  if (!std::isfinite(cfg.noise_dbm) || !std::isfinite(dbm_to_watts(cfg.noise_dbm)))
    bad("network.noise_dbm", "must convert to a finite positive power");
  if (!std::isfinite(cfg.threshold_db) || !(db_to_linear(cfg.threshold_db) > 0.0))
    bad("network.threshold_db", "linear threshold must be positive");

  if (cfg.pathloss.pieces.empty()) bad("pathloss", "needs at least one piece");
  if (cfg.pathloss.breakpoints.size() + 1 != cfg.pathloss.pieces.size() && !cfg.pathloss.pieces.empty())
    bad("pathloss", "breakpoint count must be pieces-1");
  for (std::size_t i = 0; i + 1 < cfg.pathloss.breakpoints.size(); ++i)
    if (!(cfg.pathloss.breakpoints[i] < cfg.pathloss.breakpoints[i + 1])) {
      bad("pathloss.breakpoints", "not strictly increasing");
      break;
    }
  for (double b : cfg.pathloss.breakpoints)
    if (!(b > 0.0) || !std::isfinite(b)) {
      bad("pathloss.breakpoints", "must be finite and positive");
      break;
    }
  for (std::size_t n = 0; n < cfg.pathloss.pieces.size(); ++n) {
    const auto& p = cfg.pathloss.pieces[n];
    const std::string at = "pathloss.piece." + std::to_string(n + 1);
    if (!(p.alpha_nl > 0.0) || !(p.alpha_l > 0.0)) bad(at, "alpha must be positive for both branches");
    if (!std::isfinite(p.a_db_nl) || !std::isfinite(p.a_db_l)) bad(at, "a_db must be finite");
  }

  switch (cfg.blockage.kind) {
    case BlockageModel::Kind::Step:
      if (!(cfg.blockage.d > 0.0)) bad("blockage.d", "must be positive (inf allowed)");
      break;
    case BlockageModel::Kind::NegExp:
      if (!(cfg.blockage.kappa >= 0.0) || !std::isfinite(cfg.blockage.kappa))
        bad("blockage.kappa", "must be a finite value >= 0");
      break;
  }

  for (Branch u : {Branch::NL, Branch::L}) {
    const std::string at = u == Branch::NL ? "channel.nl" : "channel.l";
    try {
      cfg.gain(u).check();
    } catch (const std::exception& e) {
      bad(at, e.what());
      continue;
    }
    // association mode must match the gain family
    const bool fading = cfg.gain(u).is_fading();
    if (cfg.association == Association::SIRP && !fading &&
        cfg.gain(u).kind != GainDistribution::Kind::Deterministic)
      bad(at, "SIRP association requires a multi-path fading gain");
    if (cfg.association == Association::SARP && fading)
      bad(at, "SARP association requires a shadowing gain");
    // the transformed processes are only locally finite when E[H^{2/alpha}]
    // exists for every piece
    for (std::size_t n = 0; n < cfg.pathloss.pieces.size(); ++n) {
      try {
        const double mom = fractional_moment(cfg.gain(u), 2.0 / cfg.alpha(n, u));
        if (!std::isfinite(mom)) bad(at, "E[H^(2/alpha)] is not finite");
      } catch (const std::exception& e) {
        bad(at, std::string("moment condition check failed: ") + e.what());
      }
    }
  }
  return errs;
}

// ---------------------------------------------------------------------------
// INI-style reader

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct IniData {
  // section -> key -> value, preserving duplicate-key detection
  std::map<std::string, std::map<std::string, std::string>> sections;
};

IniData parse_ini(const std::string& text, const std::string& origin, std::vector<std::string>& errs) {
  IniData ini;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        errs.push_back(origin + ":" + std::to_string(lineno) + ": malformed section header");
        continue;
      }
      section = lower(trim(line.substr(1, line.size() - 2)));
      ini.sections[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      errs.push_back(origin + ":" + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string val = trim(line.substr(eq + 1));
    if (section.empty()) {
      errs.push_back(origin + ":" + std::to_string(lineno) + ": key outside any section");
      continue;
    }
    if (!ini.sections[section].emplace(key, val).second)
      errs.push_back(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return ini;
}

class SectionReader {
 public:
  SectionReader(const std::string& name, const std::map<std::string, std::string>& kv,
                std::vector<std::string>& errs)
      : name_(name), kv_(kv), errs_(errs) {}

  std::optional<std::string> raw(const std::string& key) {
    seen_.push_back(key);
    auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    return it->second;
  }

  double number(const std::string& key, double fallback) {
    auto v = raw(key);
    if (!v) return fallback;
    return parse_number(key, *v);
  }

  double required_number(const std::string& key) {
    auto v = raw(key);
    if (!v) {
      errs_.push_back(name_ + "." + key + ": missing required key");
      return 0.0;
    }
    return parse_number(key, *v);
  }

  std::string word(const std::string& key, const std::string& fallback) {
    auto v = raw(key);
    return v ? lower(*v) : fallback;
  }

  void finish() {
    for (const auto& [k, v] : kv_)
      if (std::find(seen_.begin(), seen_.end(), k) == seen_.end())
        errs_.push_back(name_ + "." + k + ": unknown key");
  }

 private:
  double parse_number(const std::string& key, const std::string& v) {
    if (lower(v) == "inf") return std::numeric_limits<double>::infinity();
    try {
      std::size_t pos = 0;
      const double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("trailing characters");
      return x;
    } catch (const std::exception&) {
      errs_.push_back(name_ + "." + key + ": cannot parse '" + v + "' as a number");
      return 0.0;
    }
  }

  std::string name_;
  const std::map<std::string, std::string>& kv_;
  std::vector<std::string>& errs_;
  std::vector<std::string> seen_;
};

GainDistribution parse_gain(const std::string& section, const std::map<std::string, std::string>& kv,
                            std::vector<std::string>& errs) {
  SectionReader r(section, kv, errs);
  const std::string type = r.word("type", "deterministic");
  GainDistribution g;
  if (type == "deterministic") {
    g = GainDistribution::deterministic();
  } else if (type == "lognormal") {
    g = GainDistribution::lognormal(r.required_number("sigma_db"));
  } else if (type == "rayleigh") {
    g = GainDistribution::rayleigh();
  } else if (type == "nakagami") {
    g = GainDistribution::nakagami(r.required_number("m"));
  } else if (type == "rician") {
    g = GainDistribution::rician(r.required_number("k_db"));
  } else if (type == "composite") {
    g = GainDistribution::composite(r.number("mu_s", 0.0), r.required_number("sigma_s"));
  } else {
    errs.push_back(section + ".type: unknown gain type '" + type + "'");
  }
  r.finish();
  return g;
}

}  // namespace

NetworkConfig parse_config(const std::string& text, const std::string& origin) {
  std::vector<std::string> errs;
  IniData ini = parse_ini(text, origin, errs);
  NetworkConfig cfg = default_scenario();

  for (const auto& [sec, kv] : ini.sections) {
    if (sec == "network") {
      SectionReader r(sec, kv, errs);
      cfg.lambda = r.number("lambda", cfg.lambda);
      cfg.pt_dbm = r.number("pt_dbm", cfg.pt_dbm);
      cfg.noise_dbm = r.number("noise_dbm", cfg.noise_dbm);
      cfg.threshold_db = r.number("threshold_db", cfg.threshold_db);
      const std::string assoc = r.word("association", "sarp");
      if (assoc == "sirp") cfg.association = Association::SIRP;
      else if (assoc == "sarp") cfg.association = Association::SARP;
      else errs.push_back("network.association: expected sirp or sarp");
      const std::string metric = r.word("metric", "sinr");
      if (metric == "sinr") cfg.metric = Metric::SINR;
      else if (metric == "sir") cfg.metric = Metric::SIR;
      else errs.push_back("network.metric: expected sinr or sir");
      r.finish();
    } else if (sec == "blockage") {
      SectionReader r(sec, kv, errs);
      const std::string type = r.word("type", "step");
      if (type == "step") cfg.blockage = BlockageModel::step(r.number("d", 250.0));
      else if (type == "negexp") cfg.blockage = BlockageModel::neg_exp(r.required_number("kappa"));
      else errs.push_back("blockage.type: expected step or negexp");
      r.finish();
    } else if (sec == "channel.nl") {
      cfg.gain_nl = parse_gain(sec, kv, errs);
    } else if (sec == "channel.l") {
      cfg.gain_l = parse_gain(sec, kv, errs);
    } else if (sec.rfind("pathloss.piece.", 0) == 0) {
      // handled in order below
    } else {
      errs.push_back(sec + ": unknown section");
    }
  }

  // path loss pieces must be numbered 1..N contiguously
  std::vector<std::pair<int, const std::map<std::string, std::string>*>> pieces;
  for (const auto& [sec, kv] : ini.sections) {
    if (sec.rfind("pathloss.piece.", 0) != 0) continue;
    try {
      pieces.emplace_back(std::stoi(sec.substr(15)), &kv);
    } catch (const std::exception&) {
      errs.push_back(sec + ": piece index must be an integer");
    }
  }
  if (!pieces.empty()) {
    std::sort(pieces.begin(), pieces.end());
    cfg.pathloss.pieces.clear();
    cfg.pathloss.breakpoints.clear();
    int expect = 1;
    for (auto& [idx, kv] : pieces) {
      const std::string at = "pathloss.piece." + std::to_string(idx);
      if (idx != expect++) errs.push_back(at + ": pieces must be numbered 1..N without gaps");
      SectionReader r(at, *kv, errs);
      PathLossPiece p;
      p.a_db_nl = r.required_number("a_db_nl");
      p.a_db_l = r.required_number("a_db_l");
      p.alpha_nl = r.required_number("alpha_nl");
      p.alpha_l = r.required_number("alpha_l");
      cfg.pathloss.pieces.push_back(p);
      // every piece except the last needs its upper edge; "inf" marks the
      // unbounded last piece explicitly and is the default when omitted
      const double up = r.number("breakpoint", std::numeric_limits<double>::infinity());
      if (&*kv != pieces.back().second) {
        if (!std::isfinite(up)) errs.push_back(at + ".breakpoint: required for all but the last piece");
        else cfg.pathloss.breakpoints.push_back(up);
      } else if (std::isfinite(up)) {
        errs.push_back(at + ".breakpoint: last piece must be unbounded (omit or use inf)");
      }
      r.finish();
    }
  }

  if (errs.empty())
    for (auto& e : validate(cfg)) errs.push_back(e);
  if (!errs.empty()) {
    std::string msg = "invalid configuration (" + origin + "):";
    for (auto& e : errs) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  return cfg;
}

NetworkConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string render_config(const NetworkConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "[network]\n"
     << "lambda = " << cfg.lambda << "\n"
     << "pt_dbm = " << cfg.pt_dbm << "\n"
     << "noise_dbm = " << cfg.noise_dbm << "\n"
     << "threshold_db = " << cfg.threshold_db << "\n"
     << "association = " << (cfg.association == Association::SIRP ? "sirp" : "sarp") << "\n"
     << "metric = " << (cfg.metric == Metric::SINR ? "sinr" : "sir") << "\n";
  for (std::size_t n = 0; n < cfg.pathloss.pieces.size(); ++n) {
    const auto& p = cfg.pathloss.pieces[n];
    os << "[pathloss.piece." << n + 1 << "]\n"
       << "a_db_nl = " << p.a_db_nl << "\n"
       << "a_db_l = " << p.a_db_l << "\n"
       << "alpha_nl = " << p.alpha_nl << "\n"
       << "alpha_l = " << p.alpha_l << "\n";
    if (n < cfg.pathloss.breakpoints.size())
      os << "breakpoint = " << cfg.pathloss.breakpoints[n] << "\n";
  }
  os << "[blockage]\n";
  if (cfg.blockage.kind == BlockageModel::Kind::Step) {
    os << "type = step\n";
    if (std::isfinite(cfg.blockage.d)) os << "d = " << cfg.blockage.d << "\n";
    else os << "d = inf\n";
  } else {
    os << "type = negexp\nkappa = " << cfg.blockage.kappa << "\n";
  }
  for (Branch u : {Branch::NL, Branch::L}) {
    const auto& g = cfg.gain(u);
    os << (u == Branch::NL ? "[channel.nl]\n" : "[channel.l]\n");
    switch (g.kind) {
      case GainDistribution::Kind::Deterministic: os << "type = deterministic\n"; break;
      case GainDistribution::Kind::LogNormal: os << "type = lognormal\nsigma_db = " << g.sigma_db << "\n"; break;
      case GainDistribution::Kind::Rayleigh: os << "type = rayleigh\n"; break;
      case GainDistribution::Kind::NakagamiM: os << "type = nakagami\nm = " << g.m << "\n"; break;
      case GainDistribution::Kind::RicianApprox: os << "type = rician\nk_db = " << g.k_db << "\n"; break;
      case GainDistribution::Kind::CompositeRayleighLogNormal:
        os << "type = composite\nmu_s = " << g.mu_s << "\nsigma_s = " << g.sigma_s << "\n";
        break;
    }
  }
  return os.str();
}

std::uint64_t config_hash(const NetworkConfig& cfg) {
  // FNV-1a over the canonical rendering
  const std::string s = render_config(cfg);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace scn
