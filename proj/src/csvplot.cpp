#include "scn/csvplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scn {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string standard_comment(const NetworkConfig& cfg, std::uint64_t seed) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "config_hash=%016llx seed=%llu version=%s",
                static_cast<unsigned long long>(config_hash(cfg)),
                static_cast<unsigned long long>(seed), kToolVersion);
  return buf;
}

std::string render_csv(const CsvTable& table) {
  std::ostringstream os;
  os << "# " << table.comment << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::runtime_error("render_csv: row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
    os << "\n";
  }
  return os.str();
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << render_csv(table);
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool header_done = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (table.comment.empty()) table.comment = line.substr(line.find_first_not_of("# "));
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (!header_done) {
      table.columns = cells;
      header_done = true;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      if (c.empty()) {
        row.push_back(std::nan(""));
        continue;
      }
      std::size_t pos = 0;
      const double v = std::stod(c, &pos);
      if (pos != c.size()) throw std::runtime_error("parse_csv: bad numeric cell '" + c + "'");
      row.push_back(v);
    }
    while (row.size() < table.columns.size()) row.push_back(std::nan(""));
    if (row.size() != table.columns.size())
      throw std::runtime_error("parse_csv: row wider than the header");
    table.rows.push_back(std::move(row));
  }
  if (!header_done) throw std::runtime_error("parse_csv: no header row");
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_csv(os.str());
}

std::string render_svg_chart(const CsvTable& table, const std::string& title) {
  if (table.columns.size() < 2 || table.rows.empty())
    throw std::runtime_error("render_svg_chart: need an x column, one series, and data rows");
  const double W = 760, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (const auto& row : table.rows) {
    if (!(row[0] > 0.0)) throw std::runtime_error("render_svg_chart: x values must be positive (log axis)");
    x_lo = std::min(x_lo, row[0]);
    x_hi = std::max(x_hi, row[0]);
    for (std::size_t c = 1; c < row.size(); ++c)
      if (!std::isnan(row[c])) {
        y_lo = std::min(y_lo, row[c]);
        y_hi = std::max(y_hi, row[c]);
      }
  }
  if (y_lo > y_hi) throw std::runtime_error("render_svg_chart: no numeric series data");
  if (x_hi <= x_lo) x_hi = x_lo * 10.0;
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  const double lx_lo = std::log10(x_lo), lx_hi = std::log10(x_hi);
  auto px = [&](double x) { return ml + (std::log10(x) - lx_lo) / (lx_hi - lx_lo) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - (y - y_lo) / (y_hi - y_lo) * (H - mt - mb); };
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
     << "</text>\n";
  // axes
  os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
     << "\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(std::ceil(lx_lo)); d <= static_cast<int>(std::floor(lx_hi)); ++d) {
    const double x = px(std::pow(10.0, d));
    os << "<line x1=\"" << fmt(x) << "\" y1=\"" << H - mb << "\" x2=\"" << fmt(x) << "\" y2=\""
       << H - mb + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(x) << "\" y=\"" << H - mb + 20
       << "\" text-anchor=\"middle\" font-size=\"12\">1e" << d << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double y = y_lo + (y_hi - y_lo) * k / 4.0;
    os << "<text x=\"" << ml - 8 << "\" y=\"" << fmt(py(y) + 4)
       << "\" text-anchor=\"end\" font-size=\"12\">" << fmt(y) << "</text>\n";
  }
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"13\">"
     << table.columns[0] << "</text>\n";
  for (std::size_t c = 1; c < table.columns.size() && c <= 6; ++c) {
    const char* color = kColors[(c - 1) % 6];
    std::ostringstream pts;
    bool any = false;
    for (const auto& row : table.rows) {
      if (std::isnan(row[c])) continue;
      pts << (any ? " " : "") << fmt(px(row[0])) << "," << fmt(py(row[c]));
      any = true;
    }
    if (!any) continue;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
       << pts.str() << "\"/>\n";
    const double ly = mt + 16.0 * static_cast<double>(c);
    os << "<line x1=\"" << W - mr - 130 << "\" y1=\"" << fmt(ly) << "\" x2=\"" << W - mr - 105
       << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << W - mr - 100 << "\" y=\"" << fmt(ly + 4) << "\" font-size=\"12\">"
       << table.columns[c] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace scn
