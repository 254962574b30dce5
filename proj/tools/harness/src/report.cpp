#include "fracvisco/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace fracvisco::harness {

double observed_order(double coarse_error, double fine_error) {
  return std::log2(coarse_error / fine_error);
}

std::string sci(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", value);
  return buf;
}

void ConvergenceReport::compute_orders() {
  std::map<std::tuple<std::string, std::string, double>, double> last;
  for (auto& row : rows) {
    const auto key = std::make_tuple(row.mesh_kind, row.scheme, row.alpha);
    const auto it = last.find(key);
    if (it == last.end()) {
      row.order.reset();
    } else {
      row.order = observed_order(it->second, row.error);
    }
    last[key] = row.error;
  }
}

std::vector<ConvergenceRow> ConvergenceReport::series(double alpha,
                                                      const std::string& scheme) const {
  std::vector<ConvergenceRow> out;
  for (const auto& row : rows) {
    if (row.alpha == alpha && row.scheme == scheme) out.push_back(row);
  }
  return out;
}

void write_convergence_csv(std::ostream& os, const ConvergenceReport& report) {
  os << "mesh_kind,alpha,n,h_over_sqrt2,dt,error,order,scheme,n_steps,n_exp\n";
  for (const auto& r : report.rows) {
    os << r.mesh_kind << ',' << sci(r.alpha) << ',' << r.n << ',' << sci(r.h_over_sqrt2) << ','
       << sci(r.dt) << ',' << sci(r.error) << ',' << (r.order ? sci(*r.order) : std::string())
       << ',' << r.scheme << ',' << r.n_steps << ',' << r.n_exp << '\n';
  }
}

void print_convergence_table(std::ostream& os, const ConvergenceReport& report,
                             const std::string& param_label) {
  std::string current;
  for (const auto& r : report.rows) {
    std::ostringstream head;
    head << r.mesh_kind << " / " << r.scheme << " / alpha = " << r.alpha;
    if (head.str() != current) {
      current = head.str();
      os << '\n' << current << '\n';
      char line[96];
      std::snprintf(line, sizeof line, "  %-12s %-14s %s\n", param_label.c_str(), "Error", "Order");
      os << line;
    }
    const double param = param_label == "dt" ? r.dt : r.h_over_sqrt2;
    char line[96];
    if (r.order) {
      std::snprintf(line, sizeof line, "  1/%-10.0f %-14.3e %.2f\n", 1.0 / param, r.error, *r.order);
    } else {
      std::snprintf(line, sizeof line, "  1/%-10.0f %-14.3e --\n", 1.0 / param, r.error);
    }
    os << line;
  }
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "scheme,n,n_steps,dt,n_exp,wall_time_total,wall_time_history,wall_time_solve,"
        "peak_history_bytes,error\n";
  for (const auto& r : rows) {
    os << r.scheme << ',' << r.n << ',' << r.n_steps << ',' << sci(r.dt) << ',' << r.n_exp << ','
       << sci(r.wall_time_total) << ',' << sci(r.wall_time_history) << ','
       << sci(r.wall_time_solve) << ',' << r.peak_history_bytes << ',' << sci(r.error) << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable CsvTable::parse(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("csv: missing header");
  t.header = split_csv_line(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != t.header.size()) throw std::runtime_error("csv: ragged row");
    t.rows.push_back(std::move(cells));
  }
  return t;
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::runtime_error("csv: no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  return std::stod(rows.at(row).at(column(name)));
}

const std::string& CsvTable::text(std::size_t row, const std::string& name) const {
  return rows.at(row).at(column(name));
}

void write_loglog_svg(const std::filesystem::path& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<PlotSeries>& series) {
  constexpr double width = 640, height = 440;
  constexpr double left = 80, right = 150, top = 40, bottom = 60;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!(xmin < std::numeric_limits<double>::infinity())) {
    xmin = ymin = 1.0;
    xmax = ymax = 10.0;
  }
  // Snap to decades.
  const double lx0 = std::floor(std::log10(xmin)), lx1 = std::max(std::ceil(std::log10(xmax)), lx0 + 1);
  const double ly0 = std::floor(std::log10(ymin)), ly1 = std::max(std::ceil(std::log10(ymax)), ly0 + 1);
  const double pw = width - left - right, ph = height - top - bottom;
  auto px = [&](double x) { return left + (std::log10(x) - lx0) / (lx1 - lx0) * pw; };
  auto py = [&](double y) { return top + ph - (std::log10(y) - ly0) / (ly1 - ly0) * ph; };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << title << "</text>\n";
  for (double d = lx0; d <= lx1 + 1e-9; d += 1.0) {
    const double x = px(std::pow(10.0, d));
    os << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\"" << top + ph
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << x << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">1e"
       << static_cast<int>(d) << "</text>\n";
  }
  for (double d = ly0; d <= ly1 + 1e-9; d += 1.0) {
    const double y = py(std::pow(10.0, d));
    os << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << left + pw << "\" y2=\"" << y
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e"
       << static_cast<int>(d) << "</text>\n";
  }
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15
     << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  os << "<text transform=\"translate(20," << top + ph / 2
     << ") rotate(-90)\" text-anchor=\"middle\">" << y_label << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = colors[k % 5];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.x[i] > 0.0 && s.y[i] > 0.0) os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    os << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.x[i] > 0.0 && s.y[i] > 0.0) {
        os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"3\" fill=\""
           << color << "\"/>\n";
      }
    }
    const double ly = top + 20 + 20.0 * static_cast<double>(k);
    os << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 40
       << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << left + pw + 46 << "\" y=\"" << ly + 4 << "\">" << s.name << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace fracvisco::harness
