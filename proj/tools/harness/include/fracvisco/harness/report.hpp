#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fracvisco::harness {

/// One ladder level. `param` is h/sqrt(2) for spatial ladders and dt for
/// temporal ones; `order` is log2(error_{k-1} / error_k), absent on the first
/// level.
struct ConvergenceRow {
  std::string mesh_kind;
  std::string scheme;
  double alpha = 0.0;
  int n = 0;
  int n_steps = 0;
  double h_over_sqrt2 = 0.0;
  double dt = 0.0;
  double error = 0.0;
  std::optional<double> order;
  std::size_t n_exp = 0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;

  /// Fills `order` per (mesh_kind, scheme, alpha) group in row order.
  void compute_orders();
  /// Rows of one alpha (and scheme), in ladder order.
  [[nodiscard]] std::vector<ConvergenceRow> series(double alpha,
                                                   const std::string& scheme = "fast") const;
};

/// log2(coarse / fine).
double observed_order(double coarse_error, double fine_error);

/// Scientific notation with 6 significant digits.
std::string sci(double value);

/// mesh_kind,alpha,n,h_over_sqrt2,dt,error,order,scheme,n_steps,n_exp
void write_convergence_csv(std::ostream& os, const ConvergenceReport& report);

/// Human-readable "Error / Order" table, one block per alpha.
void print_convergence_table(std::ostream& os, const ConvergenceReport& report,
                             const std::string& param_label);

struct BenchRow {
  std::string scheme;
  int n = 0;
  int n_steps = 0;
  double dt = 0.0;
  std::size_t n_exp = 0;
  double wall_time_total = 0.0;
  double wall_time_history = 0.0;
  double wall_time_solve = 0.0;
  std::size_t peak_history_bytes = 0;
  double error = 0.0;
};

/// scheme,n,n_steps,dt,n_exp,wall_time_total,wall_time_history,wall_time_solve,peak_history_bytes,error
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

/// Minimal CSV reader: header plus rows, addressed by column name.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  static CsvTable parse(std::istream& is);
  [[nodiscard]] std::size_t column(const std::string& name) const;
  [[nodiscard]] double number(std::size_t row, const std::string& name) const;
  [[nodiscard]] const std::string& text(std::size_t row, const std::string& name) const;
};

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Self-contained SVG line plot with logarithmic axes.
void write_loglog_svg(const std::filesystem::path& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<PlotSeries>& series);

}  // namespace fracvisco::harness
