#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fracvisco/fem.hpp"
#include "fracvisco/mesh.hpp"
#include "fracvisco/problems.hpp"

namespace fracvisco::harness {

/// Thrown for malformed configuration or flag values (exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SchemeChoice { Fast, Direct, Both };
SchemeChoice parse_scheme_choice(std::string_view text);
std::string_view to_string(SchemeChoice choice);

/// SOE tolerance rule: dt / 10, or a fixed value.
struct EpsRule {
  bool fixed = false;
  double value = 0.0;

  /// "dt-over-10" or "fixed:F".
  static EpsRule parse(std::string_view text);
  [[nodiscard]] double eps_for(double dt) const { return fixed ? value : dt / 10.0; }
  [[nodiscard]] std::string str() const;
};

struct RunConfig {
  ProblemName problem = ProblemName::Ex61;
  MeshKind mesh = MeshKind::Quadrilateral;
  std::vector<double> alphas{0.5};
  double final_time = 1.0;
  Material material = Material::experiment(0.5);  // alpha is taken from `alphas`

  double q = 10.0;
  EpsRule eps_rule;
  SchemeChoice scheme = SchemeChoice::Fast;

  // Spatial ladder: cells per side, dt = h^2 / 2 = 1 / n^2 (times T).
  std::vector<int> space_levels{4, 8, 16, 32, 64};
  // Temporal ladder on a fixed mesh.
  int time_mesh_n = 64;
  std::vector<int> time_steps{5, 10, 20, 40, 80};
  // Scheme comparison sweep.
  int bench_mesh_n = 64;
  std::vector<int> bench_steps{250, 500, 1000, 2000};
  int bench_warmup = 1;
  // single-run
  int run_n = 16;
  int run_steps = 64;

  int jobs = 1;
  std::filesystem::path out_dir = "out";

  [[nodiscard]] Material material_for(double alpha) const;
};

/// Reads an INI-style file (sections, key = value, ';' or '#' comments) into
/// cfg, leaving keys that are absent untouched. Keys:
///
///   [problem]  name, mesh, final_time
///   [material] alpha (list), rho, tau_sigma, tau_eps, mu_c, lambda_c, mu_d, lambda_d
///   [soe]      q, eps_rule
///   [space]    levels (list)
///   [time]     n, steps (list)
///   [bench]    n, steps (list), warmup
///   [run]      scheme, n, steps, jobs
///   [output]   dir
///
/// Lists are separated by commas and/or spaces.
void load_config_file(const std::filesystem::path& path, RunConfig& cfg);

/// Same, from text (for tests).
void load_config_text(std::string_view text, RunConfig& cfg);

std::vector<double> parse_double_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

/// Throws ConfigError on inconsistent values (empty ladders, alpha outside
/// (0, 1), non-positive parameters, ...).
void validate(const RunConfig& cfg);

}  // namespace fracvisco::harness
