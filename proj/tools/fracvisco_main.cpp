// fracvisco: convergence ladders, scheme comparison and SOE tables for the
// fractional viscoelastic velocity model.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 numerical failure.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "fracvisco/errors.hpp"
#include "fracvisco/harness/commands.hpp"
#include "fracvisco/harness/config.hpp"

namespace fh = fracvisco::harness;

namespace {

struct CommonFlags {
  std::string config;
  std::string problem;
  std::string mesh;
  std::string alpha;
  std::string out;
  std::string scheme;
  std::string eps_rule;
  int jobs = 0;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config, "INI-style run configuration");
  sub->add_option("--problem", f.problem, "ex61 or ex62");
  sub->add_option("--mesh", f.mesh, "tri or quad");
  sub->add_option("--alpha", f.alpha, "fractional order (comma list for ladders)");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--scheme", f.scheme, "fast, direct or both");
  sub->add_option("--eps-rule", f.eps_rule, "dt-over-10 or fixed:F");
  sub->add_option("--jobs", f.jobs, "parallel ladder levels");
}

// Config file first, then explicit flags.
fh::RunConfig resolve(const CommonFlags& f) {
  fh::RunConfig cfg;
  if (!f.config.empty()) fh::load_config_file(f.config, cfg);
  try {
    if (!f.problem.empty()) cfg.problem = fracvisco::parse_problem(f.problem);
    if (!f.mesh.empty()) cfg.mesh = fracvisco::parse_mesh_kind(f.mesh);
  } catch (const fracvisco::InvalidArgument& e) {
    throw fh::ConfigError(e.what());
  }
  if (!f.alpha.empty()) cfg.alphas = fh::parse_double_list(f.alpha);
  if (!f.out.empty()) cfg.out_dir = f.out;
  if (!f.scheme.empty()) cfg.scheme = fh::parse_scheme_choice(f.scheme);
  if (!f.eps_rule.empty()) cfg.eps_rule = fh::EpsRule::parse(f.eps_rule);
  if (f.jobs > 0) cfg.jobs = f.jobs;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fast SOE time stepping for fractional viscoelastic wave propagation"};
  app.require_subcommand(1);

  CommonFlags space_flags, time_flags, bench_flags, run_flags;
  std::string space_levels, time_steps, bench_steps;
  int time_n = 0, bench_n = 0, run_n = 0, run_steps = -1, bench_warmup = -1;

  auto* space = app.add_subcommand("convergence-space", "spatial ladder with dt = h^2/2");
  add_common(space, space_flags);
  space->add_option("--levels", space_levels, "cells per side, e.g. 4,8,16,32,64");

  auto* time = app.add_subcommand("convergence-time", "temporal ladder on a fixed mesh");
  add_common(time, time_flags);
  time->add_option("--n", time_n, "cells per side (default 64)");
  time->add_option("--steps", time_steps, "step counts, e.g. 5,10,20,40,80");

  auto* bench = app.add_subcommand("bench", "wall time and history memory, fast vs direct");
  add_common(bench, bench_flags);
  bench->add_option("--n", bench_n, "cells per side (default 64)");
  bench->add_option("--steps", bench_steps, "step counts to sweep");
  bench->add_option("--warmup", bench_warmup, "discarded warmup runs per scheme");

  double soe_alpha = 0.5, soe_eps = 1e-6, soe_q = 10.0, soe_tmin = 1e-4, soe_tmax = 2.0;
  auto* table = app.add_subcommand("soe-table", "build and certify an SOE approximation");
  table->add_option("--alpha", soe_alpha, "fractional order in (0, 1)");
  table->add_option("--eps", soe_eps, "target accuracy");
  table->add_option("--q", soe_q, "panel ratio");
  table->add_option("--t-min", soe_tmin, "certification range start (normalized time)");
  table->add_option("--t-max", soe_tmax, "certification range end (normalized time)");

  auto* single = app.add_subcommand("single-run", "one run per selected scheme");
  add_common(single, run_flags);
  single->add_option("--n", run_n, "cells per side");
  single->add_option("--steps", run_steps, "number of time steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*space) {
      auto cfg = resolve(space_flags);
      if (!space_levels.empty()) cfg.space_levels = fh::parse_int_list(space_levels);
      fh::cmd_convergence_space(cfg, std::cout);
    } else if (*time) {
      auto cfg = resolve(time_flags);
      if (time_n > 0) cfg.time_mesh_n = time_n;
      if (!time_steps.empty()) cfg.time_steps = fh::parse_int_list(time_steps);
      fh::cmd_convergence_time(cfg, std::cout);
    } else if (*bench) {
      auto cfg = resolve(bench_flags);
      if (bench_flags.scheme.empty()) cfg.scheme = fh::SchemeChoice::Both;
      if (bench_n > 0) cfg.bench_mesh_n = bench_n;
      if (!bench_steps.empty()) cfg.bench_steps = fh::parse_int_list(bench_steps);
      if (bench_warmup >= 0) cfg.bench_warmup = bench_warmup;
      fh::cmd_bench(cfg, std::cout);
    } else if (*table) {
      fh::cmd_soe_table(soe_alpha, soe_eps, soe_q, soe_tmin, soe_tmax, std::cout);
    } else if (*single) {
      auto cfg = resolve(run_flags);
      if (run_n > 0) cfg.run_n = run_n;
      if (run_steps >= 0) cfg.run_steps = run_steps;
      fh::cmd_single_run(cfg, std::cout);
    }
  } catch (const fh::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const fracvisco::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const fracvisco::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
