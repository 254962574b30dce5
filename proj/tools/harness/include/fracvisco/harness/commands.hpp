#pragma once

#include <iosfwd>
#include <vector>

#include "fracvisco/harness/config.hpp"
#include "fracvisco/harness/report.hpp"
#include "fracvisco/soe.hpp"
#include "fracvisco/stepper.hpp"

namespace fracvisco::harness {

/// Schemes selected by the config; convergence ladders default to fast.
std::vector<Scheme> schemes_of(SchemeChoice choice);

/// One run on an n x n mesh with n_steps steps.
RunResult run_case(const RunConfig& cfg, double alpha, int n, int n_steps, Scheme scheme);

/// Spatial ladder, dt = T / n^2. Writes convergence_space.csv under out_dir
/// when `write` is set.
ConvergenceReport cmd_convergence_space(const RunConfig& cfg, std::ostream& log,
                                        bool write = true);

/// Temporal ladder on the fixed time mesh. Writes convergence_time.csv.
ConvergenceReport cmd_convergence_time(const RunConfig& cfg, std::ostream& log,
                                       bool write = true);

/// Both schemes (or the selected one) over the step sweep, serially, after
/// bench_warmup discarded runs. Writes bench.csv, bench_time.svg and
/// bench_memory.svg.
std::vector<BenchRow> cmd_bench(const RunConfig& cfg, std::ostream& log, bool write = true);

/// Builds and certifies an SOE over [t_min, t_max]; prints "a b" lines (17
/// significant digits) followed by a summary and the certification line.
soe::SoeApprox cmd_soe_table(double alpha, double eps, double q, double t_min, double t_max,
                             std::ostream& os);

/// One run per selected scheme; writes single_run.csv.
std::vector<BenchRow> cmd_single_run(const RunConfig& cfg, std::ostream& log, bool write = true);

}  // namespace fracvisco::harness
