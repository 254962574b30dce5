#include "fracvisco/harness/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>

#include "fracvisco/errors.hpp"

namespace fracvisco::harness {

std::vector<Scheme> schemes_of(SchemeChoice choice) {
  switch (choice) {
    case SchemeChoice::Fast: return {Scheme::Fast};
    case SchemeChoice::Direct: return {Scheme::Direct};
    case SchemeChoice::Both: return {Scheme::Fast, Scheme::Direct};
  }
  return {Scheme::Fast};
}

RunResult run_case(const RunConfig& cfg, double alpha, int n, int n_steps, Scheme scheme) {
  const auto problem = ManufacturedProblem::make(cfg.problem, cfg.material_for(alpha), cfg.final_time);
  const Mesh mesh = Mesh::build(cfg.mesh, n);
  const DofMap dofs = DofMap::build(mesh);
  RunOptions opts;
  opts.scheme = scheme;
  opts.n_steps = n_steps;
  opts.q = cfg.q;
  if (n_steps > 0) opts.eps = cfg.eps_rule.eps_for(cfg.final_time / n_steps);
  return run(problem, mesh, dofs, opts);
}

namespace {

struct Job {
  double alpha;
  int n;
  int n_steps;
  Scheme scheme;
};

// Runs jobs with at most `workers` in flight; results keep job order.
std::vector<RunResult> run_jobs(const RunConfig& cfg, const std::vector<Job>& jobs, int workers,
                                std::ostream& log) {
  std::vector<RunResult> results(jobs.size());
  auto announce = [&](std::size_t i) {
    const Job& j = jobs[i];
    char line[160];
    std::snprintf(line, sizeof line, "  %-6s alpha=%.2f n=%-3d N=%-5d error=%.3e  n_exp=%zu  %.2fs\n",
                  std::string(to_string(j.scheme)).c_str(), j.alpha, j.n, j.n_steps,
                  results[i].error, results[i].n_exp, results[i].timings.total);
    log << line << std::flush;
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      results[i] = run_case(cfg, jobs[i].alpha, jobs[i].n, jobs[i].n_steps, jobs[i].scheme);
      announce(i);
    }
    return results;
  }
  for (std::size_t start = 0; start < jobs.size(); start += static_cast<std::size_t>(workers)) {
    const std::size_t stop = std::min(jobs.size(), start + static_cast<std::size_t>(workers));
    std::vector<std::future<RunResult>> pending;
    for (std::size_t i = start; i < stop; ++i) {
      const Job j = jobs[i];
      pending.push_back(std::async(std::launch::async, [&cfg, j] {
        return run_case(cfg, j.alpha, j.n, j.n_steps, j.scheme);
      }));
    }
    for (std::size_t i = start; i < stop; ++i) {
      results[i] = pending[i - start].get();
      announce(i);
    }
  }
  return results;
}

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream os(cfg.out_dir / name);
  if (!os) throw ConfigError("cannot write " + (cfg.out_dir / name).string());
  return os;
}

ConvergenceReport ladder(const RunConfig& cfg, const std::vector<Job>& jobs, std::ostream& log) {
  const auto results = run_jobs(cfg, jobs, cfg.jobs, log);
  ConvergenceReport report;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    ConvergenceRow row;
    row.mesh_kind = std::string(to_string(cfg.mesh));
    row.scheme = std::string(to_string(jobs[i].scheme));
    row.alpha = jobs[i].alpha;
    row.n = jobs[i].n;
    row.n_steps = jobs[i].n_steps;
    row.h_over_sqrt2 = 1.0 / jobs[i].n;
    row.dt = cfg.final_time / jobs[i].n_steps;
    row.error = results[i].error;
    row.n_exp = results[i].n_exp;
    report.rows.push_back(row);
  }
  report.compute_orders();
  return report;
}

}  // namespace

ConvergenceReport cmd_convergence_space(const RunConfig& cfg, std::ostream& log, bool write) {
  validate(cfg);
  std::vector<Job> jobs;
  for (Scheme s : schemes_of(cfg.scheme)) {
    for (double a : cfg.alphas) {
      for (int n : cfg.space_levels) jobs.push_back({a, n, n * n, s});
    }
  }
  log << "spatial ladder (" << to_string(cfg.problem) << ", " << to_string(cfg.mesh)
      << "), dt = h^2/2\n";
  ConvergenceReport report = ladder(cfg, jobs, log);
  print_convergence_table(log, report, "h/sqrt2");
  if (write) {
    auto os = open_output(cfg, "convergence_space.csv");
    write_convergence_csv(os, report);
  }
  return report;
}

ConvergenceReport cmd_convergence_time(const RunConfig& cfg, std::ostream& log, bool write) {
  validate(cfg);
  std::vector<Job> jobs;
  for (Scheme s : schemes_of(cfg.scheme)) {
    for (double a : cfg.alphas) {
      for (int steps : cfg.time_steps) jobs.push_back({a, cfg.time_mesh_n, steps, s});
    }
  }
  log << "temporal ladder (" << to_string(cfg.problem) << ", " << to_string(cfg.mesh)
      << "), n = " << cfg.time_mesh_n << "\n";
  ConvergenceReport report = ladder(cfg, jobs, log);
  print_convergence_table(log, report, "dt");
  if (write) {
    auto os = open_output(cfg, "convergence_time.csv");
    write_convergence_csv(os, report);
  }
  return report;
}

std::vector<BenchRow> cmd_bench(const RunConfig& cfg, std::ostream& log, bool write) {
  validate(cfg);
  const double alpha = cfg.alphas.front();
  const auto schemes = schemes_of(cfg.scheme);
  std::vector<BenchRow> rows;
  log << "scheme comparison, n = " << cfg.bench_mesh_n << ", alpha = " << alpha << "\n";
  for (Scheme s : schemes) {
    for (int w = 0; w < cfg.bench_warmup; ++w) {
      (void)run_case(cfg, alpha, cfg.bench_mesh_n, cfg.bench_steps.front(), s);
    }
    for (int steps : cfg.bench_steps) {
      const RunResult r = run_case(cfg, alpha, cfg.bench_mesh_n, steps, s);
      BenchRow row;
      row.scheme = std::string(to_string(s));
      row.n = cfg.bench_mesh_n;
      row.n_steps = steps;
      row.dt = cfg.final_time / steps;
      row.n_exp = r.n_exp;
      row.wall_time_total = r.timings.total;
      row.wall_time_history = r.timings.history;
      row.wall_time_solve = r.timings.solve;
      row.peak_history_bytes = r.peak_history_bytes;
      row.error = r.error;
      rows.push_back(row);
      char line[192];
      std::snprintf(line, sizeof line,
                    "  %-6s N=%-6d total=%.3fs history=%.3fs solve=%.3fs memory=%.3e B\n",
                    row.scheme.c_str(), steps, row.wall_time_total, row.wall_time_history,
                    row.wall_time_solve, static_cast<double>(row.peak_history_bytes));
      log << line << std::flush;
    }
  }
  if (write) {
    auto os = open_output(cfg, "bench.csv");
    write_bench_csv(os, rows);
    std::vector<PlotSeries> time_series, mem_series;
    for (Scheme s : schemes) {
      PlotSeries t{std::string(to_string(s)), {}, {}}, m{std::string(to_string(s)), {}, {}};
      for (const auto& r : rows) {
        if (r.scheme != to_string(s)) continue;
        t.x.push_back(r.n_steps);
        t.y.push_back(r.wall_time_total);
        m.x.push_back(r.n_steps);
        m.y.push_back(static_cast<double>(r.peak_history_bytes));
      }
      time_series.push_back(std::move(t));
      mem_series.push_back(std::move(m));
    }
    write_loglog_svg(cfg.out_dir / "bench_time.svg", "Wall time", "N (time steps)", "seconds",
                     time_series);
    write_loglog_svg(cfg.out_dir / "bench_memory.svg", "History memory", "N (time steps)",
                     "bytes", mem_series);
  }
  return rows;
}

soe::SoeApprox cmd_soe_table(double alpha, double eps, double q, double t_min, double t_max,
                             std::ostream& os) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  if (!(q > 1.0)) throw ConfigError("q must be > 1");
  if (!(t_min > 0.0 && t_max > t_min)) throw ConfigError("need 0 < t_min < t_max");
  const soe::SoeApprox s = soe::build_soe(alpha, eps, q, t_min, t_max);
  char line[128];
  std::snprintf(line, sizeof line, "# alpha=%g eps=%g q=%g range=[%g, %g]\n", alpha, eps, q,
                t_min, t_max);
  os << line << "# a b\n";
  for (std::size_t j = 0; j < s.size(); ++j) {
    std::snprintf(line, sizeof line, "%.17g %.17g\n", s.nodes[j], s.weights[j]);
    os << line;
  }
  std::snprintf(line, sizeof line, "# K=%d J=%d head_panels=%d n_exp=%zu max_deviation=%.3e\n",
                s.big_k, s.j_per_panel, s.head_panels, s.size(), s.eps_certified);
  os << line;
  std::snprintf(line, sizeof line, "certified <= %.1e\n", eps);
  os << line;
  return s;
}

std::vector<BenchRow> cmd_single_run(const RunConfig& cfg, std::ostream& log, bool write) {
  validate(cfg);
  const double alpha = cfg.alphas.front();
  std::vector<BenchRow> rows;
  std::vector<double> eps_cert;
  for (Scheme s : schemes_of(cfg.scheme)) {
    const RunResult r = run_case(cfg, alpha, cfg.run_n, cfg.run_steps, s);
    BenchRow row;
    row.scheme = std::string(to_string(s));
    row.n = cfg.run_n;
    row.n_steps = cfg.run_steps;
    row.dt = cfg.run_steps > 0 ? cfg.final_time / cfg.run_steps : 0.0;
    row.n_exp = r.n_exp;
    row.wall_time_total = r.timings.total;
    row.wall_time_history = r.timings.history;
    row.wall_time_solve = r.timings.solve;
    row.peak_history_bytes = r.peak_history_bytes;
    row.error = r.error;
    rows.push_back(row);
    eps_cert.push_back(r.eps_certified);
    char line[192];
    std::snprintf(line, sizeof line, "%s: error=%.6e n_exp=%zu total=%.3fs history=%.3fs\n",
                  row.scheme.c_str(), row.error, row.n_exp, row.wall_time_total,
                  row.wall_time_history);
    log << line;
  }
  if (write) {
    auto os = open_output(cfg, "single_run.csv");
    os << "scheme,problem,mesh_kind,alpha,n,n_steps,dt,n_exp,eps_certified,error,"
          "wall_time_total,wall_time_history,wall_time_solve,peak_history_bytes\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      os << r.scheme << ',' << to_string(cfg.problem) << ',' << to_string(cfg.mesh) << ','
         << sci(alpha) << ',' << r.n << ',' << r.n_steps << ',' << sci(r.dt) << ',' << r.n_exp
         << ',' << sci(eps_cert[i]) << ',' << sci(r.error) << ',' << sci(r.wall_time_total) << ','
         << sci(r.wall_time_history) << ',' << sci(r.wall_time_solve) << ','
         << r.peak_history_bytes << '\n';
    }
  }
  return rows;
}

}  // namespace fracvisco::harness
