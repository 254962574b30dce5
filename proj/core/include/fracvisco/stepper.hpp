#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fracvisco/fem.hpp"
#include "fracvisco/mesh.hpp"
#include "fracvisco/problems.hpp"
#include "fracvisco/soe.hpp"
#include "fracvisco/sparse.hpp"

namespace fracvisco {

/// Fast: memory variables. Direct: exact kernel integrated over each step
/// against the stored history. Theta: the fast scheme written as an explicit
/// convolution with theta weights (same SOE, stored history; for checking).
enum class Scheme { Fast, Direct, Theta };

std::string_view to_string(Scheme scheme);

/// theta_i = sum_j (b_j tau / a_j) (e^{-(i-1) dt a_j / tau} - e^{-i dt a_j / tau}),
/// i = 1..count (returned at index i - 1).
std::vector<double> theta_weights(const soe::SoeApprox& soe, double tau_sigma, double dt,
                                  int count);

/// w_m = int_{(m-1) dt}^{m dt} beta(s) ds, m = 1..count (at index m - 1), from
/// the closed-form antiderivative. The weight of v^i at step n is w_{n-i}.
std::vector<double> direct_weights(double alpha, double tau_sigma, double dt, int count);

/// H_j, j = 1..N_exp, one dof-vector each, stored contiguously.
class MemoryState {
 public:
  MemoryState(const soe::SoeApprox& soe, double tau_sigma, double dt, std::size_t n_dofs);

  /// H_j <- decay_j H_j + gain_j v_prev.
  void advance(std::span<const double> v_prev);
  /// out = sum_j H_j.
  void sum(std::span<double> out) const;
  /// advance followed by sum in one sweep.
  void advance_and_sum(std::span<const double> v_prev, std::span<double> out);

  [[nodiscard]] std::size_t size() const { return decay_.size(); }
  [[nodiscard]] std::size_t n_dofs() const { return n_dofs_; }
  [[nodiscard]] std::span<const double> h(std::size_t j) const {
    return {data_.data() + j * n_dofs_, n_dofs_};
  }
  [[nodiscard]] const std::vector<double>& decay() const { return decay_; }
  [[nodiscard]] const std::vector<double>& gain() const { return gain_; }
  [[nodiscard]] std::size_t bytes() const { return data_.size() * sizeof(double); }

 private:
  std::size_t n_dofs_;
  std::vector<double> decay_;
  std::vector<double> gain_;
  std::vector<double> data_;
};

/// Mass, a-form and b-form matrices plus the constant system matrix
/// M / dt + A for one mesh, material and step.
struct System {
  SparseMatrix mass;
  SparseMatrix a_mat;
  SparseMatrix b_mat;
  SparseMatrix lhs;
  double dt = 0.0;

  static System build(const Mesh& mesh, const DofMap& dofs, const Material& material, double dt);
};

/// Solves (M/dt + A) v^n = M v_prev / dt + B (sum_j H_j) + load, with mem
/// already advanced to level n. `history_sum` is scratch of size n_dofs.
/// The CG iterate starts from v_prev.
Vector step_fast(const System& sys, const MemoryState& mem, std::span<const double> v_prev,
                 std::span<const double> load, double cg_rel_tol = 1e-10);

/// Solves (M/dt + A) v^n = M v^{n-1} / dt + B sum_i weights[n-i-1] v^i + load
/// over history = v^0..v^{n-1}.
Vector step_direct(const System& sys, std::span<const Vector> history,
                   std::span<const double> load, std::span<const double> weights,
                   double cg_rel_tol = 1e-10);

struct RunOptions {
  Scheme scheme = Scheme::Fast;
  int n_steps = 1;
  /// SOE tolerance; <= 0 selects dt / 10.
  double eps = 0.0;
  double q = 10.0;
  double cg_rel_tol = 1e-10;
  bool record_trajectory = false;
  /// Use this approximation instead of building one (Fast and Theta).
  std::optional<soe::SoeApprox> soe;
};

struct RunTimings {
  double total = 0.0;
  double setup = 0.0;    // matrices, SOE, initial projection, load factors
  double load = 0.0;
  double history = 0.0;  // memory update or convolution sum
  double solve = 0.0;
};

struct RunResult {
  Vector final;
  double error = 0.0;  // L2 error against the exact field at T
  RunTimings timings;
  std::size_t peak_history_bytes = 0;
  std::size_t n_exp = 0;
  double eps_certified = 0.0;
  std::size_t cg_iterations = 0;
  std::vector<Vector> trajectory;  // v^0..v^N when requested
};

/// Full time loop on [0, T] with dt = T / n_steps: Ritz-projected initial
/// data, load at t_n, history update, CG solve with a warm start.
RunResult run(const ManufacturedProblem& problem, const Mesh& mesh, const DofMap& dofs,
              const RunOptions& opts);

}  // namespace fracvisco
