#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "fracvisco/fem.hpp"
#include "fracvisco/mesh.hpp"
#include "fracvisco/soe.hpp"
#include "fracvisco/sparse.hpp"

namespace fracvisco {

enum class ProblemName { Ex61, Ex62 };

std::string_view to_string(ProblemName name);
/// "ex61" or "ex62".
ProblemName parse_problem(std::string_view text);

/// Separable manufactured velocity v(x, t) = e^{-t} V(x), V = 0 on the boundary.
///   ex61: V = sin(pi x) sin(pi y) (1, 1)
///   ex62: V = (p(x) p'(y), p(y) p'(x)) with p(s) = s^4 - 2 s^3 + s^2
struct ManufacturedProblem {
  ProblemName name = ProblemName::Ex61;
  VectorField value;
  GradientField gradient;
  Material material;
  double final_time = 1.0;

  static ManufacturedProblem make(ProblemName name, const Material& material,
                                  double final_time = 1.0);

  [[nodiscard]] static double time_factor(double t);             // e^{-t}
  [[nodiscard]] static double time_factor_derivative(double t);  // -e^{-t}

  /// Exact velocity at time t.
  [[nodiscard]] VectorField exact_at(double t) const;
};

/// I(t) = int_0^t beta(t - s) e^{-s} ds by adaptive Gauss-Kronrod (abs tol
/// 1e-11) with reference kernel values.
double conv_factor(double alpha, double tau_sigma, double t);

/// I(k dt) for k = 0..count, accumulated panel by panel through
/// I(t) = e^{-t} int_0^t beta(u) e^{u} du.
std::vector<double> conv_factor_grid(double alpha, double tau_sigma, double dt, int count);

/// <V, phi_i>, a(V, phi_i) and b(V, phi_i) for the active mesh.
struct LoadPrecomputation {
  Vector p_mass;
  Vector p_a;
  Vector p_b;

  static LoadPrecomputation build(const Mesh& mesh, const DofMap& dofs,
                                  const ManufacturedProblem& problem);
};

/// <F(t), phi_i> = g'(t) p_mass + g(t) p_a - I(t) p_b with I supplied.
Vector assemble_load(const LoadPrecomputation& pre, double t, double conv);
/// Same, computing I(t) with conv_factor.
Vector assemble_load(const LoadPrecomputation& pre, double t, double alpha, double tau_sigma);
/// In-place form used by the time loop.
void assemble_load_into(const LoadPrecomputation& pre, double t, double conv, std::span<double> out);

/// ||v_h - v(t)||_{L2}.
double exact_error(const Mesh& mesh, const DofMap& dofs, std::span<const double> coeffs,
                   const ManufacturedProblem& problem, double t);

/// Symmetric 2x2 tensor stored as (xx, yy, xy).
using SymTensor = std::array<double, 3>;

/// 2 mu e + lambda tr(e) I.
SymTensor apply_isotropic(double mu, double lambda, const SymTensor& e);

/// Stress post-processing
///
///   sigma(t) = C eps(v(t)) - int_0^t beta(t - s) (C - (tau_eps/tau_sigma)^alpha D) eps(v(s)) ds
///              + beta(t) (sigma_0 - C eps(u_0))
///
/// at the matrix quadrature points of every cell. The convolution uses the
/// same per-exponential recursion as the velocity memory variables, applied to
/// strain samples; the last term comes from the reference kernel.
class StressReconstructor {
 public:
  /// `initial_mismatch` is sigma_0 - C eps(u_0), one tensor per quadrature
  /// point (empty means zero).
  StressReconstructor(const Mesh& mesh, const DofMap& dofs, const Material& material,
                      const soe::SoeApprox& soe, double dt,
                      std::vector<SymTensor> initial_mismatch = {});

  /// Folds eps(v^{n-1}) into the strain memory (call once per step, before
  /// evaluate at t_n).
  void advance(std::span<const double> v_prev);

  /// Stress at every quadrature point for the current velocity at time t.
  [[nodiscard]] std::vector<SymTensor> evaluate(std::span<const double> v_current, double t) const;

  /// Strain eps(v_h) at every quadrature point.
  [[nodiscard]] std::vector<SymTensor> strains(std::span<const double> coeffs) const;

  [[nodiscard]] std::size_t num_points() const { return points_; }

 private:
  const Mesh* mesh_;
  const DofMap* dofs_;
  Material material_;
  double dt_;
  std::vector<double> decay_;
  std::vector<double> gain_;
  std::size_t points_ = 0;
  // memory_[j * points_ + p]
  std::vector<SymTensor> memory_;
  std::vector<SymTensor> mismatch_;
};

}  // namespace fracvisco
