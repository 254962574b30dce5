#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracvisco/mesh.hpp"
#include "fracvisco/sparse.hpp"

namespace fracvisco {

using Vec2 = std::array<double, 2>;
/// grad[i][j] = d v_i / d x_j.
using Mat2 = std::array<Vec2, 2>;

using VectorField = std::function<Vec2(double x, double y)>;
using GradientField = std::function<Mat2(double x, double y)>;

/// Density, relaxation/retardation times, fractional order and the Lame pairs
/// of the two elasticity tensors C and D.
struct Material {
  double rho = 1.0;
  double tau_sigma = 0.5;
  double tau_eps = 1.0;
  double alpha = 0.5;
  double mu_c = 1.0;
  double lambda_c = 1.0;
  double mu_d = 1.0;
  double lambda_d = 2.0;

  /// Parameters of the numerical experiments: rho = 1, tau_sigma = 1/2,
  /// tau_eps = 1, mu_C = lambda_C = 1, mu_D = 1, lambda_D = 2.
  static Material experiment(double alpha);

  /// (tau_eps / tau_sigma)^alpha
  [[nodiscard]] double retardation_factor() const;

  /// Throws InvalidArgument unless rho, tau_sigma > 0, tau_eps >= 0,
  /// 0 < alpha < 1 and both tensors are SPD (mu > 0, 2 lambda + 2 mu > 0).
  void validate() const;
};

/// Isotropic tensor term scale * (2 mu eps : eps + lambda div div).
struct ElasticTerm {
  double mu;
  double lambda;
  double scale;
};

/// a(.,.) is the single term (mu_C, lambda_C, 1/rho); b(.,.) is C minus the
/// retardation-scaled D, both over rho.
std::array<ElasticTerm, 1> a_form_terms(const Material& mat);
std::array<ElasticTerm, 2> b_form_terms(const Material& mat);

enum class BoundaryTreatment { Dirichlet, Free };

/// Two displacement components per active vertex, interleaved:
/// dof(v, c) = 2 * vertex_dof(v) + c. Dirichlet vertices carry no dof.
class DofMap {
 public:
  static DofMap build(const Mesh& mesh, BoundaryTreatment treatment = BoundaryTreatment::Dirichlet);

  /// -1 for a constrained vertex.
  [[nodiscard]] int vertex_dof(int vertex) const { return vertex_index_[vertex]; }
  [[nodiscard]] std::size_t n_dofs() const { return 2 * n_active_; }
  [[nodiscard]] std::size_t n_active_vertices() const { return n_active_; }
  [[nodiscard]] BoundaryTreatment treatment() const { return treatment_; }

 private:
  std::vector<int> vertex_index_;
  std::size_t n_active_ = 0;
  BoundaryTreatment treatment_ = BoundaryTreatment::Dirichlet;
};

/// M_ij = int phi_i . phi_j (degree-2 rule on triangles, 2x2 Gauss on quads).
SparseMatrix assemble_mass(const Mesh& mesh, const DofMap& dofs);

/// K_ij = scale * int [2 mu eps(phi_i) : eps(phi_j) + lambda div phi_i div phi_j].
SparseMatrix assemble_elastic(const Mesh& mesh, const DofMap& dofs, double mu, double lambda,
                              double scale);

SparseMatrix a_form_matrix(const Mesh& mesh, const DofMap& dofs, const Material& mat);
/// (1/rho) [K(mu_C, lambda_C) - (tau_eps/tau_sigma)^alpha K(mu_D, lambda_D)],
/// assembled as one matrix. Symmetric, possibly indefinite or zero.
SparseMatrix b_form_matrix(const Mesh& mesh, const DofMap& dofs, const Material& mat);

/// Entries int f . phi_i with the order-4 rule.
Vector load_from_values(const Mesh& mesh, const DofMap& dofs, const VectorField& f);

/// Entries sum_terms scale * int [2 mu eps(g) : eps(phi_i) + lambda tr(g) div phi_i]
/// for an analytic gradient g, order-4 rule.
Vector load_from_gradient(const Mesh& mesh, const DofMap& dofs,
                          std::span<const ElasticTerm> terms, const GradientField& grad);

/// Ritz projection: solves K c = a(v0, phi_i) by CG to rel_tol, where K is the
/// matrix of the same terms.
Vector ritz_project(const Mesh& mesh, const DofMap& dofs, const SparseMatrix& a_matrix,
                    std::span<const ElasticTerm> terms, const GradientField& grad,
                    double rel_tol = 1e-12);

/// Nodal interpolant on active vertices.
Vector interpolate(const Mesh& mesh, const DofMap& dofs, const VectorField& f);

/// Value of the discrete field at a point of cell c given reference
/// coordinates; used by stress post-processing and tests.
Vec2 evaluate_in_cell(const Mesh& mesh, const DofMap& dofs, std::span<const double> coeffs,
                      std::size_t cell, double xi, double eta);

/// ||u_h - exact||_{L2} with the order-4 rule (6-point triangle rule, 3x3
/// Gauss on quads).
double l2_error(const Mesh& mesh, const DofMap& dofs, std::span<const double> coeffs,
                const VectorField& exact);

/// Area of the domain as integrated by a given element rule (quadrature sanity).
double integrate_one(const Mesh& mesh, bool high_order);

// Element-level kinematics shared with the stress post-processor.
namespace element {

struct QuadPoint {
  double x;
  double y;
  double weight;                       // reference weight times |det J|
  std::array<double, 4> shape;         // N_a
  std::array<Vec2, 4> grad;            // grad N_a in physical coordinates
};

/// Physical quadrature data for cell c. high_order selects the order-4 rules,
/// otherwise the matrix rules (degree 2 / 2x2 Gauss).
std::vector<QuadPoint> cell_points(const Mesh& mesh, std::size_t cell, bool high_order);

}  // namespace element

}  // namespace fracvisco
