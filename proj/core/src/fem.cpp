#include "fracvisco/fem.hpp"

#include <cmath>
#include <string>

#include "fracvisco/errors.hpp"
#include "fracvisco/quadrature.hpp"

namespace fracvisco {

Material Material::experiment(double alpha) {
  Material m;
  m.alpha = alpha;
  return m;
}

double Material::retardation_factor() const {
  return std::pow(tau_eps / tau_sigma, alpha);
}

void Material::validate() const {
  if (!(rho > 0.0)) throw InvalidArgument("material: rho must be > 0");
  if (!(tau_sigma > 0.0)) throw InvalidArgument("material: tau_sigma must be > 0");
  if (!(tau_eps >= 0.0)) throw InvalidArgument("material: tau_eps must be >= 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("material: alpha must lie in (0, 1)");
  if (!(mu_c > 0.0 && 2.0 * lambda_c + 2.0 * mu_c > 0.0)) {
    throw InvalidArgument("material: tensor C is not positive definite");
  }
  if (!(mu_d > 0.0 && 2.0 * lambda_d + 2.0 * mu_d > 0.0)) {
    throw InvalidArgument("material: tensor D is not positive definite");
  }
}

std::array<ElasticTerm, 1> a_form_terms(const Material& mat) {
  return {{{mat.mu_c, mat.lambda_c, 1.0 / mat.rho}}};
}

std::array<ElasticTerm, 2> b_form_terms(const Material& mat) {
  const double inv_rho = 1.0 / mat.rho;
  return {{{mat.mu_c, mat.lambda_c, inv_rho},
           {mat.mu_d, mat.lambda_d, -mat.retardation_factor() * inv_rho}}};
}

DofMap DofMap::build(const Mesh& mesh, BoundaryTreatment treatment) {
  DofMap map;
  map.treatment_ = treatment;
  map.vertex_index_.assign(mesh.num_vertices(), -1);
  int next = 0;
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    if (treatment == BoundaryTreatment::Dirichlet && mesh.on_boundary(static_cast<int>(v))) {
      continue;
    }
    map.vertex_index_[v] = next++;
  }
  map.n_active_ = static_cast<std::size_t>(next);
  return map;
}

namespace element {

std::vector<QuadPoint> cell_points(const Mesh& mesh, std::size_t cell, bool high_order) {
  const auto& ids = mesh.cells()[cell];
  const auto& verts = mesh.vertices();
  std::vector<QuadPoint> out;

  if (mesh.kind() == MeshKind::Triangular) {
    const Point& p0 = verts[ids[0]];
    const Point& p1 = verts[ids[1]];
    const Point& p2 = verts[ids[2]];
    const double j00 = p1.x - p0.x, j01 = p2.x - p0.x;
    const double j10 = p1.y - p0.y, j11 = p2.y - p0.y;
    const double det = j00 * j11 - j01 * j10;
    // grad N = J^{-T} grad_ref N; reference gradients (-1,-1), (1,0), (0,1).
    const auto phys = [&](double gx, double gy) -> Vec2 {
      return {(j11 * gx - j10 * gy) / det, (-j01 * gx + j00 * gy) / det};
    };
    const std::array<Vec2, 4> grads = {phys(-1.0, -1.0), phys(1.0, 0.0), phys(0.0, 1.0),
                                       Vec2{0.0, 0.0}};
    const auto rule = high_order ? quad::triangle_degree4() : quad::triangle_degree2();
    out.reserve(rule.size());
    for (const auto& rp : rule) {
      QuadPoint qp;
      qp.x = p0.x + j00 * rp.xi + j01 * rp.eta;
      qp.y = p0.y + j10 * rp.xi + j11 * rp.eta;
      qp.weight = rp.weight * std::abs(det);
      qp.shape = {1.0 - rp.xi - rp.eta, rp.xi, rp.eta, 0.0};
      qp.grad = grads;
      out.push_back(qp);
    }
    return out;
  }

  const std::array<Point, 4> p = {verts[ids[0]], verts[ids[1]], verts[ids[2]], verts[ids[3]]};
  const auto rule = quad::quad_gauss(high_order ? 3 : 2);
  out.reserve(rule.size());
  for (const auto& rp : rule) {
    const double s = rp.xi;
    const double t = rp.eta;
    const std::array<double, 4> n = {(1 - s) * (1 - t), s * (1 - t), s * t, (1 - s) * t};
    const std::array<double, 4> ds = {-(1 - t), (1 - t), t, -t};
    const std::array<double, 4> dt = {-(1 - s), -s, s, (1 - s)};
    double j00 = 0, j01 = 0, j10 = 0, j11 = 0, x = 0, y = 0;
    for (int a = 0; a < 4; ++a) {
      x += n[a] * p[a].x;
      y += n[a] * p[a].y;
      j00 += ds[a] * p[a].x;
      j01 += dt[a] * p[a].x;
      j10 += ds[a] * p[a].y;
      j11 += dt[a] * p[a].y;
    }
    const double det = j00 * j11 - j01 * j10;
    QuadPoint qp;
    qp.x = x;
    qp.y = y;
    qp.weight = rp.weight * std::abs(det);
    qp.shape = n;
    for (int a = 0; a < 4; ++a) {
      qp.grad[a] = {(j11 * ds[a] - j10 * dt[a]) / det, (-j01 * ds[a] + j00 * dt[a]) / det};
    }
    out.push_back(qp);
  }
  return out;
}

}  // namespace element

namespace {

// Element matrix indexed [2a + c][2b + d] for vertex a/b, component c/d.
using ElementMatrix = std::array<std::array<double, 8>, 8>;

template <class Kernel>
SparseMatrix assemble_bilinear(const Mesh& mesh, const DofMap& dofs, Kernel&& kernel) {
  const int nv = mesh.vertices_per_cell();
  std::vector<Triplet> triplets;
  triplets.reserve(mesh.num_cells() * static_cast<std::size_t>(4 * nv * nv));
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    ElementMatrix ke{};
    for (const auto& qp : element::cell_points(mesh, c, false)) {
      kernel(qp, nv, ke);
    }
    const auto& ids = mesh.cells()[c];
    for (int a = 0; a < nv; ++a) {
      const int da = dofs.vertex_dof(ids[a]);
      if (da < 0) continue;
      for (int b = 0; b < nv; ++b) {
        const int db = dofs.vertex_dof(ids[b]);
        if (db < 0) continue;
        for (int ci = 0; ci < 2; ++ci) {
          for (int di = 0; di < 2; ++di) {
            triplets.push_back({static_cast<std::size_t>(2 * da + ci),
                                static_cast<std::size_t>(2 * db + di), ke[2 * a + ci][2 * b + di]});
          }
        }
      }
    }
  }
  return SparseMatrix::from_triplets(dofs.n_dofs(), std::move(triplets));
}

}  // namespace

SparseMatrix assemble_mass(const Mesh& mesh, const DofMap& dofs) {
  return assemble_bilinear(mesh, dofs, [](const element::QuadPoint& qp, int nv, ElementMatrix& ke) {
    for (int a = 0; a < nv; ++a) {
      for (int b = 0; b < nv; ++b) {
        const double v = qp.weight * (qp.shape[a] * qp.shape[b]);
        ke[2 * a][2 * b] += v;
        ke[2 * a + 1][2 * b + 1] += v;
      }
    }
  });
}

SparseMatrix assemble_elastic(const Mesh& mesh, const DofMap& dofs, double mu, double lambda,
                              double scale) {
  return assemble_bilinear(
      mesh, dofs, [=](const element::QuadPoint& qp, int nv, ElementMatrix& ke) {
        const double w = qp.weight * scale;
        for (int a = 0; a < nv; ++a) {
          const Vec2& ga = qp.grad[a];
          for (int b = 0; b < nv; ++b) {
            const Vec2& gb = qp.grad[b];
            const double dotg = ga[0] * gb[0] + ga[1] * gb[1];
            // For phi = N_a e_c, psi = N_b e_d:
            // 2 eps(phi):eps(psi) = delta_cd gradNa.gradNb + d_d N_a d_c N_b
            for (int c = 0; c < 2; ++c) {
              for (int d = 0; d < 2; ++d) {
                const double sym = (c == d ? dotg : 0.0) + ga[d] * gb[c];
                ke[2 * a + c][2 * b + d] += w * (mu * sym + lambda * (ga[c] * gb[d]));
              }
            }
          }
        }
      });
}

SparseMatrix a_form_matrix(const Mesh& mesh, const DofMap& dofs, const Material& mat) {
  const auto t = a_form_terms(mat)[0];
  return assemble_elastic(mesh, dofs, t.mu, t.lambda, t.scale);
}

SparseMatrix b_form_matrix(const Mesh& mesh, const DofMap& dofs, const Material& mat) {
  const auto terms = b_form_terms(mat);
  const SparseMatrix kc = assemble_elastic(mesh, dofs, terms[0].mu, terms[0].lambda, 1.0);
  const SparseMatrix kd = assemble_elastic(mesh, dofs, terms[1].mu, terms[1].lambda, 1.0);
  return SparseMatrix::combine(terms[0].scale, kc, terms[1].scale, kd);
}

namespace {

template <class PointLoad>
Vector assemble_vector(const Mesh& mesh, const DofMap& dofs, PointLoad&& point_load) {
  Vector out(dofs.n_dofs(), 0.0);
  const int nv = mesh.vertices_per_cell();
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    std::array<double, 8> fe{};
    for (const auto& qp : element::cell_points(mesh, c, true)) point_load(qp, nv, fe);
    const auto& ids = mesh.cells()[c];
    for (int a = 0; a < nv; ++a) {
      const int da = dofs.vertex_dof(ids[a]);
      if (da < 0) continue;
      out[2 * da] += fe[2 * a];
      out[2 * da + 1] += fe[2 * a + 1];
    }
  }
  return out;
}

}  // namespace

Vector load_from_values(const Mesh& mesh, const DofMap& dofs, const VectorField& f) {
  return assemble_vector(mesh, dofs, [&](const element::QuadPoint& qp, int nv,
                                         std::array<double, 8>& fe) {
    const Vec2 v = f(qp.x, qp.y);
    for (int a = 0; a < nv; ++a) {
      fe[2 * a] += qp.weight * v[0] * qp.shape[a];
      fe[2 * a + 1] += qp.weight * v[1] * qp.shape[a];
    }
  });
}

Vector load_from_gradient(const Mesh& mesh, const DofMap& dofs,
                          std::span<const ElasticTerm> terms, const GradientField& grad) {
  return assemble_vector(mesh, dofs, [&](const element::QuadPoint& qp, int nv,
                                         std::array<double, 8>& fe) {
    const Mat2 g = grad(qp.x, qp.y);
    const double off = 0.5 * (g[0][1] + g[1][0]);
    const Mat2 strain = {Vec2{g[0][0], off}, Vec2{off, g[1][1]}};
    const double trace = g[0][0] + g[1][1];
    // eps(g) : eps(N_a e_c) = sum_j strain[c][j] d_j N_a
    for (const auto& term : terms) {
      const double w = qp.weight * term.scale;
      for (int a = 0; a < nv; ++a) {
        const Vec2& ga = qp.grad[a];
        for (int c = 0; c < 2; ++c) {
          const double ee = strain[c][0] * ga[0] + strain[c][1] * ga[1];
          fe[2 * a + c] += w * (2.0 * term.mu * ee + term.lambda * trace * ga[c]);
        }
      }
    }
  });
}

Vector ritz_project(const Mesh& mesh, const DofMap& dofs, const SparseMatrix& a_matrix,
                    std::span<const ElasticTerm> terms, const GradientField& grad,
                    double rel_tol) {
  const Vector rhs = load_from_gradient(mesh, dofs, terms, grad);
  Vector x(dofs.n_dofs(), 0.0);
  CgOptions opts;
  opts.rel_tol = rel_tol;
  cg_solve(a_matrix, rhs, x, opts);
  return x;
}

Vector interpolate(const Mesh& mesh, const DofMap& dofs, const VectorField& f) {
  Vector out(dofs.n_dofs(), 0.0);
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    const int d = dofs.vertex_dof(static_cast<int>(v));
    if (d < 0) continue;
    const Point& p = mesh.vertices()[v];
    const Vec2 val = f(p.x, p.y);
    out[2 * d] = val[0];
    out[2 * d + 1] = val[1];
  }
  return out;
}

Vec2 evaluate_in_cell(const Mesh& mesh, const DofMap& dofs, std::span<const double> coeffs,
                      std::size_t cell, double xi, double eta) {
  const auto& ids = mesh.cells()[cell];
  std::array<double, 4> n{};
  if (mesh.kind() == MeshKind::Triangular) {
    n = {1.0 - xi - eta, xi, eta, 0.0};
  } else {
    n = {(1 - xi) * (1 - eta), xi * (1 - eta), xi * eta, (1 - xi) * eta};
  }
  Vec2 out{0.0, 0.0};
  for (int a = 0; a < mesh.vertices_per_cell(); ++a) {
    const int d = dofs.vertex_dof(ids[a]);
    if (d < 0) continue;
    out[0] += n[a] * coeffs[2 * d];
    out[1] += n[a] * coeffs[2 * d + 1];
  }
  return out;
}

double l2_error(const Mesh& mesh, const DofMap& dofs, std::span<const double> coeffs,
                const VectorField& exact) {
  if (coeffs.size() != dofs.n_dofs()) throw InvalidArgument("l2_error: coefficient size mismatch");
  const int nv = mesh.vertices_per_cell();
  double total = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& ids = mesh.cells()[c];
    for (const auto& qp : element::cell_points(mesh, c, true)) {
      Vec2 uh{0.0, 0.0};
      for (int a = 0; a < nv; ++a) {
        const int d = dofs.vertex_dof(ids[a]);
        if (d < 0) continue;
        uh[0] += qp.shape[a] * coeffs[2 * d];
        uh[1] += qp.shape[a] * coeffs[2 * d + 1];
      }
      const Vec2 ex = exact(qp.x, qp.y);
      const double e0 = uh[0] - ex[0];
      const double e1 = uh[1] - ex[1];
      total += qp.weight * (e0 * e0 + e1 * e1);
    }
  }
  return std::sqrt(total);
}

double integrate_one(const Mesh& mesh, bool high_order) {
  double total = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    for (const auto& qp : element::cell_points(mesh, c, high_order)) total += qp.weight;
  }
  return total;
}

}  // namespace fracvisco
