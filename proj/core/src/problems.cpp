#include "fracvisco/problems.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracvisco/errors.hpp"
#include "fracvisco/mlf.hpp"
#include "fracvisco/quadrature.hpp"

namespace fracvisco {

std::string_view to_string(ProblemName name) {
  return name == ProblemName::Ex61 ? "ex61" : "ex62";
}

ProblemName parse_problem(std::string_view text) {
  if (text == "ex61") return ProblemName::Ex61;
  if (text == "ex62") return ProblemName::Ex62;
  throw InvalidArgument("unknown problem '" + std::string(text) + "' (expected ex61 or ex62)");
}

namespace {

constexpr double kPi = std::numbers::pi;

double poly_p(double s) { return s * s * (s - 1.0) * (s - 1.0); }           // s^4 - 2s^3 + s^2
double poly_dp(double s) { return 4 * s * s * s - 6 * s * s + 2 * s; }      // p'
double poly_ddp(double s) { return 12 * s * s - 12 * s + 2; }                // p''

}  // namespace

ManufacturedProblem ManufacturedProblem::make(ProblemName name, const Material& material,
                                              double final_time) {
  material.validate();
  if (!(final_time > 0.0)) throw InvalidArgument("final time must be > 0");
  ManufacturedProblem p;
  p.name = name;
  p.material = material;
  p.final_time = final_time;
  if (name == ProblemName::Ex61) {
    p.value = [](double x, double y) -> Vec2 {
      const double s = std::sin(kPi * x) * std::sin(kPi * y);
      return {s, s};
    };
    p.gradient = [](double x, double y) -> Mat2 {
      const double dx = kPi * std::cos(kPi * x) * std::sin(kPi * y);
      const double dy = kPi * std::sin(kPi * x) * std::cos(kPi * y);
      return {Vec2{dx, dy}, Vec2{dx, dy}};
    };
  } else {
    p.value = [](double x, double y) -> Vec2 {
      return {poly_p(x) * poly_dp(y), poly_p(y) * poly_dp(x)};
    };
    p.gradient = [](double x, double y) -> Mat2 {
      return {Vec2{poly_dp(x) * poly_dp(y), poly_p(x) * poly_ddp(y)},
              Vec2{poly_p(y) * poly_ddp(x), poly_dp(y) * poly_dp(x)}};
    };
  }
  return p;
}

double ManufacturedProblem::time_factor(double t) { return std::exp(-t); }
double ManufacturedProblem::time_factor_derivative(double t) { return -std::exp(-t); }

VectorField ManufacturedProblem::exact_at(double t) const {
  const double g = time_factor(t);
  return [g, v = value](double x, double y) -> Vec2 {
    const Vec2 s = v(x, y);
    return {g * s[0], g * s[1]};
  };
}

double conv_factor(double alpha, double tau_sigma, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("conv_factor: t must be >= 0");
  if (t == 0.0) return 0.0;
  quad::AdaptiveOptions opts;
  opts.abs_tol = 1e-11;
  // Substituting u = t - s puts the kernel's weak singularity at u = 0.
  return quad::integrate(
      [=](double u) { return mlf::kernel_beta(alpha, tau_sigma, u) * std::exp(u - t); }, 0.0, t,
      opts);
}

std::vector<double> conv_factor_grid(double alpha, double tau_sigma, double dt, int count) {
  if (!(dt > 0.0) || count < 0) throw InvalidArgument("conv_factor_grid: need dt > 0, count >= 0");
  std::vector<double> out(static_cast<std::size_t>(count) + 1, 0.0);
  quad::AdaptiveOptions opts;
  opts.abs_tol = 1e-13;
  double accumulated = 0.0;  // int_0^{t_k} beta(u) e^{u} du
  for (int k = 1; k <= count; ++k) {
    const double a = (k - 1) * dt;
    const double b = k * dt;
    // Integrate beta(u) e^{u - b} to keep the integrand O(1) for long runs.
    const double piece = quad::integrate(
        [=](double u) { return mlf::kernel_beta(alpha, tau_sigma, u) * std::exp(u - b); }, a, b,
        opts);
    accumulated = accumulated * std::exp(-dt) + piece;
    out[static_cast<std::size_t>(k)] = accumulated;
  }
  return out;
}

LoadPrecomputation LoadPrecomputation::build(const Mesh& mesh, const DofMap& dofs,
                                             const ManufacturedProblem& problem) {
  LoadPrecomputation pre;
  pre.p_mass = load_from_values(mesh, dofs, problem.value);
  const auto a_terms = a_form_terms(problem.material);
  const auto b_terms = b_form_terms(problem.material);
  pre.p_a = load_from_gradient(mesh, dofs, a_terms, problem.gradient);
  pre.p_b = load_from_gradient(mesh, dofs, b_terms, problem.gradient);
  return pre;
}

void assemble_load_into(const LoadPrecomputation& pre, double t, double conv,
                        std::span<double> out) {
  const double gp = ManufacturedProblem::time_factor_derivative(t);
  const double g = ManufacturedProblem::time_factor(t);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = gp * pre.p_mass[i] + g * pre.p_a[i] - conv * pre.p_b[i];
  }
}

Vector assemble_load(const LoadPrecomputation& pre, double t, double conv) {
  Vector out(pre.p_mass.size());
  assemble_load_into(pre, t, conv, out);
  return out;
}

Vector assemble_load(const LoadPrecomputation& pre, double t, double alpha, double tau_sigma) {
  return assemble_load(pre, t, conv_factor(alpha, tau_sigma, t));
}

double exact_error(const Mesh& mesh, const DofMap& dofs, std::span<const double> coeffs,
                   const ManufacturedProblem& problem, double t) {
  return l2_error(mesh, dofs, coeffs, problem.exact_at(t));
}

SymTensor apply_isotropic(double mu, double lambda, const SymTensor& e) {
  const double tr = e[0] + e[1];
  return {2.0 * mu * e[0] + lambda * tr, 2.0 * mu * e[1] + lambda * tr, 2.0 * mu * e[2]};
}

StressReconstructor::StressReconstructor(const Mesh& mesh, const DofMap& dofs,
                                         const Material& material, const soe::SoeApprox& soe,
                                         double dt, std::vector<SymTensor> initial_mismatch)
    : mesh_(&mesh), dofs_(&dofs), material_(material), dt_(dt) {
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    points_ += element::cell_points(mesh, c, false).size();
  }
  const double tau = material.tau_sigma;
  decay_.resize(soe.size());
  gain_.resize(soe.size());
  for (std::size_t j = 0; j < soe.size(); ++j) {
    const double x = soe.nodes[j] * dt / tau;
    decay_[j] = std::exp(-x);
    gain_[j] = soe.weights[j] * tau / soe.nodes[j] * -std::expm1(-x);
  }
  memory_.assign(soe.size() * points_, SymTensor{0.0, 0.0, 0.0});
  if (initial_mismatch.empty()) {
    mismatch_.assign(points_, SymTensor{0.0, 0.0, 0.0});
  } else if (initial_mismatch.size() != points_) {
    throw InvalidArgument("StressReconstructor: initial mismatch needs one tensor per point");
  } else {
    mismatch_ = std::move(initial_mismatch);
  }
}

std::vector<SymTensor> StressReconstructor::strains(std::span<const double> coeffs) const {
  std::vector<SymTensor> out;
  out.reserve(points_);
  const int nv = mesh_->vertices_per_cell();
  for (std::size_t c = 0; c < mesh_->num_cells(); ++c) {
    const auto& ids = mesh_->cells()[c];
    for (const auto& qp : element::cell_points(*mesh_, c, false)) {
      Mat2 g{};
      for (int a = 0; a < nv; ++a) {
        const int d = dofs_->vertex_dof(ids[a]);
        if (d < 0) continue;
        for (int comp = 0; comp < 2; ++comp) {
          g[comp][0] += coeffs[2 * d + comp] * qp.grad[a][0];
          g[comp][1] += coeffs[2 * d + comp] * qp.grad[a][1];
        }
      }
      out.push_back({g[0][0], g[1][1], 0.5 * (g[0][1] + g[1][0])});
    }
  }
  return out;
}

void StressReconstructor::advance(std::span<const double> v_prev) {
  const auto eps = strains(v_prev);
  for (std::size_t j = 0; j < decay_.size(); ++j) {
    SymTensor* h = memory_.data() + j * points_;
    for (std::size_t p = 0; p < points_; ++p) {
      for (int k = 0; k < 3; ++k) h[p][k] = decay_[j] * h[p][k] + gain_[j] * eps[p][k];
    }
  }
}

std::vector<SymTensor> StressReconstructor::evaluate(std::span<const double> v_current,
                                                     double t) const {
  const auto eps = strains(v_current);
  const double beta = mlf::kernel_beta(material_.alpha, material_.tau_sigma, t);
  const double kappa = material_.retardation_factor();
  std::vector<SymTensor> out(points_);
  for (std::size_t p = 0; p < points_; ++p) {
    SymTensor history{0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < decay_.size(); ++j) {
      const SymTensor& h = memory_[j * points_ + p];
      for (int k = 0; k < 3; ++k) history[k] += h[k];
    }
    const SymTensor elastic = apply_isotropic(material_.mu_c, material_.lambda_c, eps[p]);
    const SymTensor hc = apply_isotropic(material_.mu_c, material_.lambda_c, history);
    const SymTensor hd = apply_isotropic(material_.mu_d, material_.lambda_d, history);
    for (int k = 0; k < 3; ++k) {
      out[p][k] = elastic[k] - (hc[k] - kappa * hd[k]) + beta * mismatch_[p][k];
    }
  }
  return out;
}

}  // namespace fracvisco
