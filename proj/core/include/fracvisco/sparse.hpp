#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fracvisco {

using Vector = std::vector<double>;

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Square matrix in compressed sparse row form. Matrices assembled on the same
/// mesh and dof map share one sparsity pattern (explicit zeros are kept), which
/// lets the stepper combine them entrywise.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Duplicates are summed in input order; structural zeros are kept.
  static SparseMatrix from_triplets(std::size_t dim, std::vector<Triplet> triplets);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t nnz() const { return values_.size(); }
  [[nodiscard]] std::span<const std::size_t> row_offsets() const { return offsets_; }
  [[nodiscard]] std::span<const std::size_t> col_indices() const { return cols_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }

  /// y = A x.
  void multiply(std::span<const double> x, std::span<double> y) const;
  [[nodiscard]] Vector operator*(std::span<const double> x) const;

  /// Entry (i, j), zero when outside the pattern.
  [[nodiscard]] double at(std::size_t i, std::size_t j) const;
  [[nodiscard]] Vector diagonal() const;
  [[nodiscard]] double sum() const;

  [[nodiscard]] bool same_pattern(const SparseMatrix& other) const;
  /// Exact symmetry when tol = 0.
  [[nodiscard]] bool is_symmetric(double tol = 0.0) const;

  /// a A + b B on a shared pattern. Throws InvalidArgument otherwise.
  static SparseMatrix combine(double a, const SparseMatrix& A, double b, const SparseMatrix& B);
  void scale(double factor);

 private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

struct CgOptions {
  double rel_tol = 1e-10;
  /// 0 means 10 * dim.
  std::size_t max_iter = 0;
};

struct CgReport {
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients. `x` holds the initial guess on
/// entry and the solution on exit. Stops when ||b - A x||_2 <= rel_tol ||b||_2;
/// throws SolveFailure after max_iter iterations or on breakdown.
CgReport cg_solve(const SparseMatrix& A, std::span<const double> rhs, std::span<double> x,
                  const CgOptions& opts = {});

/// Value-returning form starting from x0.
Vector cg_solve(const SparseMatrix& A, std::span<const double> rhs, std::span<const double> x0,
                double rel_tol);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
/// y += a x
void axpy(double a, std::span<const double> x, std::span<double> y);

}  // namespace fracvisco
