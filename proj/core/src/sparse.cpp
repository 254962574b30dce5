#include "fracvisco/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracvisco/errors.hpp"

namespace fracvisco {

SparseMatrix SparseMatrix::from_triplets(std::size_t dim, std::vector<Triplet> triplets) {
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m;
  m.dim_ = dim;
  m.offsets_.assign(dim + 1, 0);
  m.cols_.reserve(triplets.size() / 2);
  m.values_.reserve(triplets.size() / 2);
  for (std::size_t k = 0; k < triplets.size();) {
    const Triplet& t = triplets[k];
    if (t.row >= dim || t.col >= dim) {
      throw InvalidArgument("SparseMatrix::from_triplets: index out of range");
    }
    double v = 0.0;
    std::size_t e = k;
    while (e < triplets.size() && triplets[e].row == t.row && triplets[e].col == t.col) {
      v += triplets[e].value;
      ++e;
    }
    m.cols_.push_back(t.col);
    m.values_.push_back(v);
    ++m.offsets_[t.row + 1];
    k = e;
  }
  for (std::size_t i = 0; i < dim; ++i) m.offsets_[i + 1] += m.offsets_[i];
  return m;
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t* off = offsets_.data();
  const std::size_t* col = cols_.data();
  const double* val = values_.data();
  for (std::size_t i = 0; i < dim_; ++i) {
    double acc = 0.0;
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) acc += val[k] * x[col[k]];
    y[i] = acc;
  }
}

Vector SparseMatrix::operator*(std::span<const double> x) const {
  Vector y(dim_);
  multiply(x, y);
  return y;
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

Vector SparseMatrix::diagonal() const {
  Vector d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = at(i, i);
  return d;
}

double SparseMatrix::sum() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

bool SparseMatrix::same_pattern(const SparseMatrix& other) const {
  return dim_ == other.dim_ && offsets_ == other.offsets_ && cols_ == other.cols_;
}

bool SparseMatrix::is_symmetric(double tol) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      if (std::abs(values_[k] - at(cols_[k], i)) > tol) return false;
    }
  }
  return true;
}

SparseMatrix SparseMatrix::combine(double a, const SparseMatrix& A, double b,
                                   const SparseMatrix& B) {
  if (!A.same_pattern(B)) {
    throw InvalidArgument("SparseMatrix::combine: operands have different patterns");
  }
  SparseMatrix out = A;
  for (std::size_t k = 0; k < out.values_.size(); ++k) {
    out.values_[k] = a * A.values_[k] + b * B.values_[k];
  }
  return out;
}

void SparseMatrix::scale(double factor) {
  for (double& v : values_) v *= factor;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

CgReport cg_solve(const SparseMatrix& A, std::span<const double> rhs, std::span<double> x,
                  const CgOptions& opts) {
  const std::size_t n = A.dim();
  if (rhs.size() != n || x.size() != n) {
    throw InvalidArgument("cg_solve: dimension mismatch");
  }
  if (!(opts.rel_tol > 0.0 && opts.rel_tol < 1.0)) {
    throw InvalidArgument("cg_solve: rel_tol must lie in (0, 1)");
  }
  const std::size_t max_iter = opts.max_iter ? opts.max_iter : 10 * std::max<std::size_t>(n, 1);

  const double rhs_norm = norm2(rhs);
  if (rhs_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {0, 0.0};
  }
  Vector inv_diag = A.diagonal();
  for (double& d : inv_diag) {
    if (!(d > 0.0)) throw SolveFailure("cg_solve: non-positive diagonal entry");
    d = 1.0 / d;
  }

  Vector r(n), z(n), p(n), q(n);
  A.multiply(x, q);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - q[i];
  const double target = opts.rel_tol * rhs_norm;
  double res = norm2(r);
  if (res <= target) return {0, res / rhs_norm};

  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);
  for (std::size_t it = 1; it <= max_iter; ++it) {
    A.multiply(p, q);
    const double pq = dot(p, q);
    if (!(pq > 0.0)) throw SolveFailure("cg_solve: breakdown (matrix not positive definite?)");
    const double step = rz / pq;
    double rr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += step * p[i];
      r[i] -= step * q[i];
      rr += r[i] * r[i];
    }
    res = std::sqrt(rr);
    if (res <= target) return {it, res / rhs_norm};
    double rz_next = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = inv_diag[i] * r[i];
      rz_next += r[i] * z[i];
    }
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw SolveFailure("cg_solve: no convergence after " + std::to_string(max_iter) +
                     " iterations (relative residual " + std::to_string(res / rhs_norm) + ")");
}

Vector cg_solve(const SparseMatrix& A, std::span<const double> rhs, std::span<const double> x0,
                double rel_tol) {
  Vector x(x0.begin(), x0.end());
  CgOptions opts;
  opts.rel_tol = rel_tol;
  cg_solve(A, rhs, x, opts);
  return x;
}

}  // namespace fracvisco
