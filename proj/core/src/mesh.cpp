#include "fracvisco/mesh.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "fracvisco/errors.hpp"

namespace fracvisco {

std::string_view to_string(MeshKind kind) {
  return kind == MeshKind::Triangular ? "tri" : "quad";
}

MeshKind parse_mesh_kind(std::string_view text) {
  if (text == "tri" || text == "triangular") return MeshKind::Triangular;
  if (text == "quad" || text == "square" || text == "quadrilateral") {
    return MeshKind::Quadrilateral;
  }
  throw InvalidArgument("unknown mesh kind '" + std::string(text) + "' (expected tri or quad)");
}

Mesh Mesh::build(MeshKind kind, int n) {
  if (n < 2) throw InvalidArgument("Mesh::build: need at least 2 cells per side");
  Mesh m;
  m.kind_ = kind;
  m.n_ = n;
  m.h_ = std::numbers::sqrt2 / n;

  const int side = n + 1;
  m.vertices_.reserve(static_cast<std::size_t>(side) * side);
  m.boundary_.reserve(static_cast<std::size_t>(side) * side);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      m.vertices_.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
      m.boundary_.push_back(i == 0 || j == 0 || i == n || j == n ? 1 : 0);
    }
  }

  const auto id = [side](int i, int j) { return j * side + i; };
  m.cells_.reserve(static_cast<std::size_t>(n) * n * (kind == MeshKind::Triangular ? 2 : 1));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = id(i, j);
      const int v10 = id(i + 1, j);
      const int v11 = id(i + 1, j + 1);
      const int v01 = id(i, j + 1);
      if (kind == MeshKind::Quadrilateral) {
        m.cells_.push_back({v00, v10, v11, v01});
      } else {
        m.cells_.push_back({v00, v10, v11, -1});
        m.cells_.push_back({v00, v11, v01, -1});
      }
    }
  }
  return m;
}

double Mesh::cell_area(std::size_t c) const {
  const auto& cell = cells_[c];
  const int nv = vertices_per_cell();
  double twice = 0.0;
  for (int k = 0; k < nv; ++k) {
    const Point& a = vertices_[cell[k]];
    const Point& b = vertices_[cell[(k + 1) % nv]];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

void Mesh::write(std::ostream& os) const {
  os << to_string(kind_) << ' ' << n_ << '\n';
  for (const Point& p : vertices_) os << p.x << ' ' << p.y << '\n';
  const int nv = vertices_per_cell();
  for (const auto& cell : cells_) {
    for (int k = 0; k < nv; ++k) os << (k ? " " : "") << cell[k];
    os << '\n';
  }
}

}  // namespace fracvisco
