#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace fracvisco {

enum class MeshKind { Triangular, Quadrilateral };

std::string_view to_string(MeshKind kind);
/// Accepts "tri"/"triangular" and "quad"/"square"/"quadrilateral".
MeshKind parse_mesh_kind(std::string_view text);

struct Point {
  double x;
  double y;
};

/// Uniform mesh of the unit square with n cells per side. Vertices are stored
/// row-major (index = j (n + 1) + i for x = i/n, y = j/n). Triangles split each
/// square along the lower-left to upper-right diagonal; all cells are
/// counterclockwise. Unused trailing cell slots of a triangle hold -1.
class Mesh {
 public:
  static Mesh build(MeshKind kind, int n);

  [[nodiscard]] MeshKind kind() const { return kind_; }
  [[nodiscard]] int cells_per_side() const { return n_; }
  /// Diagonal of a grid square, sqrt(2)/n.
  [[nodiscard]] double h() const { return h_; }
  [[nodiscard]] int vertices_per_cell() const { return kind_ == MeshKind::Triangular ? 3 : 4; }

  [[nodiscard]] const std::vector<Point>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<std::array<int, 4>>& cells() const { return cells_; }
  [[nodiscard]] const std::vector<std::uint8_t>& boundary_mask() const { return boundary_; }
  [[nodiscard]] bool on_boundary(int vertex) const { return boundary_[vertex] != 0; }

  [[nodiscard]] std::size_t num_vertices() const { return vertices_.size(); }
  [[nodiscard]] std::size_t num_cells() const { return cells_.size(); }

  /// Signed area of cell c (positive for counterclockwise cells).
  [[nodiscard]] double cell_area(std::size_t c) const;

  /// Plain-text dump: "kind n", vertex lines "x y", cell lines of indices.
  void write(std::ostream& os) const;

 private:
  MeshKind kind_ = MeshKind::Quadrilateral;
  int n_ = 0;
  double h_ = 0.0;
  std::vector<Point> vertices_;
  std::vector<std::array<int, 4>> cells_;
  std::vector<std::uint8_t> boundary_;
};

}  // namespace fracvisco
