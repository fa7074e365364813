#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace alp {

using Index = std::int64_t;
using Point = std::array<double, 2>;

/// Node indices of a segment (first two entries) or a triangle.
using Element = std::array<Index, 3>;

enum class BoundaryKind { Dirichlet, Neumann };

std::string to_string(BoundaryKind kind);
BoundaryKind parse_boundary_kind(std::string_view text);

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
  double x0, x1, y0, y1;
};

/// A 1D interval mesh or a 2D triangulation with P1 connectivity.
///
/// Boundary nodes are inferred from the connectivity: the nodes of facets
/// (points in 1D, edges in 2D) that belong to exactly one element. Triangles
/// are stored counter-clockwise.
class Mesh {
 public:
  Mesh(int dimension, std::vector<Point> nodes, std::vector<Element> elements,
       BoundaryKind boundary_kind);

  int dimension() const noexcept { return dimension_; }
  int nodes_per_element() const noexcept { return dimension_ + 1; }
  Index num_nodes() const noexcept { return static_cast<Index>(nodes_.size()); }
  Index num_elements() const noexcept { return static_cast<Index>(elements_.size()); }

  const std::vector<Point>& nodes() const noexcept { return nodes_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  const Point& node(Index i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::span<const Index> element(Index e) const {
    return {elements_[static_cast<std::size_t>(e)].data(),
            static_cast<std::size_t>(nodes_per_element())};
  }

  const std::vector<Index>& boundary_nodes() const noexcept { return boundary_nodes_; }
  bool is_boundary(Index i) const { return on_boundary_[static_cast<std::size_t>(i)]; }
  BoundaryKind boundary_kind() const noexcept { return boundary_kind_; }

  /// Length (1D) or signed area (2D) of element e.
  double element_measure(Index e) const;
  /// |Omega|.
  double measure() const;

  /// True for a 1D mesh whose consecutive nodes are equally spaced and sorted.
  bool is_uniform_interval(double rel_tol = 1e-10) const;

 private:
  int dimension_;
  std::vector<Point> nodes_;
  std::vector<Element> elements_;
  BoundaryKind boundary_kind_;
  std::vector<Index> boundary_nodes_;
  std::vector<bool> on_boundary_;
};

Mesh build_interval_mesh(double a, double b, Index n_elements, BoundaryKind bc);

/// Structured triangulation of a rectangle: nx x ny cells, two triangles per
/// cell, diagonal direction alternating in a checkerboard pattern.
Mesh build_structured_rect_mesh(std::array<double, 2> x_range, std::array<double, 2> y_range,
                                Index nx, Index ny, BoundaryKind bc);

/// Same triangulation applied to a union of rectangles whose corners lie on
/// the lattice of spacing `cell_size`. Shared edges are merged.
Mesh build_rect_union_mesh(std::span<const Rect> rects, double cell_size, BoundaryKind bc);

/// T-shaped domain: a vertical stem [x_c - w/2, x_c + w/2] x [0, stem_height]
/// under a horizontal bar [0, bar_width] x [stem_height, stem_height + bar_height],
/// with x_c = bar_width / 2.
struct TShape {
  double stem_width = 1.0;
  double stem_height = 2.0;
  double bar_width = 5.0;
  double bar_height = 1.0;
};
std::vector<Rect> t_shape_rects(const TShape& shape);

/// Parses the plain-text node/element format:
///   node file:    "N d" then N lines "index x [y]"
///   element file: "M k" then M lines of k node indices (0-based)
Mesh load_triangle_mesh(std::string_view node_text, std::string_view element_text,
                        BoundaryKind bc = BoundaryKind::Neumann);

/// Inverse of load_triangle_mesh.
std::string write_node_text(const Mesh& mesh);
std::string write_element_text(const Mesh& mesh);

}  // namespace alp
