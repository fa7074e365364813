#include "alp/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "alp/error.hpp"

namespace alp {

std::string to_string(BoundaryKind kind) {
  return kind == BoundaryKind::Dirichlet ? "dirichlet" : "neumann";
}

BoundaryKind parse_boundary_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "dirichlet") return BoundaryKind::Dirichlet;
  if (lower == "neumann") return BoundaryKind::Neumann;
  throw InvalidArgument("unknown boundary kind '" + std::string(text) + "'");
}

namespace {

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

}  // namespace

Mesh::Mesh(int dimension, std::vector<Point> nodes, std::vector<Element> elements,
           BoundaryKind boundary_kind)
    : dimension_(dimension),
      nodes_(std::move(nodes)),
      elements_(std::move(elements)),
      boundary_kind_(boundary_kind) {
  if (dimension_ != 1 && dimension_ != 2) {
    throw InvalidArgument("mesh dimension must be 1 or 2");
  }
  if (nodes_.empty() || elements_.empty()) {
    throw InvalidArgument("mesh needs at least one node and one element");
  }
  for (const auto& p : nodes_) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) {
      throw InvalidArgument("mesh node coordinates must be finite");
    }
  }
  const Index n = num_nodes();
  const int k = nodes_per_element();
  for (auto& el : elements_) {
    for (int a = 0; a < k; ++a) {
      if (el[a] < 0 || el[a] >= n) {
        throw InvalidArgument("element references node " + std::to_string(el[a]) +
                              " outside [0, " + std::to_string(n) + ")");
      }
    }
    if (dimension_ == 1) {
      el[2] = -1;
      if (el[0] == el[1]) throw InvalidArgument("degenerate segment");
      if (nodes_[el[0]][0] > nodes_[el[1]][0]) std::swap(el[0], el[1]);
      if (nodes_[el[1]][0] - nodes_[el[0]][0] <= 0.0) {
        throw InvalidArgument("zero-length segment");
      }
    } else {
      double area = signed_area(nodes_[el[0]], nodes_[el[1]], nodes_[el[2]]);
      const double scale = std::max({std::abs(nodes_[el[1]][0] - nodes_[el[0]][0]),
                                     std::abs(nodes_[el[1]][1] - nodes_[el[0]][1]),
                                     std::abs(nodes_[el[2]][0] - nodes_[el[0]][0]),
                                     std::abs(nodes_[el[2]][1] - nodes_[el[0]][1])});
      if (std::abs(area) <= 1e-14 * scale * scale) {
        throw InvalidArgument("zero-area triangle");
      }
      if (area < 0.0) std::swap(el[1], el[2]);
    }
  }

  // Facets owned by exactly one element lie on the boundary.
  on_boundary_.assign(nodes_.size(), false);
  if (dimension_ == 1) {
    std::vector<int> count(nodes_.size(), 0);
    for (const auto& el : elements_) {
      ++count[el[0]];
      ++count[el[1]];
    }
    for (std::size_t i = 0; i < count.size(); ++i) on_boundary_[i] = count[i] == 1;
  } else {
    std::map<std::pair<Index, Index>, int> edges;
    for (const auto& el : elements_) {
      for (int a = 0; a < 3; ++a) {
        Index i = el[a], j = el[(a + 1) % 3];
        ++edges[{std::min(i, j), std::max(i, j)}];
      }
    }
    for (const auto& [edge, count] : edges) {
      if (count == 1) {
        on_boundary_[edge.first] = true;
        on_boundary_[edge.second] = true;
      } else if (count > 2) {
        throw InvalidArgument("non-manifold edge shared by more than two triangles");
      }
    }
  }
  for (std::size_t i = 0; i < on_boundary_.size(); ++i) {
    if (on_boundary_[i]) boundary_nodes_.push_back(static_cast<Index>(i));
  }
}

double Mesh::element_measure(Index e) const {
  const auto& el = elements_[static_cast<std::size_t>(e)];
  if (dimension_ == 1) return nodes_[el[1]][0] - nodes_[el[0]][0];
  return signed_area(nodes_[el[0]], nodes_[el[1]], nodes_[el[2]]);
}

double Mesh::measure() const {
  double total = 0.0;
  for (Index e = 0; e < num_elements(); ++e) total += element_measure(e);
  return total;
}

bool Mesh::is_uniform_interval(double rel_tol) const {
  if (dimension_ != 1 || nodes_.size() < 3) return false;
  const double h = nodes_[1][0] - nodes_[0][0];
  if (h <= 0.0) return false;
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (std::abs(nodes_[i][0] - nodes_[i - 1][0] - h) > rel_tol * h) return false;
  }
  return true;
}

Mesh build_interval_mesh(double a, double b, Index n_elements, BoundaryKind bc) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("interval bounds must be finite");
  }
  if (!(a < b)) throw InvalidArgument("interval requires a < b");
  if (n_elements < 2) throw InvalidArgument("interval mesh needs at least 2 elements");

  std::vector<Point> nodes(static_cast<std::size_t>(n_elements + 1));
  const double h = (b - a) / static_cast<double>(n_elements);
  for (Index i = 0; i <= n_elements; ++i) {
    nodes[i] = {i == n_elements ? b : a + h * static_cast<double>(i), 0.0};
  }
  std::vector<Element> elements(static_cast<std::size_t>(n_elements));
  for (Index e = 0; e < n_elements; ++e) elements[e] = {e, e + 1, -1};
  return Mesh(1, std::move(nodes), std::move(elements), bc);
}

Mesh build_structured_rect_mesh(std::array<double, 2> x_range, std::array<double, 2> y_range,
                                Index nx, Index ny, BoundaryKind bc) {
  const double lx = x_range[1] - x_range[0];
  const double ly = y_range[1] - y_range[0];
  if (!std::isfinite(lx) || !std::isfinite(ly) || lx <= 0.0 || ly <= 0.0) {
    throw InvalidArgument("rectangle extents must be positive and finite");
  }
  if (nx < 2 || ny < 2) throw InvalidArgument("rectangle mesh needs nx, ny >= 2");

  std::vector<Point> nodes;
  nodes.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (Index j = 0; j <= ny; ++j) {
    for (Index i = 0; i <= nx; ++i) {
      nodes.push_back({x_range[0] + lx * static_cast<double>(i) / static_cast<double>(nx),
                       y_range[0] + ly * static_cast<double>(j) / static_cast<double>(ny)});
    }
  }
  auto id = [nx](Index i, Index j) { return j * (nx + 1) + i; };
  std::vector<Element> elements;
  elements.reserve(static_cast<std::size_t>(2 * nx * ny));
  for (Index j = 0; j < ny; ++j) {
    for (Index i = 0; i < nx; ++i) {
      const Index a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      if ((i + j) % 2 == 0) {
        elements.push_back({a, b, c});
        elements.push_back({a, c, d});
      } else {
        elements.push_back({a, b, d});
        elements.push_back({b, c, d});
      }
    }
  }
  return Mesh(2, std::move(nodes), std::move(elements), bc);
}

Mesh build_rect_union_mesh(std::span<const Rect> rects, double cell_size, BoundaryKind bc) {
  if (rects.empty()) throw InvalidArgument("rectangle union is empty");
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw InvalidArgument("cell size must be positive");
  }
  auto lattice = [cell_size](double v) {
    const double q = v / cell_size;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q))) {
      throw InvalidArgument("rectangle corner not on the cell lattice");
    }
    return static_cast<Index>(r);
  };

  std::map<std::pair<Index, Index>, Index> node_id;
  std::vector<Point> nodes;
  auto node_at = [&](Index i, Index j) {
    auto [it, inserted] = node_id.try_emplace({i, j}, static_cast<Index>(nodes.size()));
    if (inserted) {
      nodes.push_back({static_cast<double>(i) * cell_size, static_cast<double>(j) * cell_size});
    }
    return it->second;
  };

  std::map<std::pair<Index, Index>, bool> seen_cells;
  std::vector<Element> elements;
  for (const auto& r : rects) {
    const Index i0 = lattice(r.x0), i1 = lattice(r.x1), j0 = lattice(r.y0), j1 = lattice(r.y1);
    if (i1 <= i0 || j1 <= j0) throw InvalidArgument("degenerate rectangle in union");
    for (Index j = j0; j < j1; ++j) {
      for (Index i = i0; i < i1; ++i) {
        if (!seen_cells.try_emplace({i, j}, true).second) continue;
        const Index a = node_at(i, j), b = node_at(i + 1, j), c = node_at(i + 1, j + 1),
                    d = node_at(i, j + 1);
        // Global parity keeps the diagonal pattern continuous across rectangles.
        if (((i + j) % 2 + 2) % 2 == 0) {
          elements.push_back({a, b, c});
          elements.push_back({a, c, d});
        } else {
          elements.push_back({a, b, d});
          elements.push_back({b, c, d});
        }
      }
    }
  }
  return Mesh(2, std::move(nodes), std::move(elements), bc);
}

std::vector<Rect> t_shape_rects(const TShape& s) {
  if (s.stem_width <= 0 || s.stem_height <= 0 || s.bar_width <= s.stem_width ||
      s.bar_height <= 0) {
    throw InvalidArgument("invalid T-shape dimensions");
  }
  const double xc = 0.5 * s.bar_width;
  return {
      Rect{xc - 0.5 * s.stem_width, xc + 0.5 * s.stem_width, 0.0, s.stem_height},
      Rect{0.0, s.bar_width, s.stem_height, s.stem_height + s.bar_height},
  };
}

namespace {

std::istringstream open_section(std::string_view text) {
  return std::istringstream{std::string(text)};
}

template <typename T>
T read_value(std::istringstream& in, const char* what) {
  T value{};
  if (!(in >> value)) throw InvalidArgument(std::string("mesh parse error: expected ") + what);
  return value;
}

}  // namespace

Mesh load_triangle_mesh(std::string_view node_text, std::string_view element_text,
                        BoundaryKind bc) {
  auto nin = open_section(node_text);
  const auto n_nodes = read_value<Index>(nin, "node count");
  const auto dim = read_value<int>(nin, "dimension");
  if (n_nodes <= 0) throw InvalidArgument("mesh parse error: node count must be positive");
  if (dim != 1 && dim != 2) throw InvalidArgument("mesh parse error: dimension must be 1 or 2");

  std::vector<Point> nodes(static_cast<std::size_t>(n_nodes));
  std::vector<bool> filled(nodes.size(), false);
  for (Index r = 0; r < n_nodes; ++r) {
    const auto idx = read_value<Index>(nin, "node index");
    if (idx < 0 || idx >= n_nodes) throw InvalidArgument("mesh parse error: node index out of range");
    if (filled[idx]) throw InvalidArgument("mesh parse error: duplicate node index");
    filled[idx] = true;
    nodes[idx][0] = read_value<double>(nin, "x coordinate");
    nodes[idx][1] = dim == 2 ? read_value<double>(nin, "y coordinate") : 0.0;
  }

  auto ein = open_section(element_text);
  const auto n_elements = read_value<Index>(ein, "element count");
  const auto k = read_value<int>(ein, "nodes per element");
  if (k != dim + 1) {
    throw InvalidArgument("mesh parse error: " + std::to_string(k) +
                          " nodes per element does not match dimension " + std::to_string(dim));
  }
  if (n_elements <= 0) throw InvalidArgument("mesh parse error: element count must be positive");
  std::vector<Element> elements(static_cast<std::size_t>(n_elements), Element{-1, -1, -1});
  for (auto& el : elements) {
    for (int a = 0; a < k; ++a) el[a] = read_value<Index>(ein, "element node index");
  }
  return Mesh(dim, std::move(nodes), std::move(elements), bc);
}

std::string write_node_text(const Mesh& mesh) {
  std::ostringstream out;
  out.precision(17);
  out << mesh.num_nodes() << ' ' << mesh.dimension() << '\n';
  for (Index i = 0; i < mesh.num_nodes(); ++i) {
    out << i << ' ' << mesh.node(i)[0];
    if (mesh.dimension() == 2) out << ' ' << mesh.node(i)[1];
    out << '\n';
  }
  return out.str();
}

std::string write_element_text(const Mesh& mesh) {
  std::ostringstream out;
  out << mesh.num_elements() << ' ' << mesh.nodes_per_element() << '\n';
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    const auto el = mesh.element(e);
    for (std::size_t a = 0; a < el.size(); ++a) out << (a ? " " : "") << el[a];
    out << '\n';
  }
  return out.str();
}

}  // namespace alp
