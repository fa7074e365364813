#include "alp/fem_space.hpp"

#include <array>
#include <cmath>
#include <string>

#include "alp/error.hpp"

namespace alp {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Gradients of the barycentric coordinates of a triangle (rows: local node).
std::array<std::array<double, 2>, 3> barycentric_gradients(const Point& a, const Point& b,
                                                          const Point& c, double area) {
  const double inv = 1.0 / (2.0 * area);
  return {{{(b[1] - c[1]) * inv, (c[0] - b[0]) * inv},
           {(c[1] - a[1]) * inv, (a[0] - c[0]) * inv},
           {(a[1] - b[1]) * inv, (b[0] - a[0]) * inv}}};
}

// Exact integral over a simplex of lambda_i lambda_j lambda_k divided by its
// measure: d! a! b! c! / (d + a + b + c)! with a, b, c the multiplicities.
double triple_product_weight(int dim, int i, int j, int k) {
  int mult[3] = {0, 0, 0};
  ++mult[i];
  ++mult[j];
  ++mult[k];
  auto fact = [](int n) {
    double f = 1.0;
    for (int m = 2; m <= n; ++m) f *= m;
    return f;
  };
  return fact(dim) * fact(mult[0]) * fact(mult[1]) * fact(mult[2]) / fact(dim + 3);
}

}  // namespace

FemSpace::FemSpace(Mesh mesh) : mesh_(std::make_shared<const Mesh>(std::move(mesh))) {
  const Mesh& m = *mesh_;
  const Index n = m.num_nodes();
  const int k = m.nodes_per_element();
  Triplets mt, kt;
  mt.reserve(static_cast<std::size_t>(m.num_elements() * k * k));
  kt.reserve(mt.capacity());

  for (Index e = 0; e < m.num_elements(); ++e) {
    const auto el = m.element(e);
    const double meas = m.element_measure(e);
    if (!(meas > 0.0)) throw NumericalError("singular element geometry in assembly");
    if (m.dimension() == 1) {
      const double h = meas;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          mt.emplace_back(el[a], el[b], h / 6.0 * (a == b ? 2.0 : 1.0));
          kt.emplace_back(el[a], el[b], (a == b ? 1.0 : -1.0) / h);
        }
      }
    } else {
      const auto grad = barycentric_gradients(m.node(el[0]), m.node(el[1]), m.node(el[2]), meas);
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          mt.emplace_back(el[a], el[b], meas / 12.0 * (a == b ? 2.0 : 1.0));
          kt.emplace_back(el[a], el[b],
                          meas * (grad[a][0] * grad[b][0] + grad[a][1] * grad[b][1]));
        }
      }
    }
  }
  mass_.resize(n, n);
  mass_.setFromTriplets(mt.begin(), mt.end());
  stiffness_.resize(n, n);
  stiffness_.setFromTriplets(kt.begin(), kt.end());
  lumped_mass_ = mass_ * Eigen::VectorXd::Ones(n);

  reduced_index_.assign(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    if (m.boundary_kind() == BoundaryKind::Dirichlet && m.is_boundary(i)) continue;
    reduced_index_[i] = static_cast<Index>(free_nodes_.size());
    free_nodes_.push_back(i);
  }
  if (free_nodes_.empty()) throw InvalidArgument("no free nodes left after Dirichlet elimination");
}

Eigen::VectorXd FemSpace::restrict(const Eigen::Ref<const Eigen::VectorXd>& full) const {
  require_field(full, "restrict");
  Eigen::VectorXd out(num_free());
  for (Index r = 0; r < num_free(); ++r) out[r] = full[free_nodes_[r]];
  return out;
}

Field FemSpace::extend(const Eigen::Ref<const Eigen::VectorXd>& reduced) const {
  if (reduced.size() != num_free()) throw MismatchError("extend: wrong number of free values");
  Field out = Field::Zero(size());
  for (Index r = 0; r < num_free(); ++r) out[free_nodes_[r]] = reduced[r];
  return out;
}

Eigen::MatrixXd FemSpace::extend_columns(const Eigen::Ref<const Eigen::MatrixXd>& reduced) const {
  if (reduced.rows() != num_free()) throw MismatchError("extend: wrong number of free rows");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(size(), reduced.cols());
  for (Index r = 0; r < num_free(); ++r) out.row(free_nodes_[r]) = reduced.row(r);
  return out;
}

SparseMatrix FemSpace::constrained(const SparseMatrix& full) const {
  if (full.rows() != size() || full.cols() != size()) {
    throw MismatchError("constrained: matrix does not match the mesh");
  }
  Triplets t;
  t.reserve(static_cast<std::size_t>(full.nonZeros()));
  for (Index col = 0; col < full.outerSize(); ++col) {
    const Index rc = reduced_index_[col];
    if (rc < 0) continue;
    for (SparseMatrix::InnerIterator it(full, col); it; ++it) {
      const Index rr = reduced_index_[it.row()];
      if (rr >= 0) t.emplace_back(rr, rc, it.value());
    }
  }
  SparseMatrix out(num_free(), num_free());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

Field FemSpace::interpolate(const std::function<double(const Point&)>& f) const {
  Field out(size());
  for (Index i = 0; i < size(); ++i) out[i] = f(mesh_->node(i));
  return out;
}

void FemSpace::require_field(const Eigen::Ref<const Eigen::VectorXd>& v, const char* what) const {
  if (v.size() != size()) {
    throw MismatchError(std::string(what) + ": field has " + std::to_string(v.size()) +
                        " values but the mesh has " + std::to_string(size()) + " nodes");
  }
}

SparseMatrix weighted_mass(const FemSpace& fem, const Field& w) {
  fem.require_field(w, "weighted_mass");
  const Mesh& m = fem.mesh();
  const int dim = m.dimension();
  const int k = m.nodes_per_element();

  double weight[3][3][3];
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) weight[a][b][c] = triple_product_weight(dim, a, b, c);

  Triplets t;
  t.reserve(static_cast<std::size_t>(m.num_elements() * k * k));
  for (Index e = 0; e < m.num_elements(); ++e) {
    const auto el = m.element(e);
    const double meas = m.element_measure(e);
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        double v = 0.0;
        for (int c = 0; c < k; ++c) v += weight[a][b][c] * w[el[c]];
        t.emplace_back(el[a], el[b], meas * v);
      }
    }
  }
  SparseMatrix out(fem.size(), fem.size());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

double l2_inner(const FemSpace& fem, const Field& f, const Field& g) {
  fem.require_field(f, "l2_inner");
  fem.require_field(g, "l2_inner");
  return f.dot(fem.mass() * g);
}

double l2_norm(const FemSpace& fem, const Field& f) {
  return std::sqrt(std::max(0.0, l2_inner(fem, f, f)));
}

}  // namespace alp
