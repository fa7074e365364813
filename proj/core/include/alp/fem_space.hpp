#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <memory>
#include <vector>

#include "alp/mesh.hpp"

namespace alp {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Nodal values of a P1 function: one entry per mesh node.
using Field = Eigen::VectorXd;

/// P1 finite-element space on a mesh: consistent mass and stiffness matrices
/// plus the map between full nodal vectors and the unknowns that remain after
/// eliminating Dirichlet nodes.
///
/// Immutable after construction. The matrices are kept unconstrained; the
/// constrained view is obtained with restrict()/constrained().
class FemSpace {
 public:
  explicit FemSpace(Mesh mesh);

  const Mesh& mesh() const noexcept { return *mesh_; }
  Index size() const noexcept { return mesh_->num_nodes(); }

  const SparseMatrix& mass() const noexcept { return mass_; }
  const SparseMatrix& stiffness() const noexcept { return stiffness_; }
  /// Row sums of the mass matrix.
  const Eigen::VectorXd& lumped_mass() const noexcept { return lumped_mass_; }

  /// Indices of the nodes that carry unknowns (all nodes for Neumann).
  const std::vector<Index>& free_nodes() const noexcept { return free_nodes_; }
  Index num_free() const noexcept { return static_cast<Index>(free_nodes_.size()); }
  bool is_constrained() const noexcept { return num_free() != size(); }

  /// Full nodal vector -> free unknowns.
  Eigen::VectorXd restrict(const Eigen::Ref<const Eigen::VectorXd>& full) const;
  /// Free unknowns -> full nodal vector with zeros on Dirichlet nodes.
  Field extend(const Eigen::Ref<const Eigen::VectorXd>& reduced) const;
  Eigen::MatrixXd extend_columns(const Eigen::Ref<const Eigen::MatrixXd>& reduced) const;
  /// Rows and columns of the free nodes.
  SparseMatrix constrained(const SparseMatrix& full) const;

  /// Nodal interpolant of f.
  Field interpolate(const std::function<double(const Point&)>& f) const;

  /// Throws MismatchError unless v has one entry per node.
  void require_field(const Eigen::Ref<const Eigen::VectorXd>& v, const char* what) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  SparseMatrix mass_;
  SparseMatrix stiffness_;
  Eigen::VectorXd lumped_mass_;
  std::vector<Index> free_nodes_;
  std::vector<Index> reduced_index_;  // -1 for constrained nodes
};

inline FemSpace assemble(Mesh mesh) { return FemSpace(std::move(mesh)); }

/// Matrix of <w v_i, v_j> with w interpolated in P1, integrated exactly.
SparseMatrix weighted_mass(const FemSpace& fem, const Field& w);

double l2_inner(const FemSpace& fem, const Field& f, const Field& g);
double l2_norm(const FemSpace& fem, const Field& f);

}  // namespace alp
