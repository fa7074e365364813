#pragma once

#include <Eigen/Dense>

#include "alp/fem_space.hpp"
#include "alp/spectral.hpp"

namespace alp {

/// Reduced Lax propagator: M_mp = chi <F(u) psi_m, psi_p> / (lambda_p - lambda_m),
/// zero on the diagonal and on equal-eigenvalue pairs.
struct PropagatorMatrix {
  Eigen::MatrixXd entries;
  double chi = 1.0;
  double time = 0.0;

  Index size() const noexcept { return entries.rows(); }
};

/// B_mp = <F psi_m, psi_p> for all pairs, via one weighted mass matrix.
Eigen::MatrixXd projected_bracket(const FemSpace& fem, const ModeSet& modes, const Field& f_of_u);

/// Builds M from a precomputed bracket. Only the upper triangle of the
/// bracket is read; the lower one is its mirror with opposite sign.
PropagatorMatrix propagator_from_bracket(const ModeSet& modes, const Eigen::MatrixXd& bracket,
                                         double time = 0.0);

PropagatorMatrix assemble_propagator(const FemSpace& fem, const ModeSet& modes,
                                     const Field& f_of_u, double time = 0.0);

/// Row energy sum_n M_mn^2.
double mode_energy(const PropagatorMatrix& m, Index row);

/// Frobenius norm of the leading n x n block (n < 0: whole matrix).
double frobenius_norm(const PropagatorMatrix& m, Index n = -1);

/// (F_full - F_n) / F_full on the leading principal submatrix.
double frobenius_error(const PropagatorMatrix& m, Index n_small);
double frobenius_error(const FemSpace& fem, const ModeSet& modes_full, const Field& f_of_u,
                       Index n_small);

}  // namespace alp
