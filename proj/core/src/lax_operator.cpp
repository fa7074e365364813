#include "alp/lax_operator.hpp"

#include <cmath>
#include <string>

#include "alp/error.hpp"

namespace alp {

Eigen::MatrixXd projected_bracket(const FemSpace& fem, const ModeSet& modes, const Field& f_of_u) {
  fem.require_field(f_of_u, "projected_bracket");
  if (modes.modes.rows() != fem.size()) throw MismatchError("modes do not live on this mesh");
  const SparseMatrix w = weighted_mass(fem, f_of_u);
  return modes.modes.transpose() * (w * modes.modes);
}

PropagatorMatrix propagator_from_bracket(const ModeSet& modes, const Eigen::MatrixXd& bracket,
                                         double time) {
  const Index n = modes.size();
  if (bracket.rows() != n || bracket.cols() != n) {
    throw MismatchError("bracket size does not match the mode count");
  }
  const double tol = modes.multiplicity_tolerance();
  PropagatorMatrix out;
  out.chi = modes.chi;
  out.time = time;
  out.entries = Eigen::MatrixXd::Zero(n, n);
  for (Index m = 0; m < n; ++m) {
    for (Index p = m + 1; p < n; ++p) {
      const double gap = modes.eigenvalues[p] - modes.eigenvalues[m];
      if (std::abs(gap) <= tol) continue;
      const double v = modes.chi * bracket(m, p) / gap;
      out.entries(m, p) = v;
      out.entries(p, m) = -v;
    }
  }
  return out;
}

PropagatorMatrix assemble_propagator(const FemSpace& fem, const ModeSet& modes,
                                     const Field& f_of_u, double time) {
  return propagator_from_bracket(modes, projected_bracket(fem, modes, f_of_u), time);
}

double mode_energy(const PropagatorMatrix& m, Index row) {
  if (row < 0 || row >= m.size()) {
    throw InvalidArgument("mode index " + std::to_string(row) + " out of range");
  }
  return m.entries.row(row).squaredNorm();
}

double frobenius_norm(const PropagatorMatrix& m, Index n) {
  if (n < 0) n = m.size();
  if (n > m.size()) throw InvalidArgument("leading block larger than the matrix");
  return m.entries.topLeftCorner(n, n).norm();
}

double frobenius_error(const PropagatorMatrix& m, Index n_small) {
  if (n_small < 0 || n_small > m.size()) {
    throw InvalidArgument("n_small must lie in [0, " + std::to_string(m.size()) + "]");
  }
  const double full = frobenius_norm(m);
  if (!(full > 0.0)) throw NumericalError("reference Frobenius norm is zero");
  return (full - frobenius_norm(m, n_small)) / full;
}

double frobenius_error(const FemSpace& fem, const ModeSet& modes_full, const Field& f_of_u,
                       Index n_small) {
  return frobenius_error(assemble_propagator(fem, modes_full, f_of_u), n_small);
}

}  // namespace alp
