#include "alp/reconstruction.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>

#include "alp/error.hpp"

namespace alp {

Eigen::MatrixXd squares_gram(const FemSpace& fem, const ModeSet& modes) {
  if (modes.modes.rows() != fem.size()) throw MismatchError("modes do not live on this mesh");
  const Eigen::MatrixXd s = modes.modes.leftCols(modes.n_negative).array().square().matrix();
  return s.transpose() * (fem.mass() * s);
}

ReconstructionCoefficients solve_alpha(const FemSpace& fem, const ModeSet& modes) {
  ReconstructionCoefficients out;
  const Index n = modes.n_negative;
  if (n == 0) return out;

  const Eigen::MatrixXd g = squares_gram(fem, modes);
  Eigen::VectorXd rhs(n);
  for (Index m = 0; m < n; ++m) {
    const auto phi = modes.mode(m);
    const double grad_sq = phi.dot(fem.stiffness() * phi);
    rhs[m] = -(modes.eigenvalues[m] - grad_sq) / modes.chi;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> spectrum(g, Eigen::EigenvaluesOnly);
  const double lo = spectrum.eigenvalues().minCoeff();
  const double hi = spectrum.eigenvalues().maxCoeff();
  out.condition_estimate = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(out.condition_estimate <= kMaxGramCondition)) {
    throw IllConditionedError("Gram-of-squares matrix is ill-conditioned", out.condition_estimate);
  }

  Eigen::LDLT<Eigen::MatrixXd> ldlt(g);
  if (ldlt.info() != Eigen::Success) throw LinearSolverError("LDLT of the Gram-of-squares failed");
  out.alpha = ldlt.solve(rhs);
  if (!out.alpha.allFinite()) throw LinearSolverError("non-finite reconstruction coefficients");
  return out;
}

Field reconstruct_solution(const ModeSet& modes, const Eigen::VectorXd& alpha) {
  if (alpha.size() != modes.n_negative) {
    throw MismatchError("alpha has " + std::to_string(alpha.size()) + " entries, expected " +
                        std::to_string(modes.n_negative));
  }
  Field u = Field::Constant(modes.modes.rows(), modes.shift);
  for (Index p = 0; p < alpha.size(); ++p) {
    u += alpha[p] * modes.mode(p).array().square().matrix();
  }
  return u;
}

}  // namespace alp
