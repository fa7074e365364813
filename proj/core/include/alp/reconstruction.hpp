#pragma once

#include <Eigen/Dense>

#include "alp/fem_space.hpp"
#include "alp/spectral.hpp"

namespace alp {

struct ReconstructionCoefficients {
  Eigen::VectorXd alpha;
  /// 2-norm condition number of the Gram-of-squares matrix.
  double condition_estimate = 1.0;
};

/// Largest admissible condition number of the Gram-of-squares matrix.
inline constexpr double kMaxGramCondition = 1e12;

/// G_km = <phi_k^2, phi_m^2> for the first n_negative modes.
Eigen::MatrixXd squares_gram(const FemSpace& fem, const ModeSet& modes);

/// Solves sum_k alpha_k <phi_k^2, phi_m^2> = -(lambda_m - <grad phi_m, grad phi_m>) / chi.
/// Throws IllConditionedError above kMaxGramCondition.
ReconstructionCoefficients solve_alpha(const FemSpace& fem, const ModeSet& modes);

/// sum_p alpha_p phi_p^2 + shift.
Field reconstruct_solution(const ModeSet& modes, const Eigen::VectorXd& alpha);

}  // namespace alp
