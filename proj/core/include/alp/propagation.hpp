#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "alp/fem_space.hpp"
#include "alp/lax_operator.hpp"
#include "alp/spectral.hpp"

namespace alp {

/// Explicit Euler law for the eigenvalues.
///   Proposition:   lambda -= dt * chi * <F psi, psi>
///   ChiFree: lambda -= dt * <F psi, psi>
enum class EigenvalueLaw { Proposition, ChiFree };

/// Mode update: second-order truncation I + dt M + dt^2 M^2 / 2, or exp(dt M).
enum class StepMethod { Taylor2, Exponential };

std::string to_string(EigenvalueLaw law);
EigenvalueLaw parse_eigenvalue_law(std::string_view text);
std::string to_string(StepMethod method);
StepMethod parse_step_method(std::string_view text);

struct StepReport {
  double gram_deviation = 0.0;
  Eigen::VectorXd eigenvalue_increments;
  std::vector<Index> promoted_modes;
  bool reorthonormalized = false;
};

/// Eigenvalues after one step, given the diagonal of the projected bracket.
Eigen::VectorXd step_eigenvalues(const ModeSet& modes, const Eigen::VectorXd& bracket_diagonal,
                                 double dt, EigenvalueLaw law = EigenvalueLaw::Proposition);
Eigen::VectorXd step_eigenvalues(const FemSpace& fem, const ModeSet& modes, const Field& f_of_u,
                                 double dt, EigenvalueLaw law = EigenvalueLaw::Proposition);

/// exp(a) by scaling and squaring with a Taylor series.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a);

/// The coefficient matrix T applied to the modes: psi_new_m = sum_p T_mp psi_p.
Eigen::MatrixXd mode_transition(const PropagatorMatrix& m, double dt, StepMethod method);

/// Advances the mode columns; eigenvalues and n_negative are copied unchanged.
std::pair<ModeSet, StepReport> step_modes(const FemSpace& fem, const ModeSet& modes,
                                          const PropagatorMatrix& m, double dt,
                                          StepMethod method = StepMethod::Taylor2);

ModeSet exact_exponential_step(const ModeSet& modes, const PropagatorMatrix& m, double dt);

/// Modified Gram-Schmidt (two passes) in the mass inner product.
/// Throws RankDeficiencyError when a mode is numerically dependent on the previous ones.
ModeSet reorthonormalize(const FemSpace& fem, const ModeSet& modes);

}  // namespace alp
