#pragma once

#include <Eigen/Dense>
#include <limits>
#include <utility>
#include <vector>

#include "alp/fem_space.hpp"

namespace alp {

/// Eigenvalues below this are counted as negative (bound states).
inline constexpr double kNegativeThreshold = -1e-12;

/// Eigenvalues closer than this, scaled by max(1, max|lambda|), are equal.
inline constexpr double kMultiplicityTolerance = 1e-10;

/// Eigenpairs of the Schrodinger operator -Laplacian - chi*u.
///
/// Modes are stored as full nodal columns (zeros on Dirichlet nodes) and are
/// orthonormal in the mass inner product. The first n_negative columns are
/// the ones used for reconstruction.
struct ModeSet {
  double chi = 1.0;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd modes;
  Index n_negative = 0;
  /// Constant removed from the signal to make it nonnegative (<= 0).
  double shift = 0.0;

  Index size() const noexcept { return eigenvalues.size(); }
  auto mode(Index m) const { return modes.col(m); }
  /// sqrt(-lambda) for the first n_negative modes.
  Eigen::VectorXd kappa() const;
  double multiplicity_tolerance() const;
};

/// The n_modes smallest eigenpairs of K psi - chi W(u) psi = lambda M psi.
ModeSet solve_schrodinger_spectrum(const FemSpace& fem, const Field& u, double chi, Index n_modes);

/// Semi-classical reconstruction (4/chi) sum_m kappa_m psi_m^2 plus the shift.
Field scsa_reconstruct(const ModeSet& modes);

struct CalibrationStep {
  double chi;
  double error;
  Index n_negative;
};

struct CalibrationResult {
  double chi = 0.0;
  ModeSet modes;
  double error = 0.0;
  std::vector<CalibrationStep> history;
};

/// Smallest chi of the doubling sequence chi_initial * 2^j whose reconstruction
/// error ||u0 - u~||_L2 is at most epsilon0, refined by 8 bisection steps
/// against the previous (failing) member. n_modes is enlarged automatically
/// when every computed mode turns out to be negative.
///
/// Throws CalibrationError if no chi <= chi_max meets the tolerance.
CalibrationResult calibrate_chi(const FemSpace& fem, const Field& u0, double epsilon0,
                                double chi_initial, double chi_max, Index n_modes);

/// Returns (u - min(0, min u), min(0, min u)).
std::pair<Field, double> shift_nonnegative(const Field& u);

/// max |G - I| of the mass Gram matrix of the columns.
double gram_deviation(const FemSpace& fem, const Eigen::MatrixXd& modes);

}  // namespace alp
