#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alp/fem_space.hpp"
#include "alp/lax_operator.hpp"
#include "alp/problems.hpp"
#include "alp/propagation.hpp"
#include "alp/reconstruction.hpp"
#include "alp/spectral.hpp"

namespace alp {

/// How u^0 is formed from the initial modes.
///   Alpha: solve for the reconstruction coefficients (same rule as every later step).
///   Scsa:  semi-classical sum.
enum class InitialReconstruction { Alpha, Scsa };

std::string to_string(InitialReconstruction mode);
InitialReconstruction parse_initial_reconstruction(std::string_view text);

struct AlpOptions {
  double dt = 2.5e-3;
  double t_final = 5.0;
  Index n_modes = 25;

  double chi = 1.0;
  /// Search chi from `chi` upwards by doubling until the error is below epsilon0.
  bool calibrate_chi = false;
  double epsilon0 = 1e-3;
  double chi_max = 1e5;

  EigenvalueLaw eigenvalue_law = EigenvalueLaw::Proposition;
  StepMethod step_method = StepMethod::Taylor2;
  bool promote_modes = true;
  bool reorthonormalize = false;
  double reorthonormalize_threshold = 1e-6;
  InitialReconstruction initial_reconstruction = InitialReconstruction::Alpha;
  /// Record u every k-th step (and always at the final step); 0 disables.
  Index snapshot_stride = 1;

  void validate() const;
  /// ceil(t_final / dt), ignoring roundoff below 1e-9 of a step.
  Index num_steps() const;
};

struct AlpState {
  Index step = 0;
  double time = 0.0;
  ModeSet modes;
  Eigen::VectorXd alpha;
  double alpha_condition = 1.0;
  Field u;
  double gram_deviation = 0.0;
};

struct AlpInitialization {
  AlpState state;
  Field u0;
  /// ||u0 - scsa(u0)||_L2 and the same relative to ||u0||.
  double scsa_error = 0.0;
  double scsa_relative_error = 0.0;
  /// ||u0 - u^0||_L2 / ||u0|| for the reconstruction actually used.
  double initial_relative_error = 0.0;
  std::vector<CalibrationStep> calibration;
};

AlpInitialization alp_initialize(const FemSpace& fem, const AlpOptions& options, const Field& u0);

struct AlpStepResult {
  StepReport report;
  /// M(u^n) used for the step.
  PropagatorMatrix propagator;
};

/// One explicit step: M(u^n), eigenvalues, modes, promotion, alpha, u^{n+1}.
AlpStepResult alp_step(const FemSpace& fem, const ProblemSpec& spec, const AlpOptions& options,
                       AlpState& state);

struct PromotionEvent {
  Index step;
  double time;
  Index mode;
  double eigenvalue;
};

/// Time series of a run. Entry k describes the state after k steps; frobenius[k]
/// and frobenius_tail_error[k] refer to M(u^k).
struct AlpTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> eigenvalues;
  std::vector<Index> n_negative;
  std::vector<double> gram_deviation;
  std::vector<double> frobenius;
  /// E_F(N_M - 1, N_M) of M(u^k).
  std::vector<double> frobenius_tail_error;
  std::vector<Eigen::VectorXd> alpha;
  std::vector<Index> snapshot_steps;
  std::vector<Field> snapshots;
  std::vector<PromotionEvent> promotions;
  Index reorthonormalizations = 0;

  AlpInitialization initialization;
  AlpState final_state;
  PropagatorMatrix final_propagator;
};

using AlpObserver = std::function<void(const AlpState&)>;

/// Initializes from u0 and advances options.num_steps() steps. The observer,
/// if set, sees the initial state and the state after every step.
AlpTrajectory run_alp(const FemSpace& fem, const ProblemSpec& spec, const AlpOptions& options,
                      const Field& u0, const AlpObserver& observer = {});

}  // namespace alp
