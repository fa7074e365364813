#include "alp/alp.hpp"

#include <cmath>
#include <utility>

#include "alp/error.hpp"

namespace alp {

std::string to_string(InitialReconstruction mode) {
  return mode == InitialReconstruction::Alpha ? "alpha" : "scsa";
}

InitialReconstruction parse_initial_reconstruction(std::string_view text) {
  if (text == "alpha") return InitialReconstruction::Alpha;
  if (text == "scsa") return InitialReconstruction::Scsa;
  throw InvalidArgument("unknown initial reconstruction '" + std::string(text) + "'");
}

void AlpOptions::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw InvalidArgument("t_final must be positive");
  if (n_modes < 1) throw InvalidArgument("n_modes must be at least 1");
  if (!(chi > 0.0)) throw InvalidArgument("chi must be positive");
  if (!(epsilon0 > 0.0)) throw InvalidArgument("epsilon0 must be positive");
  if (calibrate_chi && !(chi_max >= chi)) throw InvalidArgument("chi_max must be >= chi");
  if (!(reorthonormalize_threshold > 0.0)) {
    throw InvalidArgument("reorthonormalize_threshold must be positive");
  }
  if (snapshot_stride < 0) throw InvalidArgument("snapshot_stride must be nonnegative");
}

Index AlpOptions::num_steps() const {
  return static_cast<Index>(std::ceil(t_final / dt - 1e-9));
}

AlpInitialization alp_initialize(const FemSpace& fem, const AlpOptions& options, const Field& u0) {
  options.validate();
  fem.require_field(u0, "alp_initialize");

  AlpInitialization init;
  init.u0 = u0;
  double chi = options.chi;
  if (options.calibrate_chi) {
    const CalibrationResult cal =
        calibrate_chi(fem, u0, options.epsilon0, options.chi, options.chi_max, options.n_modes);
    chi = cal.chi;
    init.calibration = cal.history;
  }

  auto [shifted, shift] = shift_nonnegative(u0);
  ModeSet modes = solve_schrodinger_spectrum(fem, shifted, chi, options.n_modes);
  modes.shift = shift;

  const double norm0 = l2_norm(fem, u0);
  const Field scsa = scsa_reconstruct(modes);
  init.scsa_error = l2_norm(fem, u0 - scsa);
  init.scsa_relative_error = norm0 > 0.0 ? init.scsa_error / norm0 : init.scsa_error;

  AlpState& s = init.state;
  if (options.initial_reconstruction == InitialReconstruction::Alpha) {
    const ReconstructionCoefficients c = solve_alpha(fem, modes);
    s.alpha = c.alpha;
    s.alpha_condition = c.condition_estimate;
  } else {
    s.alpha = (4.0 / modes.chi) * modes.kappa();
  }
  s.u = reconstruct_solution(modes, s.alpha);
  s.gram_deviation = gram_deviation(fem, modes.modes);
  s.modes = std::move(modes);
  const double err = l2_norm(fem, u0 - s.u);
  init.initial_relative_error = norm0 > 0.0 ? err / norm0 : err;
  return init;
}

AlpStepResult alp_step(const FemSpace& fem, const ProblemSpec& spec, const AlpOptions& options,
                       AlpState& state) {
  const Field f = evaluate_rhs(spec, fem, state.u);
  const Eigen::MatrixXd bracket = projected_bracket(fem, state.modes, f);

  AlpStepResult result;
  result.propagator = propagator_from_bracket(state.modes, bracket, state.time);
  const Eigen::VectorXd lambda =
      step_eigenvalues(state.modes, bracket.diagonal(), options.dt, options.eigenvalue_law);

  auto [modes, report] =
      step_modes(fem, state.modes, result.propagator, options.dt, options.step_method);
  report.eigenvalue_increments = lambda - state.modes.eigenvalues;
  modes.eigenvalues = lambda;

  if (options.reorthonormalize && report.gram_deviation > options.reorthonormalize_threshold) {
    modes = reorthonormalize(fem, modes);
    report.reorthonormalized = true;
    report.gram_deviation = gram_deviation(fem, modes.modes);
  }

  if (options.promote_modes) {
    while (modes.n_negative < modes.size() &&
           modes.eigenvalues[modes.n_negative] < kNegativeThreshold) {
      report.promoted_modes.push_back(modes.n_negative);
      ++modes.n_negative;
    }
  }

  const ReconstructionCoefficients c = solve_alpha(fem, modes);
  state.alpha = c.alpha;
  state.alpha_condition = c.condition_estimate;
  state.u = reconstruct_solution(modes, state.alpha);
  state.modes = std::move(modes);
  state.gram_deviation = report.gram_deviation;
  ++state.step;
  state.time = options.dt * static_cast<double>(state.step);
  result.report = std::move(report);
  return result;
}

AlpTrajectory run_alp(const FemSpace& fem, const ProblemSpec& spec, const AlpOptions& options,
                      const Field& u0, const AlpObserver& observer) {
  spec.validate(fem.mesh());
  AlpTrajectory traj;
  traj.initialization = alp_initialize(fem, options, u0);
  AlpState state = traj.initialization.state;
  const Index n_steps = options.num_steps();

  auto record = [&](const AlpState& s) {
    traj.times.push_back(s.time);
    traj.eigenvalues.push_back(s.modes.eigenvalues);
    traj.n_negative.push_back(s.modes.n_negative);
    traj.gram_deviation.push_back(s.gram_deviation);
    traj.alpha.push_back(s.alpha);
    const bool on_stride = options.snapshot_stride > 0 && s.step % options.snapshot_stride == 0;
    if (on_stride || s.step == n_steps) {
      traj.snapshot_steps.push_back(s.step);
      traj.snapshots.push_back(s.u);
    }
    if (observer) observer(s);
  };
  auto record_propagator = [&](const PropagatorMatrix& m) {
    traj.frobenius.push_back(frobenius_norm(m));
    const double full = traj.frobenius.back();
    traj.frobenius_tail_error.push_back(
        full > 0.0 ? (full - frobenius_norm(m, m.size() - 1)) / full : 0.0);
  };

  record(state);
  for (Index n = 0; n < n_steps; ++n) {
    AlpStepResult r = alp_step(fem, spec, options, state);
    record_propagator(r.propagator);
    for (Index mode : r.report.promoted_modes) {
      traj.promotions.push_back({state.step, state.time, mode, state.modes.eigenvalues[mode]});
    }
    if (r.report.reorthonormalized) ++traj.reorthonormalizations;
    record(state);
  }
  traj.final_propagator =
      assemble_propagator(fem, state.modes, evaluate_rhs(spec, fem, state.u), state.time);
  record_propagator(traj.final_propagator);
  traj.final_state = std::move(state);
  return traj;
}

}  // namespace alp
