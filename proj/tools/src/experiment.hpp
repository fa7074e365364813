#pragma once

#include <alp/alp.hpp>
#include <memory>
#include <optional>
#include <vector>

#include "config.hpp"

namespace alp::cli {

Mesh build_mesh(const MeshConfig& config);

/// u0 on the mesh, including any full-order pre-evolution.
Field initial_field(const AlpConfig& config, const FemSpace& fem);

/// Reference solution sampled at the ALP step times. Entries are empty where
/// no reference value exists (FKPP reference step not dividing the time).
class Reference {
 public:
  Reference(const AlpConfig& config, const FemSpace& fem, const Field& u0);

  bool available() const noexcept { return type_ != ReferenceType::None; }
  std::optional<Field> at(double time) const;
  /// Distance used to normalize the peak error; 0 when not applicable.
  double travel_distance() const noexcept { return travel_distance_; }
  double max_invariant_violation() const noexcept { return violation_; }

 private:
  ReferenceType type_;
  const FemSpace* fem_;
  const AlpConfig* config_;
  FkppReference fkpp_;
  double travel_distance_ = 0.0;
  double violation_ = 0.0;
};

struct ErrorSample {
  Index step;
  double time;
  double l2_error;
  std::optional<double> peak_error;
};

struct RunResult {
  std::shared_ptr<const FemSpace> fem;
  AlpTrajectory trajectory;
  std::vector<ErrorSample> errors;
  std::optional<double> frobenius_indicator;  // E_F(N_M, N_inf) at t_final
  double wall_seconds = 0.0;
};

/// Runs the ALP; with compare=true also samples errors against the reference.
RunResult run_experiment(const AlpConfig& config, bool compare);

}  // namespace alp::cli
