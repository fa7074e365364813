#pragma once

#include <alp/alp.hpp>
#include <alp/error.hpp>
#include <alp/mesh.hpp>
#include <alp/problems.hpp>
#include <boost/property_tree/ptree.hpp>
#include <optional>
#include <string>
#include <vector>

namespace alp::cli {

/// Raised for malformed or inconsistent configuration files (exit code 1).
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class MeshType { Interval, Rectangle, TShape, File };
enum class InitialType { OneSoliton, NSoliton, Gaussians };
enum class ReferenceType { None, Exact, Fkpp };

struct MeshConfig {
  MeshType type = MeshType::Interval;
  BoundaryKind boundary = BoundaryKind::Dirichlet;
  double a = -15.0, b = 15.0;
  Index n_elements = 500;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  Index nx = 10, ny = 10;
  TShape t_shape;
  double cells_per_unit = 12.0;
  std::string node_file, element_file;
};

struct InitialConfig {
  InitialType type = InitialType::OneSoliton;
  double beta = 4.0;
  double x0 = 0.0;
  SolitonData solitons;
  std::vector<double> centers_x, centers_y;
  double sharpness = 100.0;
  /// Steps of the full-order FKPP solver applied to the Gaussians before the run.
  Index pre_evolve_steps = 0;
  double pre_evolve_dt = 2.5e-4;
};

struct ReferenceConfig {
  ReferenceType type = ReferenceType::None;
  double dt = 0.0;  // 0: use the ALP step
  bool lumped_mass = true;
  double travel_distance = 0.0;  // 0: beta * t_final for a one-soliton, else unused
};

struct OutputConfig {
  std::string name = "alp";
  /// Modes of the fresh final-time spectrum used for E_F(N_M, N_inf); 0 disables.
  Index frobenius_reference_modes = 0;
};

struct AlpConfig {
  ProblemSpec problem;
  MeshConfig mesh;
  InitialConfig initial;
  AlpOptions alp;
  ReferenceConfig reference;
  OutputConfig output;
  /// Flat key/value echo of the parsed file.
  boost::property_tree::ptree source;
};

AlpConfig parse_config(const std::string& text);
AlpConfig load_config(const std::string& path);

/// Applies a sweep override such as ("n_modes_M", "25") or ("dt", "1e-3").
void apply_override(AlpConfig& config, const std::string& param, const std::string& value);

}  // namespace alp::cli
