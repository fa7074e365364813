#include "experiment.hpp"

#include <alp/metrics.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace alp::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mesh file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Mesh build_mesh(const MeshConfig& m) {
  switch (m.type) {
    case MeshType::Interval:
      return build_interval_mesh(m.a, m.b, m.n_elements, m.boundary);
    case MeshType::Rectangle:
      return build_structured_rect_mesh({m.x0, m.x1}, {m.y0, m.y1}, m.nx, m.ny, m.boundary);
    case MeshType::TShape: {
      if (!(m.cells_per_unit > 0.0)) throw ConfigError("mesh.cells_per_unit must be positive");
      const auto rects = t_shape_rects(m.t_shape);
      return build_rect_union_mesh(rects, 1.0 / m.cells_per_unit, m.boundary);
    }
    case MeshType::File:
      if (m.node_file.empty() || m.element_file.empty()) {
        throw ConfigError("mesh.node_file and mesh.element_file are required for type = file");
      }
      return load_triangle_mesh(read_file(m.node_file), read_file(m.element_file), m.boundary);
  }
  throw ConfigError("unknown mesh type");
}

Field initial_field(const AlpConfig& config, const FemSpace& fem) {
  const InitialConfig& init = config.initial;
  switch (init.type) {
    case InitialType::OneSoliton:
      return fem.interpolate(
          [&](const Point& p) { return exact_one_soliton(p[0], 0.0, init.beta, init.x0); });
    case InitialType::NSoliton:
      init.solitons.validate();
      return fem.interpolate(
          [&](const Point& p) { return exact_n_soliton(p[0], 0.0, init.solitons); });
    case InitialType::Gaussians: {
      Field u = fem.interpolate([&](const Point& p) {
        double v = 0.0;
        for (std::size_t i = 0; i < init.centers_x.size(); ++i) {
          const double dx = p[0] - init.centers_x[i];
          const double dy = init.centers_y.empty() ? 0.0 : p[1] - init.centers_y[i];
          v += std::exp(-init.sharpness * (dx * dx + dy * dy));
        }
        return v;
      });
      if (init.pre_evolve_steps > 0) {
        if (config.problem.kind != ProblemKind::Fkpp) {
          throw ConfigError("initial.pre_evolve_steps requires problem.kind = fkpp");
        }
        u = fkpp_reference_solve(fem, u, config.problem.alpha, init.pre_evolve_dt,
                                 init.pre_evolve_steps, {config.reference.lumped_mass})
                .states.back();
      }
      if (fem.mesh().boundary_kind() == BoundaryKind::Dirichlet) {
        for (Index b : fem.mesh().boundary_nodes()) u[b] = 0.0;
      }
      return u;
    }
  }
  throw ConfigError("unknown initial condition type");
}

Reference::Reference(const AlpConfig& config, const FemSpace& fem, const Field& u0)
    : type_(config.reference.type), fem_(&fem), config_(&config) {
  if (type_ == ReferenceType::Exact) {
    if (config.initial.type == InitialType::Gaussians) {
      throw ConfigError("no exact solution is known for gaussian initial data");
    }
    if (config.initial.type == InitialType::OneSoliton) {
      travel_distance_ = config.reference.travel_distance > 0.0
                             ? config.reference.travel_distance
                             : config.initial.beta * config.alp.t_final;
    } else {
      travel_distance_ = config.reference.travel_distance;
    }
  } else if (type_ == ReferenceType::Fkpp) {
    const double dt = config.reference.dt > 0.0 ? config.reference.dt : config.alp.dt;
    const auto steps = static_cast<Index>(std::ceil(config.alp.t_final / dt - 1e-9));
    fkpp_ = fkpp_reference_solve(fem, u0, config.problem.alpha, dt, steps,
                                 {config.reference.lumped_mass});
    violation_ = fkpp_.max_invariant_violation;
    travel_distance_ = config.reference.travel_distance;
  }
}

std::optional<Field> Reference::at(double time) const {
  switch (type_) {
    case ReferenceType::None:
      return std::nullopt;
    case ReferenceType::Exact: {
      const InitialConfig& init = config_->initial;
      if (init.type == InitialType::OneSoliton) {
        return fem_->interpolate(
            [&](const Point& p) { return exact_one_soliton(p[0], time, init.beta, init.x0); });
      }
      return fem_->interpolate(
          [&](const Point& p) { return exact_n_soliton(p[0], time, init.solitons); });
    }
    case ReferenceType::Fkpp: {
      const double k = time / fkpp_.dt;
      const auto n = static_cast<Index>(std::llround(k));
      if (std::abs(k - static_cast<double>(n)) > 1e-9 * std::max(1.0, k)) return std::nullopt;
      if (n < 0 || n >= static_cast<Index>(fkpp_.states.size())) return std::nullopt;
      return fkpp_.states[static_cast<std::size_t>(n)];
    }
  }
  return std::nullopt;
}

RunResult run_experiment(const AlpConfig& config, bool compare) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.fem = std::make_shared<const FemSpace>(build_mesh(config.mesh));
  const FemSpace& fem = *result.fem;
  config.problem.validate(fem.mesh());
  const Field u0 = initial_field(config, fem);

  std::optional<Reference> reference;
  if (compare) {
    if (config.reference.type == ReferenceType::None) {
      throw ConfigError("compare needs a reference (reference.type = exact or fkpp)");
    }
    reference.emplace(config, fem, u0);
  }
  const bool one_d = fem.mesh().dimension() == 1;

  auto observer = [&](const AlpState& s) {
    if (!reference) return;
    const auto ref = reference->at(s.time);
    if (!ref) return;
    ErrorSample e{s.step, s.time, metric_l2_relative_error(fem, s.u, *ref), std::nullopt};
    if (one_d && reference->travel_distance() > 0.0) {
      e.peak_error = metric_peak_position_error(fem, s.u, *ref, reference->travel_distance());
    }
    result.errors.push_back(e);
  };
  result.trajectory = run_alp(fem, config.problem, config.alp, u0, observer);

  const Index n_ref = config.output.frobenius_reference_modes;
  if (n_ref > 0) {
    const AlpState& s = result.trajectory.final_state;
    if (n_ref < config.alp.n_modes) {
      throw ConfigError("output.frobenius_reference_modes must be >= alp.n_modes_M");
    }
    auto [shifted, shift] = shift_nonnegative(s.u);
    const ModeSet fresh = solve_schrodinger_spectrum(fem, shifted, s.modes.chi, n_ref);
    result.frobenius_indicator =
        frobenius_error(fem, fresh, evaluate_rhs(config.problem, fem, s.u), config.alp.n_modes);
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace alp::cli
