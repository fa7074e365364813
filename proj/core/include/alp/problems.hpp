#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "alp/fem_space.hpp"

namespace alp {

enum class ProblemKind { KdV, Fkpp };

std::string to_string(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view text);

/// Right-hand side F of du/dt = F(u).
struct ProblemSpec {
  ProblemKind kind = ProblemKind::KdV;
  /// Reaction rate (FKPP only).
  double alpha = 0.0;

  /// Throws InvalidArgument when the spec cannot be used on this mesh.
  void validate(const Mesh& mesh) const;
};

/// -6 u u_x - u_xxx by second-order finite differences on a uniform 1D mesh.
/// u_x is centered; u_xxx is centered on 5 points, one-sided next to the ends.
/// Boundary values are zero.
Field kdv_rhs(const FemSpace& fem, const Field& u);

/// Laplacian(u) + alpha u (1 - u) with the lumped-mass discrete Laplacian.
/// Dirichlet nodes get zero.
Field fkpp_rhs(const FemSpace& fem, const Field& u, double alpha);

Field evaluate_rhs(const ProblemSpec& spec, const FemSpace& fem, const Field& u);

/// (beta/2) sech^2(sqrt(beta)/2 (x - x0 - beta t)).
double exact_one_soliton(double x, double t, double beta, double x0 = 0.0);

/// Scattering data of a reflectionless KdV potential.
struct SolitonData {
  std::vector<double> c;
  std::vector<double> k;

  Index size() const noexcept { return static_cast<Index>(k.size()); }
  void validate() const;
};

/// log det(I + A(x, t)) with A_mn = c_m c_n / (k_m + k_n) exp(theta_m + theta_n),
/// theta_m = k_m x - 4 k_m^3 t, evaluated with rescaled exponentials.
double soliton_log_determinant(double x, double t, const SolitonData& data);

/// 2 d^2/dx^2 log det(I + A), second derivative by a 4th-order stencil of step 1e-3.
double exact_n_soliton(double x, double t, const SolitonData& data);
inline double exact_three_soliton(double x, double t, const SolitonData& data) {
  return exact_n_soliton(x, t, data);
}

struct FkppReferenceOptions {
  /// Lumped mass for the time derivative and the reaction load.
  bool lumped_mass = true;
};

struct FkppReference {
  double dt = 0.0;
  std::vector<Field> states;  // states[n] at time n * dt
  /// Largest excursion outside [0, 1] seen over the run.
  double max_invariant_violation = 0.0;

  double time(Index n) const { return dt * static_cast<double>(n); }
};

/// Crank-Nicolson diffusion with Adams-Bashforth-2 reaction; the first step
/// uses explicit Euler for the reaction.
FkppReference fkpp_reference_solve(const FemSpace& fem, const Field& u0, double alpha, double dt,
                                   Index n_steps, const FkppReferenceOptions& options = {});

}  // namespace alp
