#include "alp/problems.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "alp/error.hpp"

namespace alp {

namespace {

// Weights w_j with sum_j w_j f(x + s_j h) ~ h^3 f'''(x) for the given offsets.
std::array<double, 5> third_derivative_weights(const std::array<int, 5>& offsets) {
  Eigen::Matrix<double, 5, 5> v;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) v(r, c) = std::pow(static_cast<double>(offsets[c]), r);
  Eigen::Matrix<double, 5, 1> rhs = Eigen::Matrix<double, 5, 1>::Zero();
  rhs[3] = 6.0;
  const Eigen::Matrix<double, 5, 1> w = v.fullPivLu().solve(rhs);
  return {w[0], w[1], w[2], w[3], w[4]};
}

double sech2(double z) {
  const double c = std::cosh(z);
  return std::isfinite(c) ? 1.0 / (c * c) : 0.0;
}

}  // namespace

std::string to_string(ProblemKind kind) { return kind == ProblemKind::KdV ? "kdv" : "fkpp"; }

ProblemKind parse_problem_kind(std::string_view text) {
  if (text == "kdv") return ProblemKind::KdV;
  if (text == "fkpp") return ProblemKind::Fkpp;
  throw InvalidArgument("unknown problem kind '" + std::string(text) + "'");
}

void ProblemSpec::validate(const Mesh& mesh) const {
  if (kind == ProblemKind::KdV) {
    if (mesh.dimension() != 1) throw InvalidArgument("KdV requires a 1D mesh");
    if (!mesh.is_uniform_interval()) throw InvalidArgument("KdV requires a uniform 1D mesh");
    if (mesh.num_nodes() < 5) throw InvalidArgument("KdV requires at least 5 nodes");
  } else if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("FKPP reaction rate must be positive");
  }
}

Field kdv_rhs(const FemSpace& fem, const Field& u) {
  fem.require_field(u, "kdv_rhs");
  ProblemSpec{ProblemKind::KdV, 0.0}.validate(fem.mesh());
  const Index n = u.size();
  const double h = fem.mesh().node(1)[0] - fem.mesh().node(0)[0];
  const double h3 = h * h * h;
  static const std::array<double, 5> left = third_derivative_weights({-1, 0, 1, 2, 3});
  static const std::array<double, 5> right = third_derivative_weights({-3, -2, -1, 0, 1});

  Field f = Field::Zero(n);
  for (Index i = 1; i + 1 < n; ++i) {
    const double ux = (u[i + 1] - u[i - 1]) / (2.0 * h);
    double uxxx = 0.0;
    if (i == 1) {
      for (int j = 0; j < 5; ++j) uxxx += left[j] * u[i - 1 + j];
    } else if (i == n - 2) {
      for (int j = 0; j < 5; ++j) uxxx += right[j] * u[i - 3 + j];
    } else {
      uxxx = 0.5 * (u[i + 2] - 2.0 * u[i + 1] + 2.0 * u[i - 1] - u[i - 2]);
    }
    f[i] = -6.0 * u[i] * ux - uxxx / h3;
  }
  return f;
}

Field fkpp_rhs(const FemSpace& fem, const Field& u, double alpha) {
  fem.require_field(u, "fkpp_rhs");
  Field f = -(fem.stiffness() * u).cwiseQuotient(fem.lumped_mass());
  f.array() += alpha * u.array() * (1.0 - u.array());
  if (fem.mesh().boundary_kind() == BoundaryKind::Dirichlet) {
    for (Index b : fem.mesh().boundary_nodes()) f[b] = 0.0;
  }
  return f;
}

Field evaluate_rhs(const ProblemSpec& spec, const FemSpace& fem, const Field& u) {
  return spec.kind == ProblemKind::KdV ? kdv_rhs(fem, u) : fkpp_rhs(fem, u, spec.alpha);
}

double exact_one_soliton(double x, double t, double beta, double x0) {
  return 0.5 * beta * sech2(0.5 * std::sqrt(beta) * (x - x0 - beta * t));
}

void SolitonData::validate() const {
  if (c.size() != k.size() || k.empty()) {
    throw InvalidArgument("soliton data needs equally many c and k values");
  }
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!(c[i] > 0.0) || !(k[i] > 0.0)) throw InvalidArgument("soliton data must be positive");
    if (i > 0 && !(k[i] > k[i - 1])) throw InvalidArgument("k must be strictly increasing");
  }
}

double soliton_log_determinant(double x, double t, const SolitonData& data) {
  const Index n = data.size();
  // I + E C E = D (D^-2 + (E/D) C (E/D)) D with D = diag(max(1, e^theta)).
  Eigen::VectorXd theta(n), lift(n);
  for (Index m = 0; m < n; ++m) {
    const double k = data.k[m];
    theta[m] = k * x - 4.0 * k * k * k * t;
    lift[m] = std::max(0.0, theta[m]);
  }
  Eigen::MatrixXd b(n, n);
  for (Index m = 0; m < n; ++m) {
    for (Index p = 0; p < n; ++p) {
      b(m, p) = data.c[m] * data.c[p] / (data.k[m] + data.k[p]) *
                std::exp(theta[m] - lift[m] + theta[p] - lift[p]);
    }
    b(m, m) += std::exp(-2.0 * lift[m]);
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
  const Eigen::MatrixXd& packed = lu.matrixLU();
  double log_det = 2.0 * lift.sum();
  double sign = lu.permutationP().determinant();
  for (Index m = 0; m < n; ++m) {
    const double d = packed(m, m);
    if (d < 0.0) sign = -sign;
    log_det += std::log(std::abs(d));
  }
  if (!(sign > 0.0) || !std::isfinite(log_det)) {
    throw NumericalError("det(I + A) is not positive and finite");
  }
  return log_det;
}

double exact_n_soliton(double x, double t, const SolitonData& data) {
  data.validate();
  constexpr double h = 1e-3;
  auto f = [&](double s) { return soliton_log_determinant(s, t, data); };
  const double d2 = (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
                     f(x - 2 * h)) / (12.0 * h * h);
  return 2.0 * d2;
}

FkppReference fkpp_reference_solve(const FemSpace& fem, const Field& u0, double alpha, double dt,
                                   Index n_steps, const FkppReferenceOptions& options) {
  fem.require_field(u0, "fkpp_reference_solve");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (n_steps < 0) throw InvalidArgument("n_steps must be nonnegative");

  SparseMatrix mass_full;
  if (options.lumped_mass) {
    mass_full = SparseMatrix(fem.size(), fem.size());
    std::vector<Eigen::Triplet<double>> t;
    for (Index i = 0; i < fem.size(); ++i) t.emplace_back(i, i, fem.lumped_mass()[i]);
    mass_full.setFromTriplets(t.begin(), t.end());
  } else {
    mass_full = fem.mass();
  }
  const SparseMatrix mass = fem.constrained(mass_full);
  const SparseMatrix stiff = fem.constrained(fem.stiffness());
  const SparseMatrix lhs = mass + 0.5 * dt * stiff;
  const SparseMatrix explicit_part = mass - 0.5 * dt * stiff;
  Eigen::SimplicialLDLT<SparseMatrix> solver(lhs);
  if (solver.info() != Eigen::Success) throw LinearSolverError("factorization of CN matrix failed");

  auto reaction = [alpha](const Eigen::VectorXd& v) {
    return (alpha * v.array() * (1.0 - v.array())).matrix().eval();
  };
  auto violation = [](const Field& v) {
    return std::max({0.0, -v.minCoeff(), v.maxCoeff() - 1.0});
  };

  FkppReference out;
  out.dt = dt;
  out.states.reserve(static_cast<std::size_t>(n_steps + 1));
  Eigen::VectorXd u = fem.restrict(u0);
  out.states.push_back(fem.extend(u));
  out.max_invariant_violation = violation(out.states.back());

  Eigen::VectorXd previous_reaction;
  for (Index n = 0; n < n_steps; ++n) {
    const Eigen::VectorXd r = reaction(u);
    const Eigen::VectorXd r_star = n == 0 ? r : (1.5 * r - 0.5 * previous_reaction).eval();
    const Eigen::VectorXd rhs = explicit_part * u + dt * (mass * r_star);
    Eigen::VectorXd next = solver.solve(rhs);
    if (solver.info() != Eigen::Success || !next.allFinite()) {
      throw LinearSolverError("reference solve failed at step " + std::to_string(n + 1));
    }
    previous_reaction = r;
    u = std::move(next);
    out.states.push_back(fem.extend(u));
    out.max_invariant_violation =
        std::max(out.max_invariant_violation, violation(out.states.back()));
  }
  return out;
}

}  // namespace alp
