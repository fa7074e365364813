#include "alp/propagation.hpp"

#include <cmath>

#include "alp/error.hpp"

namespace alp {

std::string to_string(EigenvalueLaw law) {
  return law == EigenvalueLaw::Proposition ? "proposition" : "chi-free";
}

EigenvalueLaw parse_eigenvalue_law(std::string_view text) {
  if (text == "proposition") return EigenvalueLaw::Proposition;
  if (text == "chi-free") return EigenvalueLaw::ChiFree;
  throw InvalidArgument("unknown eigenvalue law '" + std::string(text) + "'");
}

std::string to_string(StepMethod method) {
  return method == StepMethod::Taylor2 ? "taylor2" : "exponential";
}

StepMethod parse_step_method(std::string_view text) {
  if (text == "taylor2") return StepMethod::Taylor2;
  if (text == "exponential") return StepMethod::Exponential;
  throw InvalidArgument("unknown step method '" + std::string(text) + "'");
}

Eigen::VectorXd step_eigenvalues(const ModeSet& modes, const Eigen::VectorXd& bracket_diagonal,
                                 double dt, EigenvalueLaw law) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (bracket_diagonal.size() != modes.size()) {
    throw MismatchError("bracket diagonal does not match the mode count");
  }
  const double factor = law == EigenvalueLaw::Proposition ? modes.chi : 1.0;
  return modes.eigenvalues - dt * factor * bracket_diagonal;
}

Eigen::VectorXd step_eigenvalues(const FemSpace& fem, const ModeSet& modes, const Field& f_of_u,
                                 double dt, EigenvalueLaw law) {
  fem.require_field(f_of_u, "step_eigenvalues");
  const SparseMatrix w = weighted_mass(fem, f_of_u);
  Eigen::VectorXd diag(modes.size());
  for (Index m = 0; m < modes.size(); ++m) diag[m] = modes.mode(m).dot(w * modes.mode(m));
  return step_eigenvalues(modes, diag, dt, law);
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("matrix_exponential needs a square matrix");
  const Index n = a.rows();
  if (n == 0) return a;
  if (!a.allFinite()) throw NumericalError("matrix_exponential of a non-finite matrix");

  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXd scaled = a / std::ldexp(1.0, squarings);

  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * result.cwiseAbs().maxCoeff()) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

Eigen::MatrixXd mode_transition(const PropagatorMatrix& m, double dt, StepMethod method) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  const Eigen::MatrixXd a = dt * m.entries;
  if (method == StepMethod::Exponential) return matrix_exponential(a);
  return Eigen::MatrixXd::Identity(a.rows(), a.cols()) + a + 0.5 * a * a;
}

std::pair<ModeSet, StepReport> step_modes(const FemSpace& fem, const ModeSet& modes,
                                          const PropagatorMatrix& m, double dt,
                                          StepMethod method) {
  if (m.size() != modes.size()) throw MismatchError("propagator size does not match the modes");
  ModeSet out = modes;
  out.modes = modes.modes * mode_transition(m, dt, method).transpose();
  StepReport report;
  report.gram_deviation = gram_deviation(fem, out.modes);
  report.eigenvalue_increments = Eigen::VectorXd::Zero(modes.size());
  return {std::move(out), std::move(report)};
}

ModeSet exact_exponential_step(const ModeSet& modes, const PropagatorMatrix& m, double dt) {
  if (m.size() != modes.size()) throw MismatchError("propagator size does not match the modes");
  ModeSet out = modes;
  out.modes = modes.modes * mode_transition(m, dt, StepMethod::Exponential).transpose();
  return out;
}

ModeSet reorthonormalize(const FemSpace& fem, const ModeSet& modes) {
  if (modes.modes.rows() != fem.size()) throw MismatchError("modes do not live on this mesh");
  ModeSet out = modes;
  Eigen::MatrixXd& q = out.modes;
  for (Index j = 0; j < q.cols(); ++j) {
    const double original = std::sqrt(std::max(0.0, q.col(j).dot(fem.mass() * q.col(j))));
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i < j; ++i) {
        const double c = q.col(i).dot(fem.mass() * q.col(j));
        q.col(j) -= c * q.col(i);
      }
    }
    const double norm = std::sqrt(std::max(0.0, q.col(j).dot(fem.mass() * q.col(j))));
    if (!(norm > 1e-8 * original) || !(original > 0.0)) {
      throw RankDeficiencyError("mode " + std::to_string(j) + " is numerically dependent");
    }
    q.col(j) /= norm;
  }
  return out;
}

}  // namespace alp
