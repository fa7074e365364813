#include "alp/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "alp/error.hpp"

namespace alp {

namespace {

void fix_signs(Eigen::MatrixXd& modes) {
  for (Index j = 0; j < modes.cols(); ++j) {
    Index k = 0;
    modes.col(j).cwiseAbs().maxCoeff(&k);
    if (modes(k, j) < 0.0) modes.col(j) *= -1.0;
  }
}

Index count_negative(const Eigen::VectorXd& lambda) {
  Index n = 0;
  while (n < lambda.size() && lambda[n] < kNegativeThreshold) ++n;
  return n;
}

}  // namespace

Eigen::VectorXd ModeSet::kappa() const {
  return (-eigenvalues.head(n_negative)).cwiseMax(0.0).cwiseSqrt();
}

double ModeSet::multiplicity_tolerance() const {
  const double scale = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return kMultiplicityTolerance * std::max(1.0, scale);
}

ModeSet solve_schrodinger_spectrum(const FemSpace& fem, const Field& u, double chi, Index n_modes) {
  fem.require_field(u, "solve_schrodinger_spectrum");
  if (!(chi > 0.0) || !std::isfinite(chi)) throw InvalidArgument("chi must be positive");
  if (n_modes < 1 || n_modes > fem.num_free()) {
    throw InvalidArgument("n_modes must lie in [1, " + std::to_string(fem.num_free()) + "], got " +
                          std::to_string(n_modes));
  }

  const SparseMatrix w = weighted_mass(fem, u);
  const SparseMatrix a_full = fem.stiffness() - chi * w;
  const Eigen::MatrixXd a = Eigen::MatrixXd(fem.constrained(a_full));
  const Eigen::MatrixXd b = Eigen::MatrixXd(fem.constrained(fem.mass()));

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, b,
                                                                   Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw EigenSolverError("generalized eigensolver failed");

  ModeSet out;
  out.chi = chi;
  out.eigenvalues = solver.eigenvalues().head(n_modes);
  out.modes = fem.extend_columns(Eigen::MatrixXd(solver.eigenvectors().leftCols(n_modes)));
  fix_signs(out.modes);
  out.n_negative = count_negative(out.eigenvalues);

  for (Index m = 0; m < n_modes; ++m) {
    const Eigen::VectorXd psi = out.modes.col(m);
    const Eigen::VectorXd kp = fem.stiffness() * psi;
    const Eigen::VectorXd wp = chi * (w * psi);
    const Eigen::VectorXd mp = out.eigenvalues[m] * (fem.mass() * psi);
    const Eigen::VectorXd r = fem.restrict(kp - wp - mp);
    const double scale = fem.restrict(kp).norm() + fem.restrict(wp).norm() + fem.restrict(mp).norm();
    if (r.norm() > 1e-6 * std::max(scale, 1e-300)) {
      throw EigenSolverError("eigen-residual too large for mode " + std::to_string(m));
    }
  }
  return out;
}

Field scsa_reconstruct(const ModeSet& modes) {
  Field u = Field::Constant(modes.modes.rows(), modes.shift);
  const Eigen::VectorXd kappa = modes.kappa();
  for (Index m = 0; m < modes.n_negative; ++m) {
    u += (4.0 / modes.chi) * kappa[m] * modes.mode(m).array().square().matrix();
  }
  return u;
}

std::pair<Field, double> shift_nonnegative(const Field& u) {
  if (u.size() == 0) return {u, 0.0};
  const double shift = std::min(0.0, u.minCoeff());
  return {(u.array() - shift).matrix(), shift};
}

double gram_deviation(const FemSpace& fem, const Eigen::MatrixXd& modes) {
  if (modes.rows() != fem.size()) throw MismatchError("gram_deviation: wrong number of rows");
  if (modes.cols() == 0) return 0.0;
  const Eigen::MatrixXd g = modes.transpose() * (fem.mass() * modes);
  return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

CalibrationResult calibrate_chi(const FemSpace& fem, const Field& u0, double epsilon0,
                                double chi_initial, double chi_max, Index n_modes) {
  if (!(epsilon0 > 0.0)) throw InvalidArgument("epsilon0 must be positive");
  if (!(chi_initial > 0.0) || !(chi_max >= chi_initial)) {
    throw InvalidArgument("need 0 < chi_initial <= chi_max");
  }
  auto [shifted, shift] = shift_nonnegative(u0);
  CalibrationResult result;

  auto evaluate = [&](double chi) {
    Index nm = std::min(n_modes, fem.num_free());
    ModeSet ms = solve_schrodinger_spectrum(fem, shifted, chi, nm);
    while (ms.n_negative == ms.size() && nm < fem.num_free()) {
      nm = std::min(2 * nm, fem.num_free());
      ms = solve_schrodinger_spectrum(fem, shifted, chi, nm);
    }
    ms.shift = shift;
    const double err = l2_norm(fem, u0 - scsa_reconstruct(ms));
    result.history.push_back({chi, err, ms.n_negative});
    return std::make_pair(std::move(ms), err);
  };

  double best_chi = chi_initial;
  double best_err = std::numeric_limits<double>::infinity();
  double previous = 0.0;
  for (double chi = chi_initial; chi <= chi_max; chi *= 2.0) {
    auto [ms, err] = evaluate(chi);
    if (err < best_err) {
      best_err = err;
      best_chi = chi;
    }
    if (err <= epsilon0) {
      result.chi = chi;
      result.modes = std::move(ms);
      result.error = err;
      if (previous > 0.0) {
        double lo = previous;
        double hi = chi;
        for (int it = 0; it < 8; ++it) {
          const double mid = 0.5 * (lo + hi);
          auto [mid_modes, mid_err] = evaluate(mid);
          if (mid_err <= epsilon0) {
            hi = mid;
            result.chi = mid;
            result.modes = std::move(mid_modes);
            result.error = mid_err;
          } else {
            lo = mid;
          }
        }
      }
      return result;
    }
    previous = chi;
  }
  throw CalibrationError("reconstruction tolerance " + std::to_string(epsilon0) +
                             " not reached for chi <= " + std::to_string(chi_max),
                         best_chi, best_err);
}

}  // namespace alp
