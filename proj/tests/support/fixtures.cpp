#include "fixtures.hpp"

#include <cmath>

namespace alp::testing {

SolitonCase one_soliton_case(double a, double b, Index n_elements, double x0) {
  FemSpace fem(build_interval_mesh(a, b, n_elements, BoundaryKind::Dirichlet));
  Field u0 = fem.interpolate([x0](const Point& p) { return exact_one_soliton(p[0], 0.0, 4.0, x0); });
  return {std::move(fem), std::move(u0)};
}

SolitonCase fkpp_1d_case() {
  FemSpace fem(build_interval_mesh(0.0, 1.0, 250, BoundaryKind::Dirichlet));
  Field u0 = fem.interpolate([](const Point& p) {
    const double x = p[0];
    return std::exp(-100.0 * (x - 0.25) * (x - 0.25)) + std::exp(-100.0 * (x - 0.75) * (x - 0.75));
  });
  for (Index b : fem.mesh().boundary_nodes()) u0[b] = 0.0;
  return {std::move(fem), std::move(u0)};
}

SolitonData standard_three_soliton() { return {{0.05, 0.15, 10.0}, {1.0, 1.5, 1.75}}; }

Eigen::MatrixXd random_skew(Index n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      a(i, j) = dist(rng);
      a(j, i) = -a(i, j);
    }
  }
  return a;
}

}  // namespace alp::testing
