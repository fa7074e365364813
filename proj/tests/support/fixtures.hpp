#pragma once

#include <alp/alp.hpp>
#include <random>

namespace alp::testing {

/// 2 sech^2(x - x0) on (a, b) with n_elements segments and Dirichlet ends.
struct SolitonCase {
  FemSpace fem;
  Field u0;
};
SolitonCase one_soliton_case(double a = -15.0, double b = 15.0, Index n_elements = 500,
                             double x0 = 0.0);

/// exp(-100 (x - 1/4)^2) + exp(-100 (x - 3/4)^2) on [0, 1], 250 elements, Dirichlet.
SolitonCase fkpp_1d_case();

SolitonData standard_three_soliton();

/// Random skew-symmetric matrix with entries in [-1, 1].
Eigen::MatrixXd random_skew(Index n, std::mt19937& rng);

}  // namespace alp::testing
