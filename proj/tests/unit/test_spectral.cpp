#include <alp/error.hpp>
#include <alp/problems.hpp>
#include <alp/spectral.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"

using namespace alp;
using alp::testing::one_soliton_case;

TEST(Spectrum, LaplacianOnUnitInterval) {
  const FemSpace fem(build_interval_mesh(0.0, 1.0, 400, BoundaryKind::Dirichlet));
  const ModeSet ms = solve_schrodinger_spectrum(fem, Field::Zero(fem.size()), 1.0, 3);
  for (int m = 1; m <= 3; ++m) {
    const double exact = std::pow(m * std::numbers::pi, 2);
    EXPECT_NEAR(ms.eigenvalues[m - 1], exact, 0.01 * exact);
  }
  EXPECT_EQ(ms.n_negative, 0);
}

TEST(Spectrum, OneSolitonHasSingleBoundState) {
  const auto c = one_soliton_case();
  const ModeSet ms = solve_schrodinger_spectrum(c.fem, c.u0, 1.0, 10);
  EXPECT_EQ(ms.n_negative, 1);
  EXPECT_NEAR(ms.eigenvalues[0], -1.0, 5e-3);
  EXPECT_NEAR(ms.kappa()[0], 1.0, 3e-3);
}

TEST(Spectrum, ThreeSolitonFineGrid) {
  const FemSpace fem(build_interval_mesh(-15.0, 15.0, 2000, BoundaryKind::Dirichlet));
  const SolitonData d = alp::testing::standard_three_soliton();
  const Field u0 = fem.interpolate([&](const Point& p) { return exact_n_soliton(p[0], 0.0, d); });
  const ModeSet ms = solve_schrodinger_spectrum(fem, u0, 1.0, 5);
  ASSERT_EQ(ms.n_negative, 3);
  const double expected[3] = {-3.0625, -2.25, -1.0};
  for (int m = 0; m < 3; ++m) EXPECT_NEAR(ms.eigenvalues[m], expected[m], 2e-3);
}

TEST(Spectrum, InvariantsOfReturnedModes) {
  const auto c = one_soliton_case(-15.0, 15.0, 300);
  const ModeSet ms = solve_schrodinger_spectrum(c.fem, c.u0, 1.0, 12);
  EXPECT_LE(gram_deviation(c.fem, ms.modes), 1e-8);
  for (Index m = 1; m < ms.size(); ++m) EXPECT_LE(ms.eigenvalues[m - 1], ms.eigenvalues[m]);
  for (Index m = 0; m < ms.size(); ++m) {
    Index k = 0;
    ms.mode(m).cwiseAbs().maxCoeff(&k);
    EXPECT_GT(ms.modes(k, m), 0.0);
    EXPECT_EQ(ms.modes(0, m), 0.0);
    EXPECT_EQ(ms.modes(c.fem.size() - 1, m), 0.0);
  }
  const SparseMatrix w = weighted_mass(c.fem, c.u0);
  for (Index m = 0; m < ms.size(); ++m) {
    const Eigen::VectorXd psi = ms.mode(m);
    const Eigen::VectorXd r = c.fem.restrict(c.fem.stiffness() * psi - w * psi -
                                             ms.eigenvalues[m] * (c.fem.mass() * psi));
    EXPECT_LE(r.norm(), 1e-6 * c.fem.restrict(c.fem.stiffness() * psi).norm());
  }
}

TEST(Spectrum, Reproducible) {
  const auto c = one_soliton_case(-15.0, 15.0, 200);
  const ModeSet a = solve_schrodinger_spectrum(c.fem, c.u0, 1.0, 6);
  const ModeSet b = solve_schrodinger_spectrum(c.fem, c.u0, 1.0, 6);
  EXPECT_EQ(a.modes, b.modes);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
}

TEST(Spectrum, NegativeCountGrowsWithChi) {
  const auto soliton = one_soliton_case(-15.0, 15.0, 300);
  const auto gauss = alp::testing::fkpp_1d_case();
  for (const auto* c : {&soliton, &gauss}) {
    Index previous = 0;
    for (double chi : {0.5, 1.0, 4.0, 16.0, 64.0, 256.0}) {
      const Index n = solve_schrodinger_spectrum(c->fem, c->u0, chi, 30).n_negative;
      EXPECT_GE(n, previous) << "chi = " << chi;
      previous = n;
    }
  }
}

TEST(Spectrum, Errors) {
  const auto c = one_soliton_case(-15.0, 15.0, 100);
  EXPECT_THROW(solve_schrodinger_spectrum(c.fem, c.u0, 0.0, 3), InvalidArgument);
  EXPECT_THROW(solve_schrodinger_spectrum(c.fem, c.u0, 1.0, 0), InvalidArgument);
  EXPECT_THROW(solve_schrodinger_spectrum(c.fem, c.u0, 1.0, 100), InvalidArgument);
  EXPECT_THROW(solve_schrodinger_spectrum(c.fem, Field::Zero(5), 1.0, 3), MismatchError);
}

TEST(Scsa, NoBoundStatesGiveZero) {
  const FemSpace fem(build_interval_mesh(0.0, 1.0, 50, BoundaryKind::Dirichlet));
  const ModeSet ms = solve_schrodinger_spectrum(fem, Field::Zero(fem.size()), 1.0, 3);
  EXPECT_EQ(scsa_reconstruct(ms), Field::Zero(fem.size()));
}

TEST(Scsa, OneSolitonReconstruction) {
  const auto c = one_soliton_case();
  const ModeSet ms = solve_schrodinger_spectrum(c.fem, c.u0, 1.0, 5);
  EXPECT_LE(l2_norm(c.fem, c.u0 - scsa_reconstruct(ms)), 1e-3);
}

TEST(Scsa, FkppInitialDatumUsesFourModes) {
  const auto c = alp::testing::fkpp_1d_case();
  const ModeSet ms = solve_schrodinger_spectrum(c.fem, c.u0, 500.0, 10);
  EXPECT_EQ(ms.n_negative, 4);
}

TEST(Scsa, ShiftIsAddedBack) {
  const auto c = one_soliton_case(-15.0, 15.0, 300);
  ModeSet ms = solve_schrodinger_spectrum(c.fem, c.u0, 1.0, 3);
  const Field base = scsa_reconstruct(ms);
  ms.shift = -0.5;
  EXPECT_LE((scsa_reconstruct(ms) - (base.array() - 0.5).matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ShiftNonnegative, Cases) {
  const Field pos = Field::LinSpaced(5, 0.0, 2.0);
  auto [a, sa] = shift_nonnegative(pos);
  EXPECT_EQ(a, pos);
  EXPECT_EQ(sa, 0.0);

  auto [b, sb] = shift_nonnegative(Field::Constant(4, -2.0));
  EXPECT_EQ(b, Field::Zero(4));
  EXPECT_EQ(sb, -2.0);

  const Field mixed = (Eigen::VectorXd(4) << 1.5, -0.3, 0.2, -1.1).finished();
  auto [c, sc] = shift_nonnegative(mixed);
  EXPECT_EQ(c.minCoeff(), 0.0);
  EXPECT_EQ(sc, -1.1);
}

TEST(Calibrate, ReturnsInitialChiWhenAlreadyAccurate) {
  const auto c = one_soliton_case();
  const CalibrationResult r = calibrate_chi(c.fem, c.u0, 1e-3, 1.0, 64.0, 10);
  EXPECT_EQ(r.chi, 1.0);
  EXPECT_EQ(r.history.size(), 1u);
  EXPECT_EQ(r.modes.n_negative, 1);
  EXPECT_LE(r.error, 1e-3);
}

TEST(Calibrate, BisectsBetweenBracketingMembers) {
  const auto c = one_soliton_case(-15.0, 15.0, 500);
  const CalibrationResult r = calibrate_chi(c.fem, c.u0, 1e-3, 0.25, 64.0, 10);
  // 0.25 and 0.5 fail, 1 passes, then 8 bisection steps inside (0.5, 1].
  EXPECT_EQ(r.history.size(), 11u);
  EXPECT_GT(r.chi, 0.5);
  EXPECT_LE(r.chi, 1.0);
  EXPECT_LE(r.error, 1e-3);
}

TEST(Calibrate, InfiniteToleranceStopsAfterOneSolve) {
  const auto c = alp::testing::fkpp_1d_case();
  const CalibrationResult r = calibrate_chi(c.fem, c.u0, INFINITY, 500.0, 500.0, 10);
  EXPECT_EQ(r.chi, 500.0);
  EXPECT_EQ(r.history.size(), 1u);
}

TEST(Calibrate, UnreachableToleranceReportsBest) {
  const auto c = alp::testing::fkpp_1d_case();
  try {
    calibrate_chi(c.fem, c.u0, 1e-3, 1.0, 1024.0, 10);
    FAIL() << "expected CalibrationError";
  } catch (const CalibrationError& e) {
    EXPECT_GT(e.best_error(), 1e-3);
    EXPECT_GE(e.best_chi(), 1.0);
    EXPECT_LE(e.best_chi(), 1024.0);
  }
}

TEST(Calibrate, EnlargesModeCountWhenAllModesAreBound) {
  const auto c = alp::testing::fkpp_1d_case();
  const CalibrationResult r = calibrate_chi(c.fem, c.u0, INFINITY, 4000.0, 4000.0, 4);
  EXPECT_LT(r.modes.n_negative, r.modes.size());
}

TEST(Calibrate, RejectsBadArguments) {
  const auto c = one_soliton_case(-15.0, 15.0, 100);
  EXPECT_THROW(calibrate_chi(c.fem, c.u0, 0.0, 1.0, 2.0, 3), InvalidArgument);
  EXPECT_THROW(calibrate_chi(c.fem, c.u0, 1e-3, 2.0, 1.0, 3), InvalidArgument);
  EXPECT_THROW(calibrate_chi(c.fem, c.u0, 1e-3, -1.0, 1.0, 3), InvalidArgument);
}
