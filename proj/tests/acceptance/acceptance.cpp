// Acceptance checks. Prints one PASS/FAIL line per criterion.
// Usage: alp_acceptance [criterion ...]   (no argument: all nine)

#include <alp/alp.hpp>
#include <alp/error.hpp>
#include <alp/metrics.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "config.hpp"
#include "experiment.hpp"
#include "fixtures.hpp"

using namespace alp;
using namespace alp::cli;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

AlpConfig bundled(const char* name) {
  return load_config(std::string(ALP_CONFIG_DIR) + "/" + name + ".ini");
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

double final_l2(const RunResult& r) { return r.errors.back().l2_error; }

// Non-increasing, tolerating at most one rise of at most 10% (relative).
bool non_increasing_one_inversion(const std::vector<double>& v) {
  int rises = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= v[i - 1]) continue;
    if (v[i] > 1.1 * v[i - 1]) return false;
    ++rises;
  }
  return rises <= 1;
}

Outcome scsa_identity() {
  const auto c = alp::testing::one_soliton_case(-15.0, 15.0, 500, 0.0);
  const ModeSet ms = solve_schrodinger_spectrum(c.fem, c.u0, 1.0, 10);
  const double err = l2_norm(c.fem, c.u0 - scsa_reconstruct(ms));
  const double gap = std::abs(ms.eigenvalues[0] + 1.0);
  return {ms.n_negative == 1 && gap <= 5e-3 && err <= 1e-3,
          fmt("N_- = %ld, lambda_1 = %.6f, |lambda_1 + 1| = %.2e (<= 5e-3), L2 error = %.2e (<= 1e-3)",
              static_cast<long>(ms.n_negative), ms.eigenvalues[0], gap, err)};
}

Outcome isospectrality() {
  const AlpConfig cfg = bundled("one_soliton_fine");
  const RunResult r = run_experiment(cfg, false);
  const double lambda = r.trajectory.final_state.modes.eigenvalues[0];
  const double drift = std::abs(lambda + 1.0);
  return {drift <= 1e-4 && cfg.alp.n_modes >= 25,
          fmt("N_M = %ld, T = %g, lambda_1(T) = %.8f, |lambda_1(T) + 1| = %.2e (<= 1e-4)",
              static_cast<long>(cfg.alp.n_modes), cfg.alp.t_final, lambda, drift)};
}

Outcome one_soliton_dynamics() {
  AlpConfig cfg = bundled("one_soliton");
  const RunResult fine = run_experiment(cfg, true);
  apply_override(cfg, "n_modes_M", "10");
  const RunResult coarse = run_experiment(cfg, true);
  const double l2 = final_l2(fine), peak = *fine.errors.back().peak_error;
  const double l2_coarse = final_l2(coarse);
  return {l2 <= 0.10 && peak <= 0.02 && l2_coarse > l2,
          fmt("N_M = 25: L2 = %.4f (<= 0.10), peak = %.4f (<= 0.02); N_M = 10: L2 = %.4f (> %.4f)",
              l2, peak, l2_coarse, l2)};
}

Outcome indicator_trend() {
  AlpConfig base = bundled("one_soliton");
  base.output.frobenius_reference_modes = 100;
  std::vector<double> ef, peak;
  std::string detail;
  for (const char* n : {"10", "15", "20", "25", "50"}) {
    AlpConfig cfg = base;
    apply_override(cfg, "n_modes_M", n);
    const RunResult r = run_experiment(cfg, true);
    ef.push_back(*r.frobenius_indicator);
    peak.push_back(*r.errors.back().peak_error);
    detail += fmt("%sN_M=%s: E_F=%.4f peak=%.4f", detail.empty() ? "" : "; ", n, ef.back(), peak.back());
  }
  return {non_increasing_one_inversion(ef) && non_increasing_one_inversion(peak), detail};
}

Outcome three_soliton() {
  const AlpConfig cfg = bundled("three_soliton");
  const FemSpace fem(build_mesh(cfg.mesh));
  const Field u0 = initial_field(cfg, fem);
  const ModeSet ms = solve_schrodinger_spectrum(fem, u0, 1.0, 6);
  const double expected[3] = {-3.0625, -2.25, -1.0};
  bool spectrum_ok = ms.n_negative == 3;
  for (int m = 0; m < 3 && spectrum_ok; ++m) {
    spectrum_ok = std::abs(ms.eigenvalues[m] - expected[m]) <= 0.05 * std::abs(expected[m]);
  }
  const RunResult r = run_experiment(cfg, false);
  const Index maxima = count_local_maxima(*r.fem, r.trajectory.final_state.u, 0.10);
  const double ef = max_of(r.trajectory.frobenius_tail_error);
  return {spectrum_ok && r.trajectory.n_negative.front() == 3 && maxima == 2 && ef < 0.01,
          fmt("lambda = {%.4f, %.4f, %.4f}, N_- = %ld; final local maxima = %ld (== 2), "
              "max E_F(19,20) = %.4f (< 0.01)",
              ms.eigenvalues[0], ms.eigenvalues[1], ms.eigenvalues[2],
              static_cast<long>(ms.n_negative), static_cast<long>(maxima), ef)};
}

Outcome fkpp_1d() {
  const AlpConfig cfg = bundled("fkpp1d");
  const RunResult r = run_experiment(cfg, true);
  const Index n0 = r.trajectory.n_negative.front();
  double worst = 0.0;
  for (const auto& e : r.errors) worst = std::max(worst, e.l2_error);
  const auto& p = r.trajectory.promotions;
  const double window = 3.0 * cfg.alp.dt + 1e-12;
  const bool timing = p.size() == 2 && std::abs(p[0].time - 1.5e-3) <= window &&
                      std::abs(p[1].time - 2.5e-3) <= window;
  std::string times;
  for (const auto& e : p) times += fmt("%s%.2e", times.empty() ? "" : ", ", e.time);
  return {n0 == 4 && worst <= 0.10 && timing,
          fmt("N_-(0) = %ld (== 4), max relative L2 = %.4f (<= 0.10), promotions at {%s} "
              "(expect 1.5e-3, 2.5e-3 +- 3 steps)",
              static_cast<long>(n0), worst, times.c_str())};
}

Outcome orthonormality_order() {
  const auto c = alp::testing::one_soliton_case(-15.0, 15.0, 500, -5.0);
  const ProblemSpec spec{ProblemKind::KdV, 0.0};
  std::vector<double> defects;
  for (double dt : {2e-2, 1e-2, 5e-3}) {
    AlpOptions o;
    o.dt = dt;
    o.t_final = 10.0 * dt;
    o.n_modes = 25;
    o.promote_modes = false;
    AlpState s = alp_initialize(c.fem, o, c.u0).state;
    for (int k = 0; k < 10; ++k) alp_step(c.fem, spec, o, s);
    defects.push_back(s.gram_deviation);
  }
  const double r1 = defects[0] / defects[1], r2 = defects[1] / defects[2];
  return {r1 >= 11.0 && r1 <= 21.0 && r2 >= 11.0 && r2 <= 21.0,
          fmt("10 steps, dt = 2e-2/1e-2/5e-3: Gram deviation %.3e/%.3e/%.3e, ratios %.2f, %.2f "
              "(in [11, 21])",
              defects[0], defects[1], defects[2], r1, r2)};
}

Outcome structural_properties() {
  double skew = 0.0, identity = 0.0, exp_orth = 0.0, roundtrip = 0.0, flip = 0.0;
  auto inspect = [&](const FemSpace& fem, const ProblemSpec& spec, AlpOptions o, const Field& u0,
                     int steps) {
    AlpState s = alp_initialize(fem, o, u0).state;
    for (int k = 0; k <= steps; ++k) {
      const PropagatorMatrix m =
          assemble_propagator(fem, s.modes, evaluate_rhs(spec, fem, s.u), s.time);
      skew = std::max(skew, (m.entries + m.entries.transpose()).cwiseAbs().maxCoeff());
      double energy = 0.0;
      for (Index r = 0; r < m.size(); ++r) energy += mode_energy(m, r);
      const double f2 = std::pow(frobenius_norm(m), 2);
      if (f2 > 0.0) identity = std::max(identity, std::abs(energy - f2) / f2);
      const ModeSet e = exact_exponential_step(s.modes, m, o.dt);
      exp_orth = std::max(exp_orth, gram_deviation(fem, e.modes) - gram_deviation(fem, s.modes.modes));

      ModeSet flipped = s.modes;
      for (Index j = 0; j < flipped.n_negative; j += 2) flipped.modes.col(j) *= -1.0;
      const Field a = reconstruct_solution(s.modes, solve_alpha(fem, s.modes).alpha);
      const Field b = reconstruct_solution(flipped, solve_alpha(fem, flipped).alpha);
      flip = std::max(flip, (a - b).cwiseAbs().maxCoeff() / std::max(1e-300, a.cwiseAbs().maxCoeff()));
      if (k < steps) alp_step(fem, spec, o, s);
    }

    // Coefficients chosen first, eigenvalues made consistent, then solved for.
    ModeSet ms = s.modes;
    if (ms.n_negative == 0) return;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd truth(ms.n_negative);
    for (Index i = 0; i < truth.size(); ++i) truth[i] = dist(rng);
    const Eigen::MatrixXd g = squares_gram(fem, ms);
    for (Index m = 0; m < ms.n_negative; ++m) {
      ms.eigenvalues[m] = ms.mode(m).dot(fem.stiffness() * ms.mode(m)) - ms.chi * g.row(m).dot(truth);
    }
    const ReconstructionCoefficients cf = solve_alpha(fem, ms);
    const double tol = 1e-14 * cf.condition_estimate;
    roundtrip = std::max(roundtrip, (cf.alpha - truth).cwiseAbs().maxCoeff() / truth.cwiseAbs().maxCoeff() / tol);
  };

  const auto kdv = alp::testing::one_soliton_case(-15.0, 15.0, 500, -5.0);
  AlpOptions ok;
  ok.dt = 2.5e-3;
  ok.n_modes = 15;
  inspect(kdv.fem, {ProblemKind::KdV, 0.0}, ok, kdv.u0, 20);

  const auto fk = alp::testing::fkpp_1d_case();
  AlpOptions of;
  of.dt = 7.5e-5;
  of.n_modes = 10;
  of.chi = 500.0;
  inspect(fk.fem, {ProblemKind::Fkpp, 1e3}, of, fk.u0, 20);

  const bool pass = skew == 0.0 && identity <= 1e-12 && exp_orth <= 1e-12 && roundtrip <= 1.0 &&
                    flip <= 1e-12;
  return {pass, fmt("max |M + M^T| = %.1e (== 0), energy identity %.1e (<= 1e-12), exp step "
                    "orthogonality loss %.1e (<= 1e-12), alpha round trip %.2f x (1e-14 cond) "
                    "(<= 1), sign flip %.1e (<= 1e-12)",
                    skew, identity, exp_orth, roundtrip, flip)};
}

Outcome fkpp_2d() {
  const AlpConfig cfg = bundled("fkpp2d");
  const RunResult r = run_experiment(cfg, false);
  const Index triangles = r.fem->mesh().num_elements();
  const Index n0 = r.trajectory.n_negative.front();
  const double init_err = r.trajectory.initialization.initial_relative_error;
  const auto ext = superlevel_extent(*r.fem, r.trajectory.final_state.u, 0.5);
  const bool pass = triangles >= 2000 && std::abs(n0 - 6) <= 1 && init_err <= 0.15 && ext[0] > ext[1];
  return {pass, fmt("%ld triangles (>= 2000), N_- = %ld (6 +- 1), initial relative error = %.4f "
                    "(<= 0.15), extent of u > 0.5 at T: x %.3f, y %.3f (x > y)",
                    static_cast<long>(triangles), static_cast<long>(n0), init_err, ext[0], ext[1])};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"SCSA identity, one-soliton", scsa_identity},
      {"isospectrality drift, KdV", isospectrality},
      {"one-soliton dynamics", one_soliton_dynamics},
      {"indicator trend", indicator_trend},
      {"three-soliton coalescence", three_soliton},
      {"FKPP-1D", fkpp_1d},
      {"orthonormality order", orthonormality_order},
      {"structural properties", structural_properties},
      {"FKPP-2D, T-shape", fkpp_2d},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (int i = 1; i <= 9; ++i) selected.push_back(i);
  }

  int failures = 0;
  for (int id : selected) {
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    const Criterion& c = criteria[static_cast<std::size_t>(id - 1)];
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, c.name, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
