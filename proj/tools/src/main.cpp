#include <CLI11.hpp>
#include <alp/error.hpp>
#include <alp/spectral.hpp>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "config.hpp"
#include "experiment.hpp"
#include "output.hpp"

namespace fs = std::filesystem;
using namespace alp;
using namespace alp::cli;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

void report_run(const RunResult& run) {
  const AlpTrajectory& t = run.trajectory;
  std::cout << "steps " << t.times.size() - 1 << ", N_- " << t.n_negative.front() << " -> "
            << t.final_state.modes.n_negative << ", lambda_1(T) " << t.final_state.modes.eigenvalues[0]
            << ", promotions " << t.promotions.size();
  if (!run.errors.empty()) std::cout << ", final L2 error " << run.errors.back().l2_error;
  if (!run.errors.empty() && run.errors.back().peak_error) {
    std::cout << ", final peak error " << *run.errors.back().peak_error;
  }
  std::cout << " (" << run.wall_seconds << " s)\n";
}

int cmd_run(const std::string& config_path, const fs::path& out, bool compare) {
  const AlpConfig config = load_config(config_path);
  const RunResult run = run_experiment(config, compare);
  write_run_outputs(out, config, run, compare);
  report_run(run);
  return EXIT_SUCCESS;
}

std::vector<std::string> split_values(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw ConfigError("--values must list at least one value");
  return out;
}

int cmd_sweep(const std::string& config_path, const fs::path& out, const std::string& param,
              const std::string& values) {
  const AlpConfig base = load_config(config_path);
  const bool compare = base.reference.type != ReferenceType::None;
  std::ostringstream csv;
  csv.imbue(std::locale::classic());
  csv.precision(17);
  csv << "param,value,n_steps,chi,n_negative_initial,n_negative_final,lambda_1_final,"
         "frobenius_final,max_frobenius_tail_error,frobenius_indicator,final_l2_error,"
         "max_l2_error,final_peak_error,wall_seconds\n";
  for (const std::string& value : split_values(values)) {
    AlpConfig config = base;
    apply_override(config, param, value);
    config.output.name = base.output.name + "_" + param + "_" + value;
    const RunResult run = run_experiment(config, compare);
    write_run_outputs(out, config, run, compare);
    std::cout << param << " = " << value << ": ";
    report_run(run);

    const AlpTrajectory& t = run.trajectory;
    double max_tail = 0.0, max_l2 = 0.0;
    for (double e : t.frobenius_tail_error) max_tail = std::max(max_tail, e);
    for (const auto& e : run.errors) max_l2 = std::max(max_l2, e.l2_error);
    csv << param << ',' << value << ',' << t.times.size() - 1 << ',' << t.final_state.modes.chi
        << ',' << t.n_negative.front() << ',' << t.final_state.modes.n_negative << ','
        << t.final_state.modes.eigenvalues[0] << ',' << t.frobenius.back() << ',' << max_tail << ',';
    if (run.frobenius_indicator) csv << *run.frobenius_indicator;
    csv << ',';
    if (!run.errors.empty()) csv << run.errors.back().l2_error << ',' << max_l2;
    else csv << ',';
    csv << ',';
    if (!run.errors.empty() && run.errors.back().peak_error) csv << *run.errors.back().peak_error;
    csv << ',' << run.wall_seconds << '\n';
  }
  fs::create_directories(out);
  write_atomically(out / (base.output.name + "_sweep.csv"), csv.str());
  return EXIT_SUCCESS;
}

int cmd_spectrum(const std::string& config_path, const fs::path& out, Index n_modes) {
  const AlpConfig config = load_config(config_path);
  const FemSpace fem(build_mesh(config.mesh));
  const Field u0 = initial_field(config, fem);
  if (n_modes <= 0) n_modes = config.alp.n_modes;

  std::vector<CalibrationStep> history;
  double chi = config.alp.chi;
  if (config.alp.calibrate_chi) {
    const CalibrationResult cal =
        calibrate_chi(fem, u0, config.alp.epsilon0, config.alp.chi, config.alp.chi_max, n_modes);
    chi = cal.chi;
    history = cal.history;
  }
  auto [shifted, shift] = shift_nonnegative(u0);
  ModeSet modes = solve_schrodinger_spectrum(fem, shifted, chi, n_modes);
  modes.shift = shift;
  const double err = l2_norm(fem, u0 - scsa_reconstruct(modes));
  const double norm = l2_norm(fem, u0);

  std::ostringstream csv;
  csv.imbue(std::locale::classic());
  csv.precision(17);
  csv << "index,eigenvalue,negative\n";
  for (Index m = 0; m < modes.size(); ++m) {
    csv << m + 1 << ',' << modes.eigenvalues[m] << ',' << (m < modes.n_negative ? 1 : 0) << '\n';
  }
  nlohmann::json j;
  j["config"] = config_echo(config);
  j["chi"] = chi;
  j["shift"] = shift;
  j["n_negative"] = modes.n_negative;
  j["eigenvalues"] = std::vector<double>(modes.eigenvalues.data(),
                                         modes.eigenvalues.data() + modes.size());
  j["scsa_error"] = err;
  j["scsa_relative_error"] = norm > 0.0 ? err / norm : err;
  nlohmann::json cal = nlohmann::json::array();
  for (const auto& c : history) {
    cal.push_back({{"chi", c.chi}, {"error", c.error}, {"n_negative", c.n_negative}});
  }
  j["calibration"] = cal;
  fs::create_directories(out);
  write_atomically(out / (config.output.name + "_spectrum.csv"), csv.str());
  write_atomically(out / (config.output.name + "_spectrum.json"), j.dump(2) + "\n");

  std::cout << "chi " << chi << ", " << modes.n_negative << " negative eigenvalue(s):";
  for (Index m = 0; m < modes.n_negative; ++m) std::cout << ' ' << modes.eigenvalues[m];
  std::cout << "\nSCSA reconstruction error (L2) " << err << '\n';
  return EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximated Lax Pair reduced-order solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir = "alp_output";
  std::string param, values;
  Index spectrum_modes = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Experiment configuration (INI)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--output-dir", output_dir, "Directory for CSV/JSON outputs")
        ->capture_default_str();
  };
  auto* run = app.add_subcommand("run", "Run the ALP and write trajectory and summary");
  add_common(run);
  auto* compare = app.add_subcommand("compare", "Run the ALP and compare with the reference");
  add_common(compare);
  auto* sweep = app.add_subcommand("sweep", "Repeat the run over values of one parameter");
  add_common(sweep);
  sweep->add_option("--param", param, "n_modes_M or dt")
      ->required()
      ->check(CLI::IsMember({"n_modes_M", "dt"}));
  sweep->add_option("--values", values, "Comma-separated values")->required();
  auto* spectrum = app.add_subcommand("spectrum", "Semi-classical decomposition of u0 only");
  add_common(spectrum);
  spectrum->add_option("--n-modes", spectrum_modes, "Eigenpairs to compute (default n_modes_M)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? EXIT_SUCCESS : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, output_dir, false);
    if (*compare) return cmd_run(config_path, output_dir, true);
    if (*sweep) return cmd_sweep(config_path, output_dir, param, values);
    if (*spectrum) return cmd_spectrum(config_path, output_dir, spectrum_modes);
  } catch (const alp::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
