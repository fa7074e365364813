#include "output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <alp/error.hpp>

namespace alp::cli {

namespace fs = std::filesystem;

namespace {

std::ostringstream csv_stream() {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  return out;
}

const ErrorSample* find_error(const RunResult& run, Index step) {
  auto it = std::lower_bound(run.errors.begin(), run.errors.end(), step,
                             [](const ErrorSample& e, Index s) { return e.step < s; });
  return it != run.errors.end() && it->step == step ? &*it : nullptr;
}

bool has_peak(const RunResult& run) {
  return std::any_of(run.errors.begin(), run.errors.end(),
                     [](const ErrorSample& e) { return e.peak_error.has_value(); });
}

}  // namespace

void write_atomically(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out.flush()) throw Error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string trajectory_csv(const RunResult& run, bool with_errors) {
  const AlpTrajectory& t = run.trajectory;
  const Index nm = t.eigenvalues.empty() ? 0 : t.eigenvalues.front().size();
  const bool peak = with_errors && has_peak(run);
  auto out = csv_stream();
  out << "step,time,n_negative";
  for (Index m = 1; m <= nm; ++m) out << ",lambda_" << m;
  out << ",frobenius,gram_deviation";
  if (with_errors) out << ",l2_error";
  if (peak) out << ",peak_error";
  out << '\n';
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    out << k << ',' << t.times[k] << ',' << t.n_negative[k];
    for (Index m = 0; m < nm; ++m) out << ',' << t.eigenvalues[k][m];
    out << ',' << t.frobenius[k] << ',' << t.gram_deviation[k];
    if (with_errors) {
      const ErrorSample* e = find_error(run, static_cast<Index>(k));
      out << ',';
      if (e) out << e->l2_error;
      if (peak) {
        out << ',';
        if (e && e->peak_error) out << *e->peak_error;
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string error_csv(const RunResult& run) {
  const bool peak = has_peak(run);
  auto out = csv_stream();
  out << "step,time,l2_error" << (peak ? ",peak_error" : "") << '\n';
  for (const ErrorSample& e : run.errors) {
    out << e.step << ',' << e.time << ',' << e.l2_error;
    if (peak) {
      out << ',';
      if (e.peak_error) out << *e.peak_error;
    }
    out << '\n';
  }
  return out.str();
}

std::string field_csv(const FemSpace& fem, const Field& u) {
  const bool two_d = fem.mesh().dimension() == 2;
  auto out = csv_stream();
  out << (two_d ? "node_index,x,y,value\n" : "node_index,x,value\n");
  for (Index i = 0; i < u.size(); ++i) {
    const Point& p = fem.mesh().node(i);
    out << i << ',' << p[0];
    if (two_d) out << ',' << p[1];
    out << ',' << u[i] << '\n';
  }
  return out.str();
}

nlohmann::json config_echo(const AlpConfig& config) {
  nlohmann::json echo = nlohmann::json::object();
  for (const auto& [section, body] : config.source) {
    for (const auto& [key, value] : body) echo[section][key] = value.data();
  }
  return echo;
}

nlohmann::json run_summary(const AlpConfig& config, const RunResult& run) {
  const AlpTrajectory& t = run.trajectory;
  const AlpInitialization& init = t.initialization;
  nlohmann::json j;
  j["config"] = config_echo(config);
  j["chi"] = t.final_state.modes.chi;
  j["n_modes_M"] = t.final_state.modes.size();
  j["n_steps"] = static_cast<Index>(t.times.size()) - 1;
  j["t_final"] = t.times.empty() ? 0.0 : t.times.back();
  j["initial"] = {{"n_negative", t.n_negative.empty() ? 0 : t.n_negative.front()},
                  {"scsa_error", init.scsa_error},
                  {"scsa_relative_error", init.scsa_relative_error},
                  {"reconstruction_relative_error", init.initial_relative_error},
                  {"eigenvalues", std::vector<double>(t.eigenvalues.front().data(),
                                                      t.eigenvalues.front().data() +
                                                          t.eigenvalues.front().size())}};
  if (!init.calibration.empty()) {
    nlohmann::json cal = nlohmann::json::array();
    for (const auto& c : init.calibration) {
      cal.push_back({{"chi", c.chi}, {"error", c.error}, {"n_negative", c.n_negative}});
    }
    j["initial"]["calibration"] = cal;
  }
  const auto& lam = t.final_state.modes.eigenvalues;
  j["final"] = {{"n_negative", t.final_state.modes.n_negative},
                {"eigenvalues", std::vector<double>(lam.data(), lam.data() + lam.size())},
                {"frobenius", t.frobenius.back()},
                {"frobenius_tail_error", t.frobenius_tail_error.back()},
                {"gram_deviation", t.gram_deviation.back()}};
  const auto max_tail = std::max_element(t.frobenius_tail_error.begin(), t.frobenius_tail_error.end());
  j["max_frobenius_tail_error"] = max_tail == t.frobenius_tail_error.end() ? 0.0 : *max_tail;
  if (run.frobenius_indicator) j["final"]["frobenius_indicator"] = *run.frobenius_indicator;
  if (!run.errors.empty()) {
    double max_l2 = 0.0;
    for (const auto& e : run.errors) max_l2 = std::max(max_l2, e.l2_error);
    j["final"]["l2_error"] = run.errors.back().l2_error;
    j["max_l2_error"] = max_l2;
    if (run.errors.back().peak_error) j["final"]["peak_error"] = *run.errors.back().peak_error;
  }
  nlohmann::json events = nlohmann::json::array();
  for (const auto& p : t.promotions) {
    events.push_back({{"step", p.step}, {"time", p.time}, {"mode", p.mode + 1},
                      {"eigenvalue", p.eigenvalue}});
  }
  j["promotion_events"] = events;
  j["reorthonormalizations"] = t.reorthonormalizations;
  j["wall_clock_seconds"] = run.wall_seconds;
  return j;
}

void write_run_outputs(const fs::path& dir, const AlpConfig& config, const RunResult& run,
                       bool with_errors) {
  fs::create_directories(dir);
  const std::string& name = config.output.name;
  write_atomically(dir / (name + "_trajectory.csv"), trajectory_csv(run, with_errors));
  if (with_errors) write_atomically(dir / (name + "_errors.csv"), error_csv(run));
  write_atomically(dir / (name + "_summary.json"), run_summary(config, run).dump(2) + "\n");

  const fs::path snaps = dir / (name + "_snapshots");
  fs::create_directories(snaps);
  const AlpTrajectory& t = run.trajectory;
  for (std::size_t k = 0; k < t.snapshots.size(); ++k) {
    char file[32];
    std::snprintf(file, sizeof file, "step_%06lld.csv", static_cast<long long>(t.snapshot_steps[k]));
    write_atomically(snaps / file, field_csv(*run.fem, t.snapshots[k]));
  }
}

}  // namespace alp::cli
