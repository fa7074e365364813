#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>

#include "config.hpp"
#include "experiment.hpp"

namespace alp::cli {

/// Writes `contents` to `path` through a temporary file and a rename.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

/// step,time,n_negative,lambda_1..lambda_NM,frobenius,gram_deviation[,l2_error[,peak_error]]
std::string trajectory_csv(const RunResult& run, bool with_errors);

/// step,time,l2_error[,peak_error]
std::string error_csv(const RunResult& run);

/// node_index,x[,y],value
std::string field_csv(const FemSpace& fem, const Field& u);

nlohmann::json config_echo(const AlpConfig& config);
nlohmann::json run_summary(const AlpConfig& config, const RunResult& run);

/// Trajectory CSV, summary JSON and snapshot directory for one run.
void write_run_outputs(const std::filesystem::path& dir, const AlpConfig& config,
                       const RunResult& run, bool with_errors);

}  // namespace alp::cli
