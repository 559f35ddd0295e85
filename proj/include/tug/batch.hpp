#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tug/report.hpp"

namespace tug {

/// Resolved work order for one invocation.
struct RunPlan {
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path config_path;
  std::filesystem::path output_dir;
  std::optional<double> tolerance_override_m;
  bool force = false;
  bool no_timestamp = false;
  unsigned jobs = 0;  // 0 = hardware concurrency
};

/// Expands a file-or-directory input (directories: non-recursive *.csv in
/// lexicographic order) and validates the plan. Throws UsageError.
RunPlan make_run_plan(const std::filesystem::path& input,
                      const std::filesystem::path& config,
                      const std::filesystem::path& output_dir,
                      std::optional<double> tolerance_override = std::nullopt,
                      bool force = false, bool no_timestamp = false,
                      unsigned jobs = 0);

struct TrialOutcome {
  std::string trial_id;
  bool ok = false;
  std::string error_kind;  // empty when ok
  std::string message;
  std::optional<double> total_time_s;
};

struct BatchResult {
  std::vector<TrialOutcome> outcomes;  // input order
  int exit_code = 0;                   // 0 all ok, 1 any failure
};

/// Ingests and processes one CSV end to end and writes its bundle. The
/// config is reloaded per trial so a `<stem>.toml` next to the CSV can
/// override the batch config.
TrialOutcome process_file(const std::filesystem::path& csv_path, const RunPlan& plan);

/// Runs every input with per-trial error isolation on a bounded worker pool
/// and writes batch_summary.csv. Outputs are independent of the job count.
BatchResult run_batch(const RunPlan& plan);

}  // namespace tug
