#pragma once

#include <filesystem>

#include "tug/pipeline.hpp"

namespace tug {

struct ReportOptions {
  bool force = false;         // overwrite existing artifacts
  bool no_timestamp = false;  // suppress the HTML generation timestamp
};

/// Paths of the seven per-trial artifacts.
struct ReportBundle {
  std::filesystem::path json;
  std::filesystem::path results_csv;
  std::filesystem::path steps_csv;
  std::filesystem::path kinematics_csv;
  std::filesystem::path vector_coding_csv;
  std::filesystem::path participants_csv;
  std::filesystem::path html;

  std::vector<std::filesystem::path> all() const;
};

ReportBundle bundle_paths(const std::filesystem::path& out_dir, std::string_view trial_id);

void write_results_csv(const TrialResult& r, const std::filesystem::path& path);
void write_steps_csv(const TrialResult& r, const std::filesystem::path& path);
void write_kinematics_csv(const TrialResult& r, const std::filesystem::path& path);
void write_vector_coding_csv(const TrialResult& r, const std::filesystem::path& path);
void write_participants_csv(const TrialResult& r, const std::filesystem::path& path);
void write_json(const TrialResult& r, const std::filesystem::path& path);
void render_html(const TrialResult& r, const std::filesystem::path& path,
                 const ReportOptions& opts = {});

/// Emits all seven artifacts. Unless opts.force is set, an existing artifact
/// path aborts the write before any file is touched (OutputExists).
ReportBundle write_bundle(const TrialResult& r, const std::filesystem::path& out_dir,
                          const ReportOptions& opts = {});

/// Fixed column order of bd_results.csv.
std::span<const std::string_view> results_csv_columns();
std::span<const std::string_view> steps_csv_columns();

}  // namespace tug
