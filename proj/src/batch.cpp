#include "tug/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <thread>

#include "tug/csv.hpp"
#include "tug/ingest.hpp"

namespace tug {
namespace {

bool verbose_logging() {
  const char* lvl = std::getenv("TUGKIT_LOG");
  if (lvl == nullptr) return false;
  const std::string v(lvl);
  return v == "debug" || v == "info";
}

std::mutex g_log_mutex;

void log_outcome(const TrialOutcome& o) {
  std::lock_guard<std::mutex> lock(g_log_mutex);
  if (!o.ok)
    std::cerr << "[tugturn] " << o.trial_id << " failed (" << o.error_kind
              << "): " << o.message << "\n";
  else if (verbose_logging())
    std::cerr << "[tugturn] " << o.trial_id << " ok\n";
}

}  // namespace

RunPlan make_run_plan(const std::filesystem::path& input,
                      const std::filesystem::path& config,
                      const std::filesystem::path& output_dir,
                      std::optional<double> tolerance_override, bool force,
                      bool no_timestamp, unsigned jobs) {
  namespace fs = std::filesystem;
  RunPlan plan;
  plan.config_path = config;
  plan.output_dir = output_dir;
  plan.tolerance_override_m = tolerance_override;
  plan.force = force;
  plan.no_timestamp = no_timestamp;
  plan.jobs = jobs;

  if (tolerance_override && *tolerance_override <= 0.0)
    fail(ErrorKind::UsageError, "tolerance override must be positive");
  if (!fs::exists(config))
    fail(ErrorKind::UsageError, "config '" + config.string() + "' does not exist");

  if (fs::is_directory(input)) {
    for (const auto& entry : fs::directory_iterator(input))
      if (entry.is_regular_file() && entry.path().extension() == ".csv")
        plan.inputs.push_back(entry.path());
    std::sort(plan.inputs.begin(), plan.inputs.end(),
              [](const fs::path& a, const fs::path& b) {
                return a.filename().string() < b.filename().string();
              });
    if (plan.inputs.empty())
      fail(ErrorKind::UsageError,
           "directory '" + input.string() + "' contains no .csv files");
  } else if (fs::exists(input)) {
    plan.inputs.push_back(input);
  } else {
    fail(ErrorKind::UsageError, "input '" + input.string() + "' does not exist");
  }

  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec || !fs::is_directory(output_dir))
    fail(ErrorKind::UsageError,
         "cannot create output directory '" + output_dir.string() + "'");
  return plan;
}

TrialOutcome process_file(const std::filesystem::path& csv_path, const RunPlan& plan) {
  TrialOutcome out;
  out.trial_id = csv_path.stem().string();
  try {
    const std::string bytes = csv::read_file(csv_path);
    const std::uint64_t digest = fnv1a64(bytes);

    // a sibling <stem>.toml takes precedence over the batch config
    std::filesystem::path config_path = plan.config_path;
    const std::filesystem::path local =
        csv_path.parent_path() / (csv_path.stem().string() + ".toml");
    if (std::filesystem::exists(local)) config_path = local;

    PipelineConfig cfg = load_config(config_path);
    if (plan.tolerance_override_m) {
      cfg.turn_tolerance_y = *plan.tolerance_override_m;
      cfg.validate();
    }

    const TrialRecording raw = load_landmarks_csv(csv_path, cfg);
    const TrialRecording filled = fill_gaps(raw, cfg);
    const TrialRecording filtered = lowpass_filter(filled, cfg);
    const TrialResult result = run_trial(filtered, cfg, digest);

    ReportOptions opts;
    opts.force = plan.force;
    opts.no_timestamp = plan.no_timestamp;
    write_bundle(result, plan.output_dir, opts);

    out.ok = true;
    out.total_time_s = result.metrics.total_time_s;
  } catch (const Error& e) {
    out.error_kind = error_kind_name(e.kind());
    out.message = e.what();
  } catch (const std::exception& e) {
    out.error_kind = error_kind_name(ErrorKind::Internal);
    out.message = e.what();
  }
  return out;
}

BatchResult run_batch(const RunPlan& plan) {
  BatchResult result;
  result.outcomes.resize(plan.inputs.size());

  unsigned jobs = plan.jobs != 0 ? plan.jobs
                                 : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(plan.inputs.size()));
  jobs = std::max(1u, jobs);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= plan.inputs.size()) return;
      result.outcomes[i] = process_file(plan.inputs[i], plan);
      log_outcome(result.outcomes[i]);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::string summary =
      csv::join_row({"trial_id", "status", "error_kind", "total_time_s"});
  for (const TrialOutcome& o : result.outcomes) {
    summary += csv::join_row(
        {o.trial_id, o.ok ? "ok" : "failed", o.error_kind,
         o.total_time_s ? csv::format_number(*o.total_time_s) : std::string()});
    if (!o.ok) result.exit_code = 1;
  }
  csv::write_file(plan.output_dir / "batch_summary.csv", summary);
  return result;
}

}  // namespace tug
