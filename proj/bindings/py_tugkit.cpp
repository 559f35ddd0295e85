// Python surface for the tugkit core: the batch entry point plus the small
// numeric kernels that are useful to cross-check from scripts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tug/batch.hpp"
#include "tug/error.hpp"
#include "tug/events.hpp"
#include "tug/ingest.hpp"
#include "tug/synth.hpp"
#include "tug/vector_coding.hpp"
#include "tug/version.hpp"

namespace py = pybind11;

namespace {

py::dict outcome_dict(const tug::TrialOutcome& o) {
  py::dict d;
  d["trial_id"] = o.trial_id;
  d["ok"] = o.ok;
  d["error_kind"] = o.error_kind;
  d["message"] = o.message;
  d["total_time_s"] = o.total_time_s;
  return d;
}

py::dict run(const std::filesystem::path& input, const std::filesystem::path& config,
             const std::filesystem::path& output_dir, std::optional<double> tolerance,
             bool force, bool no_timestamp, unsigned jobs) {
  const tug::RunPlan plan =
      tug::make_run_plan(input, config, output_dir, tolerance, force, no_timestamp, jobs);
  const tug::BatchResult result = tug::run_batch(plan);
  py::list outcomes;
  for (const tug::TrialOutcome& o : result.outcomes) outcomes.append(outcome_dict(o));
  py::dict d;
  d["exit_code"] = result.exit_code;
  d["outcomes"] = outcomes;
  d["summary_path"] = (plan.output_dir / "batch_summary.csv").string();
  return d;
}

py::dict synthesize(const std::filesystem::path& csv_path,
                    const std::filesystem::path& config_path, const py::kwargs& kwargs) {
  tug::synth::SynthSpec spec;
  for (auto item : kwargs) {
    const std::string key = py::cast<std::string>(item.first);
    const py::handle v = item.second;
    if (key == "fps") spec.fps = py::cast<double>(v);
    else if (key == "walk_speed") spec.walk_speed = py::cast<double>(v);
    else if (key == "step_frequency") spec.step_frequency = py::cast<double>(v);
    else if (key == "step_length") spec.step_length = py::cast<double>(v);
    else if (key == "heel_amplitude") spec.heel_amplitude = py::cast<double>(v);
    else if (key == "turn_duration_s") spec.turn_duration_s = py::cast<double>(v);
    else if (key == "stand_duration_s") spec.stand_duration_s = py::cast<double>(v);
    else if (key == "sit_duration_s") spec.sit_duration_s = py::cast<double>(v);
    else if (key == "trunk_pelvis_lag_deg") spec.trunk_pelvis_lag_deg = py::cast<double>(v);
    else if (key == "noise_sd") spec.noise_sd = py::cast<double>(v);
    else if (key == "seed") spec.seed = py::cast<std::uint64_t>(v);
    else if (key == "turn_right") spec.turn_right = py::cast<bool>(v);
    else throw py::key_error("unknown SynthSpec field: " + key);
  }
  auto [rec, gt] = tug::synth::generate_trial(spec);
  tug::write_landmarks_csv(rec, csv_path);
  tug::synth::write_config_toml(spec, config_path);

  py::dict d;
  d["n_frames"] = gt.n_frames;
  d["boundaries"] = py::make_tuple(gt.f1, gt.f2, gt.f3, gt.f4);
  d["turn_direction"] = std::string(tug::turn_direction_name(gt.turn_direction));
  d["steps_first"] = gt.steps_first;
  d["steps_second"] = gt.steps_second;
  d["step_length_m"] = gt.step_length_m;
  d["step_time_s"] = gt.step_time_s;
  d["hs_frames_left"] = gt.hs_frames_left;
  d["hs_frames_right"] = gt.hs_frames_right;
  return d;
}

std::vector<std::size_t> find_peaks_py(const std::vector<double>& s,
                                       std::size_t min_distance, double min_prominence,
                                       const std::optional<std::vector<bool>>& mask) {
  if (!mask) return tug::find_peaks(s, min_distance, min_prominence);
  if (mask->size() != s.size())
    throw py::value_error("mask length must match the series length");
  tug::WalkingMask m;
  m.walking.assign(mask->begin(), mask->end());
  return tug::find_peaks(s, min_distance, min_prominence, &m);
}

py::dict circular_stats_py(const std::vector<double>& gamma_deg) {
  const tug::CircularStats cs = tug::circular_stats(gamma_deg);
  py::dict d;
  d["mean_deg"] = cs.mean_deg;
  d["cav_deg"] = cs.cav_deg;
  d["degenerate"] = cs.degenerate;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "TUG landmark pipeline: segmentation, gait events, coordination";
  m.attr("__version__") = tug::kVersion;

  py::register_exception<tug::Error>(m, "TugError");

  m.def("run", &run, py::arg("input"), py::arg("config"), py::arg("output_dir"),
        py::arg("tolerance") = std::nullopt, py::arg("force") = false,
        py::arg("no_timestamp") = false, py::arg("jobs") = 1,
        "Process one CSV or a directory of CSVs and write report bundles plus "
        "batch_summary.csv. Returns {'exit_code', 'outcomes', 'summary_path'}.");

  m.def("synthesize", &synthesize, py::arg("csv_path"), py::arg("config_path"),
        "Write a synthetic trial CSV and its config TOML; keyword arguments "
        "override SynthSpec fields. Returns the ground truth as a dict.");

  m.def("find_peaks", &find_peaks_py, py::arg("s"), py::arg("min_distance"),
        py::arg("min_prominence"), py::arg("mask") = std::nullopt,
        "Prominence-filtered local maxima with greedy highest-first thinning.");

  m.def("classify_bin",
        [](double gamma_deg) {
          return std::string(tug::coupling_bin_name(tug::classify_bin(gamma_deg)));
        },
        py::arg("gamma_deg"),
        "Coordination bin (InPhase/AntiPhase/PelvisPhase/TrunkPhase) of a "
        "coupling angle in degrees.");

  m.def("circular_stats", &circular_stats_py, py::arg("angles_deg"),
        "Circular mean and circular SD (degrees) of a set of angles.");
}
