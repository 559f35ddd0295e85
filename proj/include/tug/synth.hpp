#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "tug/types.hpp"

namespace tug::synth {

/// Parameters of a synthetic TUG trial. The geometry is
/// stand -> straight walk out -> semicircular turn -> straight walk back ->
/// sit, with the feet oscillating anteroposteriorly around the pelvis at
/// step_frequency so every gait event time is known in closed form.
struct SynthSpec {
  double fps = 30.0;
  double chair_y = 1.125;          // chair-zone threshold the trial is built for
  double turn_y = 4.5;             // turn-zone line; the path apex touches it
  double turn_tolerance_y = 0.15;  // tolerance the ground truth assumes
  double walk_speed = 1.0;         // m/s on the straight segments
  double step_frequency = 1.8;     // steps/s, both feet combined
  double step_length = 0.0;        // 0 = derive walk_speed / step_frequency
  double heel_amplitude = 0.25;    // m, AP oscillation around the pelvis
  double turn_duration_s = 2.5;
  double stand_duration_s = 2.0;
  double sit_duration_s = 2.5;
  double trunk_pelvis_lag_deg = 0.0;  // trunk starts rotating this far behind
  double noise_sd = 0.0;              // m, Gaussian, applied to every coordinate
  std::uint64_t seed = 1;
  bool turn_right = true;

  // body geometry
  double start_y = 0.4;
  double turn_radius = 0.35;
  double pelvis_width = 0.24;
  double shoulder_width = 0.30;
  double foot_separation = 0.20;
  double foot_length = 0.22;
  double stand_z = 0.92;
  double sit_z = 0.55;
  double trunk_length = 0.45;
};

/// Everything the spec fixes by construction, for use as a test oracle.
struct GroundTruth {
  std::size_t n_frames = 0;
  // phase boundary frames: stand|first, first|turn, turn|second, second|sit
  std::size_t f1 = 0, f2 = 0, f3 = 0, f4 = 0;
  TurnDirection turn_direction = TurnDirection::Right;

  // events inside the two gait windows, per foot
  std::vector<std::size_t> hs_frames_left, hs_frames_right;
  std::vector<std::size_t> to_frames_left, to_frames_right;
  std::vector<double> hs_times_left, hs_times_right;

  std::size_t steps_first = 0, steps_second = 0;
  double step_length_m = 0.0;
  double step_time_s = 0.0;

  // coupling angle per consecutive frame pair across [f2, f3)
  std::vector<double> gamma_deg;

  double foot_phase_offset_rad = 0.0;
  double min_event_margin_frames = 0.0;  // closest event-to-boundary distance
};

/// Builds the eight required markers plus ground truth. Deterministic given
/// the spec (noise uses a splitmix64 stream with Box-Muller pairs). Throws
/// InfeasibleSpec when the geometry cannot hold (walkway shorter than one
/// step, apex below the chair zone, no event-margin-safe foot phase, ...).
std::pair<TrialRecording, GroundTruth> generate_trial(const SynthSpec& spec);

/// Companion TOML matching generate_trial output (identity marker stems and
/// the spec's thresholds), so synthetic trials round-trip through the
/// regular ingest path.
void write_config_toml(const SynthSpec& spec, const std::filesystem::path& path);

}  // namespace tug::synth
