#include "tug/pipeline.hpp"

#include <cmath>
#include <limits>

namespace tug {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

TrialResult run_trial(const TrialRecording& filtered, const PipelineConfig& cfg,
                      std::uint64_t input_digest) {
  TrialResult r;
  r.trial_id = filtered.trial_id;
  r.cfg = cfg;
  r.input_digest = input_digest;

  r.track = pelvis_track(filtered);
  r.seg = segment_phases(r.track, cfg);
  r.seg.turn_direction = turn_direction(r.track, r.seg, &r.warnings);
  r.mask = walking_mask(r.track, cfg);

  const ProgressionVector u = progression_vector(r.track);
  r.heel_strikes =
      detect_heel_strikes(filtered, r.track, u, r.mask, r.seg, cfg, &r.warnings);
  r.toe_offs =
      detect_toe_offs(filtered, r.track, u, r.mask, r.seg, cfg, &r.warnings);
  r.steps = pair_steps(r.heel_strikes, r.toe_offs);
  step_lengths(r.steps, filtered, u);

  r.heel_proj_left = project_marker(filtered, "left_heel", r.track, u);
  r.heel_proj_right = project_marker(filtered, "right_heel", r.track, u);
  r.toe_proj_left = project_marker(filtered, "left_toe", r.track, u);
  r.toe_proj_right = project_marker(filtered, "right_toe", r.track, u);

  try {
    r.xcom = xcom_series(r.track, r.mask, cfg);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoLegLength) throw;
    warn(&r.warnings, std::string("xcom unavailable: ") + e.what());
    r.xcom.pendulum_length_m = std::numeric_limits<double>::quiet_NaN();
    r.xcom.omega0 = std::numeric_limits<double>::quiet_NaN();
    r.xcom.xcom.assign(r.track.size(),
                       Vec2{std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::quiet_NaN()});
  }

  r.metrics = spatiotemporal_metrics(r.seg, r.steps, r.track, cfg);
  r.metrics.turn_direction = r.seg.turn_direction;

  if (std::isfinite(r.xcom.omega0)) {
    for (Phase phase : {Phase::FirstGait, Phase::SecondGait}) {
      try {
        const double dev = xcom_deviation(r.xcom, r.track, r.seg, phase);
        (phase == Phase::FirstGait ? r.metrics.xcom_dev_first_m
                                   : r.metrics.xcom_dev_second_m) = dev;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::PhaseTooShort) throw;
        warn(&r.warnings, std::string("xcom deviation skipped: ") + e.what());
      }
    }
  }

  r.axial = axial_angles(filtered, r.seg);
  r.coupling = compute_coupling(r.axial, &r.warnings);
  if (r.coupling.valid_pairs > 0) {
    r.metrics.vc_mean_deg = r.coupling.mean_deg;
    r.metrics.vc_cav_deg = r.coupling.cav_deg;
    r.metrics.vc_fracs = r.coupling.occupancy;
  }

  r.excursions = joint_excursions(filtered, r.seg);
  r.kin = kinematic_series(filtered, r.track, r.seg, r.xcom, &r.warnings);
  return r;
}

}  // namespace tug
