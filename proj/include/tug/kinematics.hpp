#pragma once

#include <array>
#include <optional>
#include <vector>

#include "tug/error.hpp"
#include "tug/events.hpp"
#include "tug/segmentation.hpp"
#include "tug/types.hpp"

namespace tug {

/// Angle of the mid-hip to mid-shoulder vector from vertical, in degrees.
/// Frames where the two midpoints coincide yield NaN and one warning.
std::vector<double> trunk_inclination(const TrialRecording& rec,
                                      Warnings* warnings = nullptr);

/// Per-frame hip/knee/ankle flexion angles for one body side; only defined
/// when the optional knee and ankle markers are mapped.
struct JointAngles {
  std::vector<double> hip_deg;
  std::vector<double> knee_deg;
  std::vector<double> ankle_deg;
};

std::optional<JointAngles> joint_angle_series(const TrialRecording& rec, Foot side);

struct ExcursionStat {
  double min_deg = 0.0;
  double max_deg = 0.0;
  double range_deg = 0.0;
};

/// Per-phase excursion of one side's joint angles; indexes follow kAllPhases.
struct SideExcursions {
  std::array<ExcursionStat, 5> hip;
  std::array<ExcursionStat, 5> knee;
  std::array<ExcursionStat, 5> ankle;
};

struct JointExcursions {
  std::optional<SideExcursions> left;
  std::optional<SideExcursions> right;
};

JointExcursions joint_excursions(const TrialRecording& rec, const PhaseSegmentation& seg);

/// Extrapolated center of mass per Hof: xcom = com_xy + v_xy / omega0 with
/// omega0 = sqrt(g / l). The pendulum length comes from the configured leg
/// length, else the mean pelvis height over walking frames.
struct XcomSeries {
  std::vector<Vec2> xcom;
  double pendulum_length_m = 0.0;
  double omega0 = 0.0;
};

XcomSeries xcom_series(const PelvisTrack& track, const WalkingMask& mask,
                       const PipelineConfig& cfg);

/// Mean absolute perpendicular distance of the XCoM samples from the
/// principal-axis line fitted to the pelvis path within the phase. Throws
/// PhaseTooShort below 5 frames.
double xcom_deviation(const XcomSeries& xcom, const PelvisTrack& track,
                      const PhaseSegmentation& seg, Phase phase);

struct StepStats {
  double mean = 0.0;
  double sd = 0.0;  // sample SD (n - 1)
  std::size_t n = 0;
};

/// Global and per-phase scalar results; the vector-coding summary fields are
/// filled by the pipeline from the coupling series.
struct TrialMetrics {
  std::optional<TurnDirection> turn_direction;
  double total_time_s = 0.0;
  std::array<double, 5> phase_s{};
  std::optional<double> cadence_spm;   // steps / combined gait time
  std::optional<double> velocity_mps;  // pelvis path length / total time
  std::size_t steps_first = 0;
  std::size_t steps_second = 0;
  std::optional<StepStats> step_time_first_s, step_len_first_m;
  std::optional<StepStats> step_time_second_s, step_len_second_m;
  std::optional<double> xcom_dev_first_m, xcom_dev_second_m;
  std::optional<double> vc_mean_deg, vc_cav_deg;
  std::optional<std::array<double, 4>> vc_fracs;  // in/anti/pelvis/trunk phase
};

/// Durations, cadence, velocity and step statistics. Step time/length stats
/// cover complete steps only and need at least two of them per phase.
TrialMetrics spatiotemporal_metrics(const PhaseSegmentation& seg,
                                    const std::vector<Step>& steps,
                                    const PelvisTrack& track,
                                    const PipelineConfig& cfg);

/// Frame-indexed kinematic table behind bd_kinematics.csv.
struct KinematicSeries {
  double fps = 0.0;
  std::vector<double> time_s;
  std::vector<std::optional<Phase>> phase;  // nullopt before stand onset
  std::vector<Vec3> pelvis;
  std::vector<double> com_speed_mps;
  std::vector<double> trunk_inclination_deg;
  std::vector<Vec2> xcom;
  std::optional<JointAngles> joints_left;
  std::optional<JointAngles> joints_right;
};

KinematicSeries kinematic_series(const TrialRecording& rec, const PelvisTrack& track,
                                 const PhaseSegmentation& seg, const XcomSeries& xcom,
                                 Warnings* warnings = nullptr);

}  // namespace tug
