#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tug/error.hpp"
#include "tug/segmentation.hpp"
#include "tug/types.hpp"

namespace tug {

/// Per-frame gate for event detection: upright (pelvis height in the upper
/// standing_height_fraction of its trial-wide range) and moving faster than
/// walk_speed_min, with brief dropouts closed morphologically.
struct WalkingMask {
  std::vector<std::uint8_t> walking;

  bool at(std::size_t frame) const { return walking[frame] != 0; }
  std::size_t size() const { return walking.size(); }
};

WalkingMask walking_mask(const PelvisTrack& track, const PipelineConfig& cfg);

/// Frame-by-frame unit vector of the walking direction. Below 0.02 m/s the
/// previous valid direction is carried forward (back-filled at the start).
struct ProgressionVector {
  std::vector<Vec2> u;

  std::size_t size() const { return u.size(); }
};

ProgressionVector progression_vector(const PelvisTrack& track);

/// Pelvis-relative position of a marker projected on the progression
/// direction: s(t) = (marker_xy - pelvis_xy) . u(t).
std::vector<double> project_marker(const TrialRecording& rec, std::string_view logical,
                                   const PelvisTrack& track, const ProgressionVector& u);

/// Local maxima (plateaus resolve to their leftmost frame) with topographic
/// prominence >= min_prominence, restricted to mask-true frames, then
/// thinned greedily highest-first so survivors sit >= min_distance frames
/// apart (equal heights: leftmost wins). Returns ascending frame indices.
std::vector<std::size_t> find_peaks(std::span<const double> s, std::size_t min_distance,
                                    double min_prominence,
                                    const WalkingMask* mask = nullptr);

enum class EventKind { HeelStrike, ToeOff };

const char* event_kind_name(EventKind k);

struct GaitEvent {
  EventKind kind;
  Foot foot;
  std::size_t frame;
  double time_s;
  Phase phase;  // FirstGait or SecondGait only
  double projection_value_m;
};

std::vector<GaitEvent> detect_heel_strikes(const TrialRecording& rec,
                                           const PelvisTrack& track,
                                           const ProgressionVector& u,
                                           const WalkingMask& mask,
                                           const PhaseSegmentation& seg,
                                           const PipelineConfig& cfg,
                                           Warnings* warnings = nullptr);

std::vector<GaitEvent> detect_toe_offs(const TrialRecording& rec,
                                       const PelvisTrack& track,
                                       const ProgressionVector& u,
                                       const WalkingMask& mask,
                                       const PhaseSegmentation& seg,
                                       const PipelineConfig& cfg,
                                       Warnings* warnings = nullptr);

/// One gait cycle half: the interval between consecutive heel strikes within
/// a phase, ending with the leading foot's strike.
struct Step {
  Phase phase;
  Foot leading_foot;
  std::size_t hs_frame;  // strike that ends the step
  double hs_time_s;
  Foot start_foot;
  std::size_t start_hs_frame;
  double start_hs_time_s;
  std::optional<std::size_t> trailing_to_frame;  // leading foot's toe-off inside the step
  std::optional<double> trailing_to_time_s;
  double step_time_s;
  std::optional<double> step_length_m;  // filled by step_lengths()
  bool incomplete = false;              // same-foot consecutive strikes
};

/// Merges heel strikes per phase in time order and pairs them into steps;
/// same-foot successions are kept but flagged incomplete. Toe-offs of the
/// leading foot strictly inside a step interval are linked to it.
std::vector<Step> pair_steps(const std::vector<GaitEvent>& heel_strikes,
                             const std::vector<GaitEvent>& toe_offs);

/// |(heel(end) - heel(start)) . u(end)| per complete step, using each
/// strike's own heel marker. Incomplete steps stay null.
void step_lengths(std::vector<Step>& steps, const TrialRecording& rec,
                  const ProgressionVector& u);

}  // namespace tug
