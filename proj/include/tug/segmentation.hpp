#pragma once

#include "tug/error.hpp"
#include "tug/types.hpp"

namespace tug {

/// Pelvis-center trajectory with planar velocity, the spatial reference for
/// segmentation and event detection.
struct PelvisTrack {
  double fps = 0.0;
  std::vector<Vec3> pos;      // (left_hip + right_hip) / 2
  std::vector<Vec2> vel;      // central differences, one-sided at the ends
  std::vector<double> speed;  // ||vel||

  std::size_t size() const { return pos.size(); }
};

PelvisTrack pelvis_track(const TrialRecording& rec);

/// Slices the trial into the five sub-phases by first crossings of the
/// pelvis anteroposterior position. Turn direction is left unset; see
/// turn_direction(). Throws NoStandExit / NoTurnEntry / NoTurnExit /
/// NoChairReturn naming the missing crossing.
PhaseSegmentation segment_phases(const PelvisTrack& track, const PipelineConfig& cfg);

/// Net unwrapped pelvis heading change across the Turn interval; negative
/// (clockwise from above) means Right. A net rotation under 90 degrees is
/// flagged as a DegenerateTurn warning but still classified by sign.
TurnDirection turn_direction(const PelvisTrack& track, const PhaseSegmentation& seg,
                             Warnings* warnings = nullptr);

}  // namespace tug
