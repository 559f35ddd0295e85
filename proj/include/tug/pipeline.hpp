#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tug/events.hpp"
#include "tug/kinematics.hpp"
#include "tug/segmentation.hpp"
#include "tug/types.hpp"
#include "tug/vector_coding.hpp"

namespace tug {

/// Everything one trial produces, ready for serialization.
struct TrialResult {
  std::string trial_id;
  PipelineConfig cfg;
  PhaseSegmentation seg;
  PelvisTrack track;
  WalkingMask mask;
  std::vector<GaitEvent> heel_strikes;
  std::vector<GaitEvent> toe_offs;
  std::vector<Step> steps;
  XcomSeries xcom;
  KinematicSeries kin;
  AxialAngleSeries axial;
  CouplingSeries coupling;
  JointExcursions excursions;
  TrialMetrics metrics;
  Warnings warnings;
  std::uint64_t input_digest = 0;

  // heel/toe projections kept for the report plots
  std::vector<double> heel_proj_left, heel_proj_right;
  std::vector<double> toe_proj_left, toe_proj_right;
};

/// Runs segmentation, event detection, kinematics and vector coding over an
/// already filtered recording. Soft failures (degenerate turn, empty
/// coupling, short phases, missing leg length) become warnings and null
/// metrics; structural failures propagate as Error.
TrialResult run_trial(const TrialRecording& filtered, const PipelineConfig& cfg,
                      std::uint64_t input_digest = 0);

/// FNV-1a 64 content digest used to tie the JSON document to its input file.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace tug
