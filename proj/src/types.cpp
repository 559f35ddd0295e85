#include "tug/types.hpp"

#include <algorithm>

#include "tug/error.hpp"

namespace tug {

const char* foot_name(Foot f) { return f == Foot::Left ? "Left" : "Right"; }

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Stand: return "Stand";
    case Phase::FirstGait: return "FirstGait";
    case Phase::Turn: return "Turn";
    case Phase::SecondGait: return "SecondGait";
    case Phase::Sit: return "Sit";
  }
  return "?";
}

const char* turn_direction_name(TurnDirection d) {
  return d == TurnDirection::Left ? "Left" : "Right";
}

bool MarkerSet::has(std::string_view logical) const {
  return stems.find(std::string(logical)) != stems.end();
}

const std::string& MarkerSet::stem(std::string_view logical) const {
  auto it = stems.find(std::string(logical));
  if (it == stems.end())
    fail(ErrorKind::MissingKey, "marker '" + std::string(logical) + "' is not mapped");
  return it->second;
}

void MarkerSet::validate() const {
  for (auto name : kRequired) {
    auto it = stems.find(std::string(name));
    if (it == stems.end() || it->second.empty())
      fail(ErrorKind::MissingKey,
           "required marker mapping '" + std::string(name) + "' is missing");
  }
  for (const auto& [logical, _] : stems) {
    const bool known =
        std::find(kRequired.begin(), kRequired.end(), logical) != kRequired.end() ||
        std::find(kOptional.begin(), kOptional.end(), logical) != kOptional.end();
    if (!known)
      fail(ErrorKind::InvalidValue, "unknown logical marker '" + logical + "'");
  }
  for (auto a = stems.begin(); a != stems.end(); ++a)
    for (auto b = std::next(a); b != stems.end(); ++b)
      if (a->second == b->second)
        fail(ErrorKind::InvalidValue, "markers '" + a->first + "' and '" + b->first +
                                          "' map to the same column stem '" +
                                          a->second + "'");
}

void PipelineConfig::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) fail(ErrorKind::InvalidValue, msg);
  };
  require(fps > 0.0, "fps must be > 0");
  require(units == "m" || units == "mm", "units must be 'm' or 'mm'");
  require(chair_zone_y_max > 0.0, "chair_zone_y_max must be > 0");
  require(chair_zone_y_max < turn_zone_y - turn_tolerance_y,
          "chair_zone_y_max must be below turn_zone_y - turn_tolerance_y");
  require(turn_tolerance_y >= 0.0, "turn_tolerance_y must be >= 0");
  require(walk_speed_min > 0.0, "walk_speed_min must be > 0");
  require(standing_height_fraction > 0.0 && standing_height_fraction < 1.0,
          "standing_height_fraction must be in (0, 1)");
  require(hs_refractory_ms > 0.0, "hs_refractory_ms must be > 0");
  require(hs_prominence_m >= 0.0, "hs_prominence_m must be >= 0");
  require(filter_cutoff_hz > 0.0 && filter_cutoff_hz < fps / 2.0,
          "filter_cutoff_hz must be in (0, fps/2)");
  require(max_gap_fill_frames >= 0, "max_gap_fill_s must be >= 0");
  if (participant.height_m)
    require(*participant.height_m > 0.0, "participant height_m must be > 0");
  if (participant.leg_length_m)
    require(*participant.leg_length_m > 0.0, "participant leg_length_m must be > 0");
  markers.validate();
}

bool TrialRecording::has_marker(std::string_view logical) const {
  return markers.find(std::string(logical)) != markers.end();
}

const MarkerChannel& TrialRecording::channel(std::string_view logical) const {
  auto it = markers.find(std::string(logical));
  if (it == markers.end())
    fail(ErrorKind::MissingColumn,
         "recording has no marker '" + std::string(logical) + "'");
  return it->second;
}

Vec3 TrialRecording::at(std::string_view logical, std::size_t frame) const {
  return channel(logical).pos[frame];
}

std::optional<Phase> PhaseSegmentation::phase_at(std::size_t frame) const {
  for (Phase p : kAllPhases)
    if (of(p).contains(frame)) return p;
  return std::nullopt;
}

}  // namespace tug
