#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tug/geometry.hpp"

namespace tug {

enum class Foot { Left, Right };

const char* foot_name(Foot f);

/// The five TUG sub-phases, in temporal order.
enum class Phase { Stand = 0, FirstGait = 1, Turn = 2, SecondGait = 3, Sit = 4 };

inline constexpr std::array<Phase, 5> kAllPhases = {
    Phase::Stand, Phase::FirstGait, Phase::Turn, Phase::SecondGait, Phase::Sit};

const char* phase_name(Phase p);

enum class TurnDirection { Left, Right };

const char* turn_direction_name(TurnDirection d);

/// Maps logical marker names to the column stems used in the landmark CSV.
struct MarkerSet {
  static constexpr std::array<std::string_view, 8> kRequired = {
      "left_hip",  "right_hip",  "left_shoulder", "right_shoulder",
      "left_heel", "right_heel", "left_toe",      "right_toe"};
  static constexpr std::array<std::string_view, 4> kOptional = {
      "left_knee", "right_knee", "left_ankle", "right_ankle"};

  std::map<std::string, std::string> stems;  // logical name -> column stem

  bool has(std::string_view logical) const;
  const std::string& stem(std::string_view logical) const;

  /// Throws MissingKey if a required marker is unmapped and InvalidValue if
  /// two logical markers share a stem or an unknown logical name appears.
  void validate() const;
};

struct Participant {
  std::string id;
  std::optional<double> height_m;
  std::optional<double> leg_length_m;
};

/// Effective analysis configuration (TOML values merged with defaults and
/// any CLI tolerance override).
struct PipelineConfig {
  double fps = 0.0;
  std::string units = "m";  // "m" or "mm"

  double chair_zone_y_max = 1.125;
  double turn_zone_y = 4.5;
  double turn_tolerance_y = 0.15;
  double walk_speed_min = 0.15;
  double standing_height_fraction = 2.0 / 3.0;
  double hs_refractory_ms = 300.0;
  double hs_prominence_m = 0.05;
  double filter_cutoff_hz = 6.0;
  int max_gap_fill_frames = 0;  // round(0.2 * fps) unless configured
  bool trim_idle = false;

  static constexpr double kGravity = 9.81;  // m/s^2

  Participant participant;
  MarkerSet markers;

  /// Throws InvalidValue naming the offending key.
  void validate() const;
};

/// One marker's trajectory; `observed[t]` is false where the sample was
/// missing in the source file (and possibly interpolated later).
struct MarkerChannel {
  std::vector<Vec3> pos;
  std::vector<std::uint8_t> observed;
};

/// Frame-indexed landmark trajectories for one trial. Treated as immutable
/// once built; the processing stages return fresh copies.
struct TrialRecording {
  std::string trial_id;
  double fps = 0.0;
  std::size_t n_frames = 0;
  std::map<std::string, MarkerChannel> markers;  // keyed by logical name

  bool has_marker(std::string_view logical) const;
  const MarkerChannel& channel(std::string_view logical) const;
  Vec3 at(std::string_view logical, std::size_t frame) const;

  Vec3 mid(std::string_view a, std::string_view b, std::size_t frame) const {
    return (at(a, frame) + at(b, frame)) / 2.0;
  }
};

/// Half-open frame interval [begin, end).
struct Interval {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(std::size_t frame) const { return frame >= begin && frame < end; }
};

struct PhaseSegmentation {
  std::array<Interval, 5> intervals;  // indexed by Phase
  std::optional<TurnDirection> turn_direction;

  const Interval& of(Phase p) const { return intervals[static_cast<std::size_t>(p)]; }
  Interval& of(Phase p) { return intervals[static_cast<std::size_t>(p)]; }

  /// Phase owning `frame`, or nullopt for idle frames before stand onset.
  std::optional<Phase> phase_at(std::size_t frame) const;

  /// [stand.begin, sit.end)
  Interval span() const { return {of(Phase::Stand).begin, of(Phase::Sit).end}; }
};

}  // namespace tug
