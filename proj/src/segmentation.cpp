#include "tug/segmentation.hpp"

#include <algorithm>
#include <cmath>

namespace tug {

PelvisTrack pelvis_track(const TrialRecording& rec) {
  const auto& lh = rec.channel("left_hip").pos;
  const auto& rh = rec.channel("right_hip").pos;
  const std::size_t n = rec.n_frames;

  PelvisTrack track;
  track.fps = rec.fps;
  track.pos.resize(n);
  track.vel.resize(n);
  track.speed.resize(n);
  for (std::size_t i = 0; i < n; ++i) track.pos[i] = (lh[i] + rh[i]) * 0.5;

  const double dt = 1.0 / rec.fps;
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 d;
    if (i == 0)
      d = (track.pos[1] - track.pos[0]) * (1.0 / dt);
    else if (i == n - 1)
      d = (track.pos[n - 1] - track.pos[n - 2]) * (1.0 / dt);
    else
      d = (track.pos[i + 1] - track.pos[i - 1]) * (1.0 / (2.0 * dt));
    track.vel[i] = d.xy();
    track.speed[i] = track.vel[i].norm();
  }
  return track;
}

PhaseSegmentation segment_phases(const PelvisTrack& track, const PipelineConfig& cfg) {
  const std::size_t n = track.pos.size();
  const double chair = cfg.chair_zone_y_max;
  const double turn = cfg.turn_zone_y - cfg.turn_tolerance_y;

  std::size_t onset = 0;
  if (cfg.trim_idle) {
    const double z0 = track.pos[0].z;
    while (onset + 1 < n && !(track.speed[onset] > cfg.walk_speed_min / 2.0 ||
                              track.pos[onset].z > 1.05 * z0))
      ++onset;
  }

  auto first_where = [&](std::size_t from, auto&& pred) -> std::ptrdiff_t {
    for (std::size_t i = from; i < n; ++i)
      if (pred(track.pos[i].y)) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };

  const std::ptrdiff_t f1 = first_where(onset, [&](double y) { return y > chair; });
  if (f1 < 0)
    fail(ErrorKind::NoStandExit, "pelvis never leaves the chair zone (y <= " +
                                     std::to_string(chair) + ")");
  const std::ptrdiff_t f2 =
      first_where(static_cast<std::size_t>(f1), [&](double y) { return y >= turn; });
  if (f2 < 0)
    fail(ErrorKind::NoTurnEntry, "pelvis never reaches the turn zone (y >= " +
                                     std::to_string(turn) + ")");
  const std::ptrdiff_t f3 =
      first_where(static_cast<std::size_t>(f2), [&](double y) { return y < turn; });
  if (f3 < 0)
    fail(ErrorKind::NoTurnExit, "pelvis never leaves the turn zone again");
  const std::ptrdiff_t f4 =
      first_where(static_cast<std::size_t>(f3), [&](double y) { return y <= chair; });
  if (f4 < 0)
    fail(ErrorKind::NoChairReturn, "pelvis never returns to the chair zone");

  PhaseSegmentation seg;
  seg.intervals[0] = {std::min(onset, static_cast<std::size_t>(f1)),
                      static_cast<std::size_t>(f1)};
  seg.intervals[1] = {static_cast<std::size_t>(f1), static_cast<std::size_t>(f2)};
  seg.intervals[2] = {static_cast<std::size_t>(f2), static_cast<std::size_t>(f3)};
  seg.intervals[3] = {static_cast<std::size_t>(f3), static_cast<std::size_t>(f4)};
  seg.intervals[4] = {static_cast<std::size_t>(f4), n};
  return seg;
}

TurnDirection turn_direction(const PelvisTrack& track, const PhaseSegmentation& seg,
                             Warnings* warnings) {
  const Interval turn = seg.of(Phase::Turn);
  // net unwrapped heading change of the horizontal velocity across the turn
  double total = 0.0;
  bool have_prev = false;
  double prev = 0.0;
  for (std::size_t i = turn.begin; i < turn.end; ++i) {
    if (track.speed[i] < 1e-6) continue;
    const double heading = rad2deg(std::atan2(track.vel[i].y, track.vel[i].x));
    if (have_prev) total += wrap_delta_deg(heading - prev);
    prev = heading;
    have_prev = true;
  }
  if (std::abs(total) < 90.0)
    warn(warnings, "turn heading change is only " + std::to_string(total) +
                       " deg; direction may be unreliable");
  return total < 0.0 ? TurnDirection::Right : TurnDirection::Left;
}

}  // namespace tug
