#include "tug/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tug {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double angle_deg(const Vec3& a, const Vec3& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na < 1e-12 || nb < 1e-12) return kNaN;
  const double c = std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
  return rad2deg(std::acos(c));
}

ExcursionStat excursion(const std::vector<double>& series, Interval iv) {
  ExcursionStat st{kNaN, kNaN, kNaN};
  bool any = false;
  for (std::size_t i = iv.begin; i < iv.end; ++i) {
    const double v = series[i];
    if (!std::isfinite(v)) continue;
    if (!any) {
      st.min_deg = st.max_deg = v;
      any = true;
    } else {
      st.min_deg = std::min(st.min_deg, v);
      st.max_deg = std::max(st.max_deg, v);
    }
  }
  if (any) st.range_deg = st.max_deg - st.min_deg;
  return st;
}

SideExcursions side_excursions(const JointAngles& j, const PhaseSegmentation& seg) {
  SideExcursions out;
  for (std::size_t p = 0; p < kAllPhases.size(); ++p) {
    const Interval iv = seg.of(kAllPhases[p]);
    out.hip[p] = excursion(j.hip_deg, iv);
    out.knee[p] = excursion(j.knee_deg, iv);
    out.ankle[p] = excursion(j.ankle_deg, iv);
  }
  return out;
}

std::optional<StepStats> stats_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return std::nullopt;
  StepStats st;
  st.n = xs.size();
  double sum = 0.0;
  for (double x : xs) sum += x;
  st.mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - st.mean) * (x - st.mean);
  st.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return st;
}

}  // namespace

std::vector<double> trunk_inclination(const TrialRecording& rec, Warnings* warnings) {
  const auto& lh = rec.channel("left_hip").pos;
  const auto& rh = rec.channel("right_hip").pos;
  const auto& ls = rec.channel("left_shoulder").pos;
  const auto& rs = rec.channel("right_shoulder").pos;

  std::vector<double> out(rec.n_frames);
  bool degenerate = false;
  for (std::size_t i = 0; i < rec.n_frames; ++i) {
    const Vec3 trunk = (ls[i] + rs[i]) * 0.5 - (lh[i] + rh[i]) * 0.5;
    const double a = angle_deg(trunk, Vec3{0.0, 0.0, 1.0});
    if (!std::isfinite(a)) degenerate = true;
    out[i] = a;
  }
  if (degenerate)
    warn(warnings, "trunk segment degenerate at some frames (midpoints coincide)");
  return out;
}

std::optional<JointAngles> joint_angle_series(const TrialRecording& rec, Foot side) {
  const std::string prefix = side == Foot::Left ? "left_" : "right_";
  if (!rec.has_marker(prefix + "knee") || !rec.has_marker(prefix + "ankle"))
    return std::nullopt;

  const auto& hip = rec.channel(prefix + "hip").pos;
  const auto& knee = rec.channel(prefix + "knee").pos;
  const auto& ankle = rec.channel(prefix + "ankle").pos;
  const auto& heel = rec.channel(prefix + "heel").pos;
  const auto& toe = rec.channel(prefix + "toe").pos;
  const auto& lh = rec.channel("left_hip").pos;
  const auto& rh = rec.channel("right_hip").pos;
  const auto& ls = rec.channel("left_shoulder").pos;
  const auto& rs = rec.channel("right_shoulder").pos;

  JointAngles j;
  j.hip_deg.resize(rec.n_frames);
  j.knee_deg.resize(rec.n_frames);
  j.ankle_deg.resize(rec.n_frames);
  for (std::size_t i = 0; i < rec.n_frames; ++i) {
    const Vec3 trunk_down = (lh[i] + rh[i]) * 0.5 - (ls[i] + rs[i]) * 0.5;
    const Vec3 thigh = knee[i] - hip[i];
    const Vec3 shank = ankle[i] - knee[i];
    const Vec3 foot = toe[i] - heel[i];
    j.hip_deg[i] = angle_deg(trunk_down, thigh);
    j.knee_deg[i] = angle_deg(hip[i] - knee[i], ankle[i] - knee[i]);
    j.ankle_deg[i] = angle_deg(shank, foot);
  }
  return j;
}

JointExcursions joint_excursions(const TrialRecording& rec,
                                 const PhaseSegmentation& seg) {
  JointExcursions out;
  if (auto left = joint_angle_series(rec, Foot::Left))
    out.left = side_excursions(*left, seg);
  if (auto right = joint_angle_series(rec, Foot::Right))
    out.right = side_excursions(*right, seg);
  return out;
}

XcomSeries xcom_series(const PelvisTrack& track, const WalkingMask& mask,
                       const PipelineConfig& cfg) {
  double l = cfg.participant.leg_length_m.value_or(0.0);
  if (l <= 0.0) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < track.size(); ++i) {
      if (!mask.at(i)) continue;
      sum += track.pos[i].z;
      ++count;
    }
    if (count == 0)
      fail(ErrorKind::NoLegLength,
           "no leg_length_m configured and no walking frames to estimate one");
    l = sum / static_cast<double>(count);
    if (l <= 0.0)
      fail(ErrorKind::NoLegLength, "estimated pendulum length is not positive");
  }

  XcomSeries out;
  out.pendulum_length_m = l;
  out.omega0 = std::sqrt(PipelineConfig::kGravity / l);
  out.xcom.resize(track.size());
  for (std::size_t i = 0; i < track.size(); ++i)
    out.xcom[i] = track.pos[i].xy() + track.vel[i] * (1.0 / out.omega0);
  return out;
}

double xcom_deviation(const XcomSeries& xcom, const PelvisTrack& track,
                      const PhaseSegmentation& seg, Phase phase) {
  if (phase != Phase::FirstGait && phase != Phase::SecondGait)
    fail(ErrorKind::Internal, "xcom_deviation is defined for gait phases only");
  const Interval iv = seg.of(phase);
  if (iv.size() < 5)
    fail(ErrorKind::PhaseTooShort,
         std::string(phase_name(phase)) + " has " + std::to_string(iv.size()) +
             " frames; xcom_deviation needs at least 5");

  Vec2 c{0.0, 0.0};
  for (std::size_t i = iv.begin; i < iv.end; ++i) c = c + track.pos[i].xy();
  c = c * (1.0 / static_cast<double>(iv.size()));

  // principal axis of the pelvis path (total least squares) so the fit is
  // invariant under horizontal rotations
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = iv.begin; i < iv.end; ++i) {
    const Vec2 d = track.pos[i].xy() - c;
    sxx += d.x * d.x;
    syy += d.y * d.y;
    sxy += d.x * d.y;
  }
  const double phi = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const Vec2 axis{std::cos(phi), std::sin(phi)};

  double sum = 0.0;
  for (std::size_t i = iv.begin; i < iv.end; ++i)
    sum += std::abs(axis.cross(xcom.xcom[i] - c));
  return sum / static_cast<double>(iv.size());
}

TrialMetrics spatiotemporal_metrics(const PhaseSegmentation& seg,
                                    const std::vector<Step>& steps,
                                    const PelvisTrack& track,
                                    const PipelineConfig& cfg) {
  TrialMetrics m;
  for (std::size_t p = 0; p < kAllPhases.size(); ++p)
    m.phase_s[p] = static_cast<double>(seg.of(kAllPhases[p]).size()) / cfg.fps;

  const Interval span = seg.span();
  m.total_time_s = static_cast<double>(span.size()) / cfg.fps;

  std::vector<double> time_first, time_second, len_first, len_second;
  for (const Step& st : steps) {
    const bool first = st.phase == Phase::FirstGait;
    (first ? m.steps_first : m.steps_second) += 1;
    if (st.incomplete) continue;
    (first ? time_first : time_second).push_back(st.step_time_s);
    if (st.step_length_m) (first ? len_first : len_second).push_back(*st.step_length_m);
  }
  m.step_time_first_s = stats_of(time_first);
  m.step_time_second_s = stats_of(time_second);
  m.step_len_first_m = stats_of(len_first);
  m.step_len_second_m = stats_of(len_second);

  const double gait_s = m.phase_s[1] + m.phase_s[3];
  if (gait_s > 0.0 && m.steps_first + m.steps_second > 0)
    m.cadence_spm =
        60.0 * static_cast<double>(m.steps_first + m.steps_second) / gait_s;

  if (m.total_time_s > 0.0 && span.size() >= 2) {
    double path = 0.0;
    for (std::size_t i = span.begin; i + 1 < span.end; ++i)
      path += (track.pos[i + 1].xy() - track.pos[i].xy()).norm();
    m.velocity_mps = path / m.total_time_s;
  }
  return m;
}

KinematicSeries kinematic_series(const TrialRecording& rec, const PelvisTrack& track,
                                 const PhaseSegmentation& seg, const XcomSeries& xcom,
                                 Warnings* warnings) {
  KinematicSeries k;
  k.fps = rec.fps;
  k.time_s.resize(rec.n_frames);
  k.phase.resize(rec.n_frames);
  for (std::size_t i = 0; i < rec.n_frames; ++i) {
    k.time_s[i] = static_cast<double>(i) / rec.fps;
    k.phase[i] = seg.phase_at(i);
  }
  k.pelvis = track.pos;
  k.com_speed_mps = track.speed;
  k.trunk_inclination_deg = trunk_inclination(rec, warnings);
  k.xcom = xcom.xcom;
  k.joints_left = joint_angle_series(rec, Foot::Left);
  k.joints_right = joint_angle_series(rec, Foot::Right);
  return k;
}

}  // namespace tug
