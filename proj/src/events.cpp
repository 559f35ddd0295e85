#include "tug/events.hpp"

#include <algorithm>
#include <cmath>

namespace tug {
namespace {

std::size_t closing_width(double fps) {
  return static_cast<std::size_t>(std::lround(0.1 * fps));
}

const char* heel_of(Foot f) { return f == Foot::Left ? "left_heel" : "right_heel"; }
const char* toe_of(Foot f) { return f == Foot::Left ? "left_toe" : "right_toe"; }

std::vector<GaitEvent> detect_events(EventKind kind, const TrialRecording& rec,
                                     const PelvisTrack& track,
                                     const ProgressionVector& u,
                                     const WalkingMask& mask,
                                     const PhaseSegmentation& seg,
                                     const PipelineConfig& cfg, Warnings* warnings) {
  const std::size_t min_distance = static_cast<std::size_t>(
      std::max<long>(1, std::lround(cfg.hs_refractory_ms / 1000.0 * cfg.fps)));

  std::vector<GaitEvent> events;
  for (Foot foot : {Foot::Left, Foot::Right}) {
    const char* marker =
        kind == EventKind::HeelStrike ? heel_of(foot) : toe_of(foot);
    const std::vector<double> s = project_marker(rec, marker, track, u);
    std::vector<double> signal = s;
    if (kind == EventKind::ToeOff)
      for (double& v : signal) v = -v;

    for (std::size_t frame :
         find_peaks(signal, min_distance, cfg.hs_prominence_m, &mask)) {
      const std::optional<Phase> phase = seg.phase_at(frame);
      if (phase != Phase::FirstGait && phase != Phase::SecondGait) continue;
      events.push_back({kind, foot, frame, static_cast<double>(frame) / cfg.fps,
                        *phase, s[frame]});
    }
  }
  std::sort(events.begin(), events.end(), [](const GaitEvent& a, const GaitEvent& b) {
    if (a.frame != b.frame) return a.frame < b.frame;
    return a.foot < b.foot;
  });
  if (events.empty())
    warn(warnings, std::string(kind == EventKind::HeelStrike ? "no heel strikes"
                                                             : "no toe-offs") +
                       " detected inside the gait phases");
  return events;
}

}  // namespace

const char* event_kind_name(EventKind k) {
  return k == EventKind::HeelStrike ? "HS" : "TO";
}

WalkingMask walking_mask(const PelvisTrack& track, const PipelineConfig& cfg) {
  const std::size_t n = track.size();
  double z_min = track.pos[0].z;
  double z_max = track.pos[0].z;
  for (const Vec3& p : track.pos) {
    z_min = std::min(z_min, p.z);
    z_max = std::max(z_max, p.z);
  }
  const double z_gate = z_min + cfg.standing_height_fraction * (z_max - z_min);

  WalkingMask mask;
  mask.walking.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    mask.walking[i] =
        (track.pos[i].z >= z_gate && track.speed[i] > cfg.walk_speed_min) ? 1 : 0;

  // close interior false runs shorter than round(0.1 * fps) frames
  const std::size_t w = closing_width(track.fps);
  if (w > 0) {
    std::size_t i = 0;
    while (i < n) {
      if (mask.walking[i]) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < n && !mask.walking[j]) ++j;
      const bool interior = i > 0 && j < n;
      if (interior && j - i < w)
        for (std::size_t k = i; k < j; ++k) mask.walking[k] = 1;
      i = j;
    }
  }
  return mask;
}

ProgressionVector progression_vector(const PelvisTrack& track) {
  constexpr double kMinSpeed = 0.02;
  const std::size_t n = track.size();

  ProgressionVector out;
  out.u.assign(n, Vec2{0.0, 0.0});
  std::ptrdiff_t first_valid = -1;
  bool have = false;
  Vec2 current{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    if (track.speed[i] >= kMinSpeed) {
      current = track.vel[i] * (1.0 / track.speed[i]);
      if (!have) first_valid = static_cast<std::ptrdiff_t>(i);
      have = true;
    }
    out.u[i] = current;
  }
  if (!have)
    fail(ErrorKind::NeverMoving, "pelvis speed never reaches 0.02 m/s");
  for (std::ptrdiff_t i = 0; i < first_valid; ++i)
    out.u[static_cast<std::size_t>(i)] = out.u[static_cast<std::size_t>(first_valid)];
  return out;
}

std::vector<double> project_marker(const TrialRecording& rec, std::string_view logical,
                                   const PelvisTrack& track,
                                   const ProgressionVector& u) {
  const auto& pos = rec.channel(logical).pos;
  std::vector<double> s(rec.n_frames);
  for (std::size_t i = 0; i < rec.n_frames; ++i)
    s[i] = (pos[i].xy() - track.pos[i].xy()).dot(u.u[i]);
  return s;
}

std::vector<std::size_t> find_peaks(std::span<const double> s, std::size_t min_distance,
                                    double min_prominence, const WalkingMask* mask) {
  const std::size_t n = s.size();
  if (min_distance == 0) min_distance = 1;

  // candidate local maxima: s(i-1) < s(i) >= s(i+1); interior plateau frames
  // fail the strict left inequality, so plateaus resolve to their left edge
  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(s[i - 1] < s[i] && s[i] >= s[i + 1])) continue;
    if (mask != nullptr && !mask->at(i)) continue;
    candidates.push_back(i);
  }

  // topographic prominence against the full signal
  std::vector<std::size_t> prominent;
  for (std::size_t peak : candidates) {
    const double h = s[peak];
    double left_min = h;
    for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(peak) - 1;
         j >= 0 && s[static_cast<std::size_t>(j)] <= h; --j)
      left_min = std::min(left_min, s[static_cast<std::size_t>(j)]);
    double right_min = h;
    for (std::size_t j = peak + 1; j < n && s[j] <= h; ++j)
      right_min = std::min(right_min, s[j]);
    if (h - std::max(left_min, right_min) >= min_prominence)
      prominent.push_back(peak);
  }

  // greedy highest-first thinning; equal heights keep the leftmost
  std::vector<std::size_t> order = prominent;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (s[a] != s[b]) return s[a] > s[b];
    return a < b;
  });
  std::vector<std::size_t> kept;
  for (std::size_t peak : order) {
    const bool clash = std::any_of(kept.begin(), kept.end(), [&](std::size_t q) {
      const std::size_t gap = peak > q ? peak - q : q - peak;
      return gap < min_distance;
    });
    if (!clash) kept.push_back(peak);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<GaitEvent> detect_heel_strikes(const TrialRecording& rec,
                                           const PelvisTrack& track,
                                           const ProgressionVector& u,
                                           const WalkingMask& mask,
                                           const PhaseSegmentation& seg,
                                           const PipelineConfig& cfg,
                                           Warnings* warnings) {
  return detect_events(EventKind::HeelStrike, rec, track, u, mask, seg, cfg, warnings);
}

std::vector<GaitEvent> detect_toe_offs(const TrialRecording& rec,
                                       const PelvisTrack& track,
                                       const ProgressionVector& u,
                                       const WalkingMask& mask,
                                       const PhaseSegmentation& seg,
                                       const PipelineConfig& cfg, Warnings* warnings) {
  return detect_events(EventKind::ToeOff, rec, track, u, mask, seg, cfg, warnings);
}

std::vector<Step> pair_steps(const std::vector<GaitEvent>& heel_strikes,
                             const std::vector<GaitEvent>& toe_offs) {
  std::vector<Step> steps;
  for (Phase phase : {Phase::FirstGait, Phase::SecondGait}) {
    std::vector<const GaitEvent*> hs;
    for (const GaitEvent& e : heel_strikes)
      if (e.phase == phase) hs.push_back(&e);
    for (std::size_t k = 1; k < hs.size(); ++k) {
      const GaitEvent& a = *hs[k - 1];
      const GaitEvent& b = *hs[k];
      Step st;
      st.phase = phase;
      st.leading_foot = b.foot;
      st.hs_frame = b.frame;
      st.hs_time_s = b.time_s;
      st.start_foot = a.foot;
      st.start_hs_frame = a.frame;
      st.start_hs_time_s = a.time_s;
      st.step_time_s = b.time_s - a.time_s;
      st.incomplete = a.foot == b.foot;
      for (const GaitEvent& to : toe_offs) {
        if (to.foot != b.foot) continue;
        if (to.frame <= a.frame || to.frame >= b.frame) continue;
        st.trailing_to_frame = to.frame;
        st.trailing_to_time_s = to.time_s;
        break;  // earliest qualifying toe-off
      }
      steps.push_back(st);
    }
  }
  return steps;
}

void step_lengths(std::vector<Step>& steps, const TrialRecording& rec,
                  const ProgressionVector& u) {
  for (Step& st : steps) {
    if (st.incomplete) continue;
    const Vec3& end = rec.channel(heel_of(st.leading_foot)).pos[st.hs_frame];
    const Vec3& start = rec.channel(heel_of(st.start_foot)).pos[st.start_hs_frame];
    st.step_length_m = std::abs((end.xy() - start.xy()).dot(u.u[st.hs_frame]));
  }
}

}  // namespace tug
