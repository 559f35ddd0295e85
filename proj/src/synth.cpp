#include "tug/synth.hpp"

#include <algorithm>
#include <cmath>

#include "tug/csv.hpp"
#include "tug/error.hpp"

namespace tug::synth {
namespace {

// splitmix64: portable, stated in the docs so fixtures are reproducible
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
  // (0, 1]: Box-Muller needs log() of a nonzero value
  return static_cast<double>((splitmix64(state) >> 11) + 1) * 0x1.0p-53;
}

class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : state_(seed) {}

  double next() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    const double u1 = uniform01(state_);
    const double u2 = uniform01(state_);
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_ = false;
};

struct Timeline {
  double t_walk_out;   // stand ends, outbound walk begins
  double t_turn;       // arc begins
  double t_walk_back;  // arc ends, return walk begins
  double t_sit;        // return walk ends, descent begins
  double t_end;        // descent complete
  double y_c;          // arc center y (straight segments end here)
  double walk_speed;
};

struct PathSample {
  Vec2 pos;
  double z;
  double alpha_p;  // pelvis mediolateral axis angle, radians, unwrapped from 0
};

double smoothstep01(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * (3.0 - 2.0 * u);
}

PathSample sample_path(const SynthSpec& spec, const Timeline& tl, double t) {
  const double s = spec.turn_right ? 1.0 : -1.0;
  PathSample p;
  p.z = spec.stand_z;
  if (t < tl.t_walk_out) {
    p.pos = {0.0, spec.start_y};
    p.z = spec.sit_z +
          (spec.stand_z - spec.sit_z) * smoothstep01(t / spec.stand_duration_s);
    p.alpha_p = 0.0;
  } else if (t < tl.t_turn) {
    p.pos = {0.0, spec.start_y + tl.walk_speed * (t - tl.t_walk_out)};
    p.alpha_p = 0.0;
  } else if (t < tl.t_walk_back) {
    const double prog = (t - tl.t_turn) / spec.turn_duration_s;
    const double phi = spec.turn_right ? kPi * (1.0 - prog) : kPi * prog;
    p.pos = Vec2{s * spec.turn_radius, tl.y_c} +
            Vec2{std::cos(phi), std::sin(phi)} * spec.turn_radius;
    p.alpha_p = -s * kPi * prog;
  } else if (t < tl.t_sit) {
    p.pos = {2.0 * s * spec.turn_radius,
             tl.y_c - tl.walk_speed * (t - tl.t_walk_back)};
    p.alpha_p = -s * kPi;
  } else {
    p.pos = {2.0 * s * spec.turn_radius, spec.start_y};
    p.z = spec.stand_z - (spec.stand_z - spec.sit_z) *
                             smoothstep01((t - tl.t_sit) / spec.sit_duration_s);
    p.alpha_p = -s * kPi;
  }
  return p;
}

// trunk follows the pelvis rotation behind a deadband of lag degrees
double trunk_axis(double alpha_p, double lag_deg) {
  const double lag = deg2rad(lag_deg);
  const double mag = std::abs(alpha_p);
  if (mag <= lag) return 0.0;
  return (alpha_p < 0.0 ? -1.0 : 1.0) * (mag - lag);
}

std::vector<double> event_times(double omega, double rho, double target,
                                double t_end) {
  // solve sin(omega t + rho) = target for target = +-1:
  // omega t + rho = pi/2 + 2 pi k (crest) or -pi/2 + 2 pi k (trough)
  const double base = (target > 0.0 ? kPi / 2.0 : -kPi / 2.0) - rho;
  std::vector<double> times;
  const long k0 = static_cast<long>(std::floor((-base) / (2.0 * kPi))) - 1;
  for (long k = k0;; ++k) {
    const double t = (base + 2.0 * kPi * static_cast<double>(k)) / omega;
    if (t < 0.0) continue;
    if (t > t_end) break;
    times.push_back(t);
  }
  return times;
}

}  // namespace

std::pair<TrialRecording, GroundTruth> generate_trial(const SynthSpec& spec) {
  if (spec.fps <= 0.0) fail(ErrorKind::InfeasibleSpec, "fps must be positive");
  if (spec.stand_duration_s <= 0.0 || spec.turn_duration_s <= 0.0 ||
      spec.sit_duration_s <= 0.0)
    fail(ErrorKind::InfeasibleSpec, "all durations must be positive");
  if (spec.step_frequency <= 0.0)
    fail(ErrorKind::InfeasibleSpec, "step_frequency must be positive");
  if (spec.heel_amplitude <= 0.0)
    fail(ErrorKind::InfeasibleSpec, "heel_amplitude must be positive");
  if (spec.noise_sd < 0.0) fail(ErrorKind::InfeasibleSpec, "noise_sd must be >= 0");

  const double walk_speed = spec.step_length > 0.0
                                ? spec.step_length * spec.step_frequency
                                : spec.walk_speed;
  if (walk_speed <= 0.0) fail(ErrorKind::InfeasibleSpec, "walking speed must be positive");
  const double step_length = walk_speed / spec.step_frequency;

  const double y_c = spec.turn_y - spec.turn_radius;
  if (y_c <= spec.chair_y)
    fail(ErrorKind::InfeasibleSpec, "turn apex circle dips into the chair zone");
  const double walkway = y_c - spec.start_y;
  if (walkway <= step_length)
    fail(ErrorKind::InfeasibleSpec, "walkway shorter than one step");

  Timeline tl;
  tl.walk_speed = walk_speed;
  tl.y_c = y_c;
  tl.t_walk_out = spec.stand_duration_s;
  tl.t_turn = tl.t_walk_out + walkway / walk_speed;
  tl.t_walk_back = tl.t_turn + spec.turn_duration_s;
  tl.t_sit = tl.t_walk_back + walkway / walk_speed;
  tl.t_end = tl.t_sit + spec.sit_duration_s;

  const std::size_t n_frames =
      static_cast<std::size_t>(std::ceil((tl.t_end + 0.2) * spec.fps)) + 1;

  std::vector<PathSample> path(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i)
    path[i] = sample_path(spec, tl, static_cast<double>(i) / spec.fps);

  // phase boundaries: the same first-crossing rules segmentation applies,
  // evaluated on the exact noiseless pelvis trajectory
  GroundTruth gt;
  gt.n_frames = n_frames;
  gt.turn_direction = spec.turn_right ? TurnDirection::Right : TurnDirection::Left;
  const double turn_line = spec.turn_y - spec.turn_tolerance_y;
  auto scan = [&](std::size_t from, auto&& pred) -> std::size_t {
    for (std::size_t i = from; i < n_frames; ++i)
      if (pred(path[i].pos.y)) return i;
    fail(ErrorKind::InfeasibleSpec, "generated path never crosses a phase line");
  };
  gt.f1 = scan(0, [&](double y) { return y > spec.chair_y; });
  gt.f2 = scan(gt.f1, [&](double y) { return y >= turn_line; });
  gt.f3 = scan(gt.f2, [&](double y) { return y < turn_line; });
  gt.f4 = scan(gt.f3, [&](double y) { return y <= spec.chair_y; });

  // pick a foot phase placing every crest/trough >= 3 frames from every
  // boundary, chasing candidates along a golden-ratio sequence
  const double omega = 2.0 * kPi * (spec.step_frequency / 2.0);
  const std::array<std::size_t, 4> boundaries = {gt.f1, gt.f2, gt.f3, gt.f4};
  double rho = 0.0;
  double best_margin = -1.0;
  for (int j = 0; j < 64; ++j) {
    const double cand =
        2.0 * kPi * std::fmod(0.6180339887498949 * static_cast<double>(j), 1.0);
    double margin = static_cast<double>(n_frames);
    for (double foot_rho : {cand, cand + kPi}) {
      for (double target : {1.0, -1.0}) {
        for (double t : event_times(omega, foot_rho, target, tl.t_end)) {
          const double frame = std::round(t * spec.fps);
          for (std::size_t b : boundaries)
            margin = std::min(margin, std::abs(frame - static_cast<double>(b)));
        }
      }
    }
    if (margin > best_margin) {
      best_margin = margin;
      rho = cand;
    }
    if (best_margin >= 3.0) break;
  }
  if (best_margin < 3.0)
    fail(ErrorKind::InfeasibleSpec,
         "no foot phase keeps gait events 3+ frames clear of phase boundaries");
  gt.foot_phase_offset_rad = rho;
  gt.min_event_margin_frames = best_margin;

  // ground-truth events inside the gait windows
  auto in_gait = [&](std::size_t f) {
    return (f >= gt.f1 && f < gt.f2) || (f >= gt.f3 && f < gt.f4);
  };
  std::size_t hs_first = 0, hs_second = 0;
  for (Foot foot : {Foot::Left, Foot::Right}) {
    const double foot_rho = foot == Foot::Left ? rho : rho + kPi;
    auto& hs_frames = foot == Foot::Left ? gt.hs_frames_left : gt.hs_frames_right;
    auto& hs_times = foot == Foot::Left ? gt.hs_times_left : gt.hs_times_right;
    auto& to_frames = foot == Foot::Left ? gt.to_frames_left : gt.to_frames_right;
    for (double t : event_times(omega, foot_rho, 1.0, tl.t_end)) {
      const auto f = static_cast<std::size_t>(std::lround(t * spec.fps));
      if (f >= n_frames || !in_gait(f)) continue;
      hs_frames.push_back(f);
      hs_times.push_back(t);
      (f < gt.f2 ? hs_first : hs_second) += 1;
    }
    for (double t : event_times(omega, foot_rho, -1.0, tl.t_end)) {
      const auto f = static_cast<std::size_t>(std::lround(t * spec.fps));
      if (f < n_frames && in_gait(f)) to_frames.push_back(f);
    }
  }
  gt.steps_first = hs_first > 0 ? hs_first - 1 : 0;
  gt.steps_second = hs_second > 0 ? hs_second - 1 : 0;
  gt.step_length_m = step_length;
  gt.step_time_s = 1.0 / spec.step_frequency;

  // markers
  TrialRecording rec;
  rec.trial_id = "synthetic";
  rec.fps = spec.fps;
  rec.n_frames = n_frames;
  for (std::string_view name : MarkerSet::kRequired) {
    MarkerChannel ch;
    ch.pos.resize(n_frames);
    ch.observed.assign(n_frames, 1);
    rec.markers.emplace(std::string(name), std::move(ch));
  }

  std::vector<double> alpha_t(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    const double t = static_cast<double>(i) / spec.fps;
    const PathSample& p = path[i];
    alpha_t[i] = trunk_axis(p.alpha_p, spec.trunk_pelvis_lag_deg);

    const Vec2 ap{std::cos(p.alpha_p), std::sin(p.alpha_p)};
    const Vec2 at{std::cos(alpha_t[i]), std::sin(alpha_t[i])};
    const Vec2 heading{-std::sin(p.alpha_p), std::cos(p.alpha_p)};
    const double osc_l = spec.heel_amplitude * std::sin(omega * t + rho);
    const double osc_r = spec.heel_amplitude * std::sin(omega * t + rho + kPi);

    auto put = [&](std::string_view name, Vec2 xy, double z) {
      rec.markers[std::string(name)].pos[i] = {xy.x, xy.y, z};
    };
    put("left_hip", p.pos - ap * (spec.pelvis_width / 2.0), p.z);
    put("right_hip", p.pos + ap * (spec.pelvis_width / 2.0), p.z);
    put("left_shoulder", p.pos - at * (spec.shoulder_width / 2.0),
        p.z + spec.trunk_length);
    put("right_shoulder", p.pos + at * (spec.shoulder_width / 2.0),
        p.z + spec.trunk_length);
    const Vec2 lheel = p.pos - ap * (spec.foot_separation / 2.0) + heading * osc_l;
    const Vec2 rheel = p.pos + ap * (spec.foot_separation / 2.0) + heading * osc_r;
    put("left_heel", lheel, 0.03);
    put("right_heel", rheel, 0.03);
    put("left_toe", lheel + heading * spec.foot_length, 0.02);
    put("right_toe", rheel + heading * spec.foot_length, 0.02);
  }

  // coupling-angle ground truth across the turn interval
  for (std::size_t i = gt.f2; i + 1 < gt.f3; ++i) {
    const double dp = rad2deg(path[i + 1].alpha_p - path[i].alpha_p);
    const double dt = rad2deg(alpha_t[i + 1] - alpha_t[i]);
    gt.gamma_deg.push_back(wrap_deg_360(rad2deg(std::atan2(dt, dp))));
  }

  if (spec.noise_sd > 0.0) {
    Gaussian g(spec.seed);
    for (auto& [name, ch] : rec.markers)
      for (Vec3& p : ch.pos) {
        p.x += spec.noise_sd * g.next();
        p.y += spec.noise_sd * g.next();
        p.z += spec.noise_sd * g.next();
      }
  }
  return {std::move(rec), gt};
}

void write_config_toml(const SynthSpec& spec, const std::filesystem::path& path) {
  std::string out;
  out += "[trial]\n";
  out += "fps = " + csv::format_full(spec.fps) + "\n";
  out += "units = \"m\"\n\n";
  out += "[participant]\n";
  out += "id = \"synthetic\"\n\n";
  out += "[thresholds]\n";
  out += "chair_zone_y_max = " + csv::format_full(spec.chair_y) + "\n";
  out += "turn_zone_y = " + csv::format_full(spec.turn_y) + "\n";
  out += "turn_tolerance_y = " + csv::format_full(spec.turn_tolerance_y) + "\n";
  out += "walk_speed_min = 0.15\n";
  out += "standing_height_fraction = 0.6666666666666666\n";
  out += "hs_refractory_ms = 300\n";
  out += "filter_cutoff_hz = 6.0\n";
  out += "max_gap_fill_s = 0.2\n\n";
  out += "[markers]\n";
  for (std::string_view name : MarkerSet::kRequired)
    out += std::string(name) + " = \"" + std::string(name) + "\"\n";
  csv::write_file(path, out);
}

}  // namespace tug::synth
