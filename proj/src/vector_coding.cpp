#include "tug/vector_coding.hpp"

#include <cmath>
#include <limits>

namespace tug {
namespace {

double axis_angle_deg(Vec2 axis, std::size_t frame, const char* segment) {
  if (axis.norm() < 1e-9)
    fail(ErrorKind::DegenerateAxis, std::string(segment) +
                                        " axis has zero length at frame " +
                                        std::to_string(frame));
  return rad2deg(std::atan2(axis.y, axis.x));
}

void unwrap(std::vector<double>& theta) {
  for (std::size_t i = 1; i < theta.size(); ++i)
    theta[i] = theta[i - 1] + wrap_delta_deg(theta[i] - theta[i - 1]);
}

}  // namespace

const char* coupling_bin_name(CouplingBin b) {
  switch (b) {
    case CouplingBin::InPhase: return "InPhase";
    case CouplingBin::AntiPhase: return "AntiPhase";
    case CouplingBin::PelvisPhase: return "PelvisPhase";
    case CouplingBin::TrunkPhase: return "TrunkPhase";
  }
  return "?";
}

AxialAngleSeries axial_angles(const TrialRecording& rec, const PhaseSegmentation& seg) {
  const Interval turn = seg.of(Phase::Turn);
  const auto& lh = rec.channel("left_hip").pos;
  const auto& rh = rec.channel("right_hip").pos;
  const auto& ls = rec.channel("left_shoulder").pos;
  const auto& rs = rec.channel("right_shoulder").pos;

  AxialAngleSeries out;
  out.start_frame = turn.begin;
  out.fps = rec.fps;
  out.pelvis_deg.reserve(turn.size());
  out.trunk_deg.reserve(turn.size());
  for (std::size_t i = turn.begin; i < turn.end; ++i) {
    out.pelvis_deg.push_back(axis_angle_deg((rh[i] - lh[i]).xy(), i, "pelvis"));
    out.trunk_deg.push_back(axis_angle_deg((rs[i] - ls[i]).xy(), i, "trunk"));
  }
  unwrap(out.pelvis_deg);
  unwrap(out.trunk_deg);
  return out;
}

CouplingBin classify_bin(double gamma_deg) {
  const double g = wrap_deg_360(gamma_deg);
  if ((g >= 22.5 && g < 67.5) || (g >= 202.5 && g < 247.5))
    return CouplingBin::InPhase;
  if ((g >= 112.5 && g < 157.5) || (g >= 292.5 && g < 337.5))
    return CouplingBin::AntiPhase;
  if ((g >= 67.5 && g < 112.5) || (g >= 247.5 && g < 292.5))
    return CouplingBin::TrunkPhase;
  return CouplingBin::PelvisPhase;  // [337.5, 360) u [0, 22.5) u [157.5, 202.5)
}

CircularStats circular_stats(std::span<const double> gamma_deg, Warnings* warnings) {
  if (gamma_deg.empty())
    fail(ErrorKind::AllStationary, "no coupling angles to summarize");

  double ms = 0.0, mc = 0.0;
  for (double g : gamma_deg) {
    ms += std::sin(deg2rad(g));
    mc += std::cos(deg2rad(g));
  }
  ms /= static_cast<double>(gamma_deg.size());
  mc /= static_cast<double>(gamma_deg.size());
  // rounding can nudge the resultant just past 1, which would put a negative
  // under the square root below
  const double r = std::min(1.0, std::hypot(mc, ms));

  CircularStats st;
  if (r < 1e-12) {
    st.degenerate = true;
    st.mean_deg = std::numeric_limits<double>::quiet_NaN();
    st.cav_deg = std::numeric_limits<double>::infinity();
    warn(warnings, "coupling angles fully dispersed (R = 0); CAV undefined");
    return st;
  }
  st.mean_deg = wrap_deg_360(rad2deg(std::atan2(ms, mc)));
  st.cav_deg = rad2deg(std::sqrt(-2.0 * std::log(r)));
  return st;
}

CouplingSeries compute_coupling(const AxialAngleSeries& angles, Warnings* warnings) {
  CouplingSeries out;
  out.start_frame = angles.start_frame;
  out.fps = angles.fps;

  const std::size_t pairs = angles.size() > 0 ? angles.size() - 1 : 0;
  out.gamma_deg.resize(pairs);
  out.stationary.resize(pairs);
  out.bin.resize(pairs);

  std::vector<double> valid;
  std::array<std::size_t, 4> counts{};
  for (std::size_t i = 0; i < pairs; ++i) {
    const double dp = angles.pelvis_deg[i + 1] - angles.pelvis_deg[i];
    const double dt = angles.trunk_deg[i + 1] - angles.trunk_deg[i];
    out.gamma_deg[i] = wrap_deg_360(rad2deg(std::atan2(dt, dp)));
    if (std::hypot(dp, dt) < 0.1) {
      out.stationary[i] = 1;
      continue;
    }
    const CouplingBin b = classify_bin(out.gamma_deg[i]);
    out.bin[i] = b;
    counts[static_cast<std::size_t>(b)] += 1;
    valid.push_back(out.gamma_deg[i]);
  }

  out.valid_pairs = valid.size();
  if (valid.empty()) {
    warn(warnings, "trunk and pelvis are stationary across the whole turn");
    return out;
  }
  for (std::size_t b = 0; b < 4; ++b)
    out.occupancy[b] =
        static_cast<double>(counts[b]) / static_cast<double>(valid.size());

  const CircularStats st = circular_stats(valid, warnings);
  if (!st.degenerate) {
    out.mean_deg = st.mean_deg;
    out.cav_deg = st.cav_deg;
  }
  return out;
}

CouplingSeries coupling_angles(const AxialAngleSeries& angles, Warnings* warnings) {
  CouplingSeries out = compute_coupling(angles, warnings);
  if (out.valid_pairs == 0)
    fail(ErrorKind::AllStationary,
         "no frame pair exceeds the 0.1 deg/frame stationarity threshold");
  return out;
}

}  // namespace tug
