#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tug/error.hpp"
#include "tug/types.hpp"

namespace tug {

/// Unwrapped transverse-plane orientation of the pelvis and trunk
/// mediolateral axes across the Turn interval, degrees.
struct AxialAngleSeries {
  std::size_t start_frame = 0;
  double fps = 0.0;
  std::vector<double> pelvis_deg;
  std::vector<double> trunk_deg;

  std::size_t size() const { return pelvis_deg.size(); }
};

AxialAngleSeries axial_angles(const TrialRecording& rec, const PhaseSegmentation& seg);

enum class CouplingBin { InPhase, AntiPhase, PelvisPhase, TrunkPhase };

const char* coupling_bin_name(CouplingBin b);

/// Four-bin classification of a coupling angle in [0, 360): 45-degree-wide
/// half-open bins centered on the canonical diagonals.
CouplingBin classify_bin(double gamma_deg);

struct CircularStats {
  double mean_deg = 0.0;  // NaN when fully dispersed (R = 0)
  double cav_deg = 0.0;   // +inf sentinel when fully dispersed
  bool degenerate = false;
};

/// Circular mean and circular SD (sqrt(-2 ln R)) of a set of angles in
/// degrees. Throws AllStationary on an empty set; R = 0 yields the
/// max-dispersion sentinel plus a warning.
CircularStats circular_stats(std::span<const double> gamma_deg,
                             Warnings* warnings = nullptr);

/// Coupling angle gamma = atan2(d_trunk, d_pelvis) per consecutive frame
/// pair, with near-zero pairs (< 0.1 deg/frame) flagged stationary and
/// excluded from bins and statistics.
struct CouplingSeries {
  std::size_t start_frame = 0;
  double fps = 0.0;
  std::vector<double> gamma_deg;
  std::vector<std::uint8_t> stationary;
  std::vector<std::optional<CouplingBin>> bin;  // nullopt where stationary
  std::size_t valid_pairs = 0;
  std::array<double, 4> occupancy{};  // in/anti/pelvis/trunk fractions
  std::optional<double> mean_deg;
  std::optional<double> cav_deg;
};

/// Full coupling computation (angles, bins, occupancy, circular stats).
/// Never throws on an all-stationary series; valid_pairs is 0 and the
/// summary fields stay empty, with a warning.
CouplingSeries compute_coupling(const AxialAngleSeries& angles,
                                Warnings* warnings = nullptr);

/// Contract form of compute_coupling: throws AllStationary when no pair
/// clears the stationarity threshold.
CouplingSeries coupling_angles(const AxialAngleSeries& angles,
                               Warnings* warnings = nullptr);

}  // namespace tug
