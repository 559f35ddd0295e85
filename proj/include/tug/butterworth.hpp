#pragma once

#include <span>
#include <vector>

namespace tug {

/// Second-order IIR section, normalized so a0 = 1.
struct Biquad {
  double b0, b1, b2;
  double a1, a2;
};

/// 2nd-order Butterworth low-pass via the bilinear transform with frequency
/// pre-warping. Requires 0 < cutoff_hz < fs / 2.
Biquad butter2_lowpass(double cutoff_hz, double fs);

/// Zero-phase filtering: odd-reflection padding of 3x the filter order at
/// both ends, steady-state initial conditions, one forward and one backward
/// pass. Output length equals input length.
std::vector<double> filtfilt(const Biquad& f, std::span<const double> x);

}  // namespace tug
