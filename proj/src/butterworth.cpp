#include "tug/butterworth.hpp"

#include <algorithm>
#include <cmath>

#include "tug/error.hpp"
#include "tug/geometry.hpp"

namespace tug {
namespace {

constexpr int kOrder = 2;
constexpr int kPadFactor = 3;  // reflection pad = 3 x order

// One IIR pass in transposed direct form II with explicit initial state.
void run_pass(const Biquad& f, const std::vector<double>& x, std::vector<double>& y,
              double z1_0, double z2_0) {
  double z1 = z1_0;
  double z2 = z2_0;
  y.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double yi = f.b0 * xi + z1;
    z1 = f.b1 * xi - f.a1 * yi + z2;
    z2 = f.b2 * xi - f.a2 * yi;
    y[i] = yi;
  }
}

// Steady-state filter state for a unit step, scaled by the first sample so a
// constant input passes through exactly.
void steady_state(const Biquad& f, double x0, double& z1, double& z2) {
  const double dc = (f.b0 + f.b1 + f.b2) / (1.0 + f.a1 + f.a2);
  z2 = (f.b2 - f.a2 * dc) * x0;
  z1 = (f.b1 - f.a1 * dc) * x0 + z2;
}

}  // namespace

Biquad butter2_lowpass(double cutoff_hz, double fs) {
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < fs / 2.0))
    fail(ErrorKind::InvalidValue, "low-pass cutoff must be in (0, fs/2)");
  const double k = std::tan(kPi * cutoff_hz / fs);  // pre-warped
  const double k2 = k * k;
  const double sqrt2 = std::sqrt(2.0);
  const double norm = 1.0 / (1.0 + sqrt2 * k + k2);
  Biquad f;
  f.b0 = k2 * norm;
  f.b1 = 2.0 * f.b0;
  f.b2 = f.b0;
  f.a1 = 2.0 * (k2 - 1.0) * norm;
  f.a2 = (1.0 - sqrt2 * k + k2) * norm;
  return f;
}

std::vector<double> filtfilt(const Biquad& f, std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  if (n == 1) return {x[0]};

  const std::size_t pad = std::min<std::size_t>(kPadFactor * kOrder, n - 1);

  // odd (point) reflection about both end samples
  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

  double z1 = 0.0, z2 = 0.0;
  std::vector<double> fwd;
  steady_state(f, ext.front(), z1, z2);
  run_pass(f, ext, fwd, z1, z2);

  std::reverse(fwd.begin(), fwd.end());
  std::vector<double> bwd;
  steady_state(f, fwd.front(), z1, z2);
  run_pass(f, fwd, bwd, z1, z2);
  std::reverse(bwd.begin(), bwd.end());

  return std::vector<double>(bwd.begin() + static_cast<std::ptrdiff_t>(pad),
                             bwd.begin() + static_cast<std::ptrdiff_t>(pad + n));
}

}  // namespace tug
