#pragma once

// Shared builders for the unit suites: configs with identity marker stems
// and recordings synthesized from per-frame lambdas.

#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "tug/types.hpp"

namespace tug::testing {

inline PipelineConfig test_config(double fps) {
  PipelineConfig cfg;
  cfg.fps = fps;
  cfg.max_gap_fill_frames = static_cast<int>(std::lround(0.2 * fps));
  cfg.participant.id = "test";
  for (std::string_view name : MarkerSet::kRequired)
    cfg.markers.stems[std::string(name)] = std::string(name);
  return cfg;
}

using FrameFn = std::function<Vec3(std::size_t)>;

inline TrialRecording make_recording(double fps, std::size_t n_frames,
                                     const std::map<std::string, FrameFn>& markers,
                                     std::string trial_id = "test") {
  TrialRecording rec;
  rec.trial_id = std::move(trial_id);
  rec.fps = fps;
  rec.n_frames = n_frames;
  for (const auto& [name, fn] : markers) {
    MarkerChannel ch;
    ch.pos.reserve(n_frames);
    for (std::size_t t = 0; t < n_frames; ++t) ch.pos.push_back(fn(t));
    ch.observed.assign(n_frames, 1);
    rec.markers.emplace(name, std::move(ch));
  }
  return rec;
}

/// All eight required markers rigidly attached to a pelvis-center path.
inline TrialRecording body_recording(double fps, std::size_t n_frames,
                                     const FrameFn& pelvis,
                                     std::string trial_id = "test") {
  auto shift = [&](double dx, double dy, double dz) {
    return [=](std::size_t t) {
      Vec3 p = pelvis(t);
      return Vec3{p.x + dx, p.y + dy, p.z + dz};
    };
  };
  return make_recording(fps, n_frames,
                        {{"left_hip", shift(-0.12, 0, 0)},
                         {"right_hip", shift(0.12, 0, 0)},
                         {"left_shoulder", shift(-0.15, 0, 0.45)},
                         {"right_shoulder", shift(0.15, 0, 0.45)},
                         {"left_heel", shift(-0.10, -0.05, -0.85)},
                         {"right_heel", shift(0.10, -0.05, -0.85)},
                         {"left_toe", shift(-0.10, 0.17, -0.86)},
                         {"right_toe", shift(0.10, 0.17, -0.86)}},
                        std::move(trial_id));
}

/// Unique scratch directory under the system temp root, removed on scope exit.
struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path = std::filesystem::temp_directory_path() /
           ("tugkit_test_" + std::to_string(rng()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(std::string_view leaf) const { return path / leaf; }
};

}  // namespace tug::testing
