#include "tug/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "tug/butterworth.hpp"
#include "tug/csv.hpp"
#include "tug/error.hpp"
#include "tug/toml.hpp"

namespace tug {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

PipelineConfig load_config(const std::filesystem::path& path) {
  const toml::Document doc = toml::parse_file(path);
  PipelineConfig cfg;

  const auto fps = toml::get_number(doc, "trial", "fps");
  if (!fps) fail(ErrorKind::MissingKey, "trial.fps is required");
  cfg.fps = *fps;
  if (auto units = toml::get_string(doc, "trial", "units")) cfg.units = *units;
  if (auto trim = toml::get_bool(doc, "trial", "trim_idle")) cfg.trim_idle = *trim;

  if (auto id = toml::get_string(doc, "participant", "id")) cfg.participant.id = *id;
  if (auto h = toml::get_number(doc, "participant", "height_m"))
    cfg.participant.height_m = *h;
  if (auto l = toml::get_number(doc, "participant", "leg_length_m"))
    cfg.participant.leg_length_m = *l;

  auto num = [&](std::string_view key, double& out) {
    if (auto v = toml::get_number(doc, "thresholds", key)) out = *v;
  };
  num("chair_zone_y_max", cfg.chair_zone_y_max);
  num("turn_zone_y", cfg.turn_zone_y);
  num("turn_tolerance_y", cfg.turn_tolerance_y);
  num("walk_speed_min", cfg.walk_speed_min);
  num("standing_height_fraction", cfg.standing_height_fraction);
  num("hs_refractory_ms", cfg.hs_refractory_ms);
  num("hs_prominence_m", cfg.hs_prominence_m);
  num("filter_cutoff_hz", cfg.filter_cutoff_hz);

  double gap_fill_s = 0.2;
  num("max_gap_fill_s", gap_fill_s);
  if (gap_fill_s < 0.0)
    fail(ErrorKind::InvalidValue, "thresholds.max_gap_fill_s must be >= 0");
  cfg.max_gap_fill_frames = static_cast<int>(std::lround(gap_fill_s * cfg.fps));

  if (auto markers = doc.tables.find("markers"); markers != doc.tables.end()) {
    for (const auto& [logical, value] : markers->second) {
      const auto* stem = std::get_if<std::string>(&value);
      if (stem == nullptr)
        fail(ErrorKind::InvalidValue, "markers." + logical + " must be a string");
      cfg.markers.stems[logical] = *stem;
    }
  }
  if (cfg.markers.stems.empty())
    fail(ErrorKind::MissingKey, "the [markers] table is required");

  cfg.validate();
  return cfg;
}

TrialRecording load_landmarks_csv(const std::filesystem::path& path,
                                  const PipelineConfig& cfg) {
  const auto rows = csv::parse_file(path);
  if (rows.empty() || rows[0].empty())
    fail(ErrorKind::IoError, "'" + path.string() + "' has no header row");
  const auto& header = rows[0];

  // column index per marker axis; suffix match is case-insensitive
  struct Triple {
    std::ptrdiff_t col[3] = {-1, -1, -1};
  };
  std::map<std::string, Triple> columns;
  for (const auto& [logical, stem] : cfg.markers.stems) {
    Triple t;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string& name = header[c];
      if (name.size() != stem.size() + 2 || name.compare(0, stem.size(), stem) != 0)
        continue;
      if (name[stem.size()] != '_') continue;
      switch (std::tolower(static_cast<unsigned char>(name[stem.size() + 1]))) {
        case 'x': t.col[0] = static_cast<std::ptrdiff_t>(c); break;
        case 'y': t.col[1] = static_cast<std::ptrdiff_t>(c); break;
        case 'z': t.col[2] = static_cast<std::ptrdiff_t>(c); break;
        default: break;
      }
    }
    const bool complete = t.col[0] >= 0 && t.col[1] >= 0 && t.col[2] >= 0;
    const bool required =
        std::find(MarkerSet::kRequired.begin(), MarkerSet::kRequired.end(), logical) !=
        MarkerSet::kRequired.end();
    if (!complete) {
      if (required)
        fail(ErrorKind::MissingColumn,
             "marker '" + logical + "' (stem '" + stem + "') has no complete " +
                 "X/Y/Z column triple in '" + path.string() + "'");
      continue;  // optional marker absent from the file
    }
    columns[logical] = t;
  }

  const std::size_t n_frames = rows.size() - 1;
  const double scale = cfg.units == "mm" ? 1e-3 : 1.0;

  TrialRecording rec;
  rec.trial_id = path.stem().string();
  rec.fps = cfg.fps;
  rec.n_frames = n_frames;

  for (const auto& [logical, triple] : columns) {
    MarkerChannel ch;
    ch.pos.resize(n_frames, Vec3{kNaN, kNaN, kNaN});
    ch.observed.assign(n_frames, 0);
    for (std::size_t r = 0; r < n_frames; ++r) {
      const auto& row = rows[r + 1];
      double v[3];
      bool ok = true;
      for (int a = 0; a < 3; ++a) {
        const auto c = static_cast<std::size_t>(triple.col[a]);
        const auto parsed =
            c < row.size() ? csv::parse_double(row[c]) : std::nullopt;
        if (!parsed || !std::isfinite(*parsed)) {
          ok = false;
          break;
        }
        v[a] = *parsed * scale;
      }
      if (ok) {
        ch.pos[r] = Vec3{v[0], v[1], v[2]};
        ch.observed[r] = 1;
      }
    }
    const bool any = std::any_of(ch.observed.begin(), ch.observed.end(),
                                 [](std::uint8_t o) { return o != 0; });
    if (!any) {
      const bool required =
          std::find(MarkerSet::kRequired.begin(), MarkerSet::kRequired.end(),
                    logical) != MarkerSet::kRequired.end();
      if (required)
        fail(ErrorKind::AllGap, "marker '" + logical + "' has no observed data");
      continue;
    }
    rec.markers.emplace(logical, std::move(ch));
  }

  if (static_cast<double>(n_frames) < 2.0 * cfg.fps)
    fail(ErrorKind::TooShort, "trial '" + rec.trial_id + "' has " +
                                  std::to_string(n_frames) + " frames, need at least " +
                                  csv::format_number(2.0 * cfg.fps) + " (2 s)");
  return rec;
}

TrialRecording fill_gaps(const TrialRecording& rec, const PipelineConfig& cfg) {
  TrialRecording out = rec;
  const std::size_t n = rec.n_frames;
  for (auto& [logical, ch] : out.markers) {
    std::vector<std::size_t> observed;
    for (std::size_t i = 0; i < n; ++i)
      if (ch.observed[i]) observed.push_back(i);
    if (observed.empty())
      fail(ErrorKind::AllGap, "marker '" + logical + "' has no observed data");

    for (std::size_t i = 0; i < observed.front(); ++i)
      ch.pos[i] = ch.pos[observed.front()];
    for (std::size_t i = observed.back() + 1; i < n; ++i)
      ch.pos[i] = ch.pos[observed.back()];

    for (std::size_t k = 0; k + 1 < observed.size(); ++k) {
      const std::size_t a = observed[k];
      const std::size_t b = observed[k + 1];
      const std::size_t gap = b - a - 1;
      if (gap == 0) continue;
      if (gap > static_cast<std::size_t>(cfg.max_gap_fill_frames))
        fail(ErrorKind::GapTooLong,
             "marker '" + logical + "' gap of " + std::to_string(gap) +
                 " frames at [" + std::to_string(a + 1) + ", " + std::to_string(b - 1) +
                 "] exceeds the fill limit of " +
                 std::to_string(cfg.max_gap_fill_frames));
      const Vec3 pa = ch.pos[a];
      const Vec3 pb = ch.pos[b];
      for (std::size_t i = a + 1; i < b; ++i) {
        const double t = static_cast<double>(i - a) / static_cast<double>(b - a);
        ch.pos[i] = pa + (pb - pa) * t;
      }
    }
  }
  return out;
}

TrialRecording lowpass_filter(const TrialRecording& rec, const PipelineConfig& cfg) {
  const Biquad f = butter2_lowpass(cfg.filter_cutoff_hz, cfg.fps);
  TrialRecording out = rec;
  std::vector<double> channel(rec.n_frames);
  for (auto& [logical, ch] : out.markers) {
    for (int axis = 0; axis < 3; ++axis) {
      for (std::size_t i = 0; i < rec.n_frames; ++i) {
        const Vec3& p = ch.pos[i];
        const double v = axis == 0 ? p.x : axis == 1 ? p.y : p.z;
        if (!std::isfinite(v))
          fail(ErrorKind::InvalidValue,
               "marker '" + logical + "' still has gaps; fill_gaps must run first");
        channel[i] = v;
      }
      const std::vector<double> smoothed = filtfilt(f, channel);
      for (std::size_t i = 0; i < rec.n_frames; ++i) {
        Vec3& p = ch.pos[i];
        (axis == 0 ? p.x : axis == 1 ? p.y : p.z) = smoothed[i];
      }
    }
  }
  return out;
}

void write_landmarks_csv(const TrialRecording& rec, const std::filesystem::path& path) {
  std::string out;
  out += "frame";
  for (const auto& [logical, _] : rec.markers)
    for (const char* axis : {"_X", "_Y", "_Z"}) out += "," + logical + axis;
  out += '\n';
  for (std::size_t i = 0; i < rec.n_frames; ++i) {
    out += std::to_string(i);
    for (const auto& [_, ch] : rec.markers) {
      if (ch.observed[i]) {
        out += ',' + csv::format_full(ch.pos[i].x);
        out += ',' + csv::format_full(ch.pos[i].y);
        out += ',' + csv::format_full(ch.pos[i].z);
      } else {
        out += ",,,";
      }
    }
    out += '\n';
  }
  csv::write_file(path, out);
}

}  // namespace tug
