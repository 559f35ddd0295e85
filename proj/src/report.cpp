#include "tug/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <string>

#include "json.hpp"
#include "tug/csv.hpp"
#include "tug/version.hpp"

namespace tug {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 28> kResultsColumns = {
    "trial_id",
    "turn_direction",
    "total_time_s",
    "stand_s",
    "first_gait_s",
    "turn_s",
    "second_gait_s",
    "sit_s",
    "cadence_spm",
    "velocity_mps",
    "steps_first",
    "steps_second",
    "step_time_mean_s_first",
    "step_time_sd_s_first",
    "step_len_mean_m_first",
    "step_len_sd_m_first",
    "step_time_mean_s_second",
    "step_time_sd_s_second",
    "step_len_mean_m_second",
    "step_len_sd_m_second",
    "xcom_dev_first_m",
    "xcom_dev_second_m",
    "vc_mean_deg",
    "vc_cav_deg",
    "vc_inphase_frac",
    "vc_antiphase_frac",
    "vc_pelvis_frac",
    "vc_trunk_frac",
};

constexpr std::array<std::string_view, 10> kStepsColumns = {
    "trial_id",        "phase",
    "leading_foot",    "hs_frame",
    "hs_time_s",       "trailing_to_frame",
    "trailing_to_time_s", "step_time_s",
    "step_length_m",   "incomplete_flag",
};

std::string num(double v) {
  return std::isfinite(v) ? csv::format_number(v) : std::string();
}

std::string num(std::optional<double> v) { return v ? num(*v) : std::string(); }

/// Metric numbers pass through the 6-significant-digit formatter before
/// entering the JSON document so JSON and CSV carry identical values.
ordered_json jnum(double v) {
  if (!std::isfinite(v)) return nullptr;
  const auto parsed = csv::parse_double(csv::format_number(v));
  return parsed ? ordered_json(*parsed) : ordered_json(nullptr);
}

ordered_json jnum(std::optional<double> v) { return v ? jnum(*v) : ordered_json(nullptr); }

std::string digest_hex(std::uint64_t d) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(d));
  return buf;
}

/// Values of one bd_results row, in kResultsColumns order.
std::vector<std::string> results_row(const TrialResult& r) {
  const TrialMetrics& m = r.metrics;
  auto stat4 = [&](const std::optional<StepStats>& t,
                   const std::optional<StepStats>& l,
                   std::vector<std::string>& row) {
    row.push_back(t ? num(t->mean) : "");
    row.push_back(t ? num(t->sd) : "");
    row.push_back(l ? num(l->mean) : "");
    row.push_back(l ? num(l->sd) : "");
  };
  std::vector<std::string> row;
  row.push_back(r.trial_id);
  row.push_back(m.turn_direction ? turn_direction_name(*m.turn_direction) : "");
  row.push_back(num(m.total_time_s));
  for (double d : m.phase_s) row.push_back(num(d));
  row.push_back(num(m.cadence_spm));
  row.push_back(num(m.velocity_mps));
  row.push_back(std::to_string(m.steps_first));
  row.push_back(std::to_string(m.steps_second));
  stat4(m.step_time_first_s, m.step_len_first_m, row);
  stat4(m.step_time_second_s, m.step_len_second_m, row);
  row.push_back(num(m.xcom_dev_first_m));
  row.push_back(num(m.xcom_dev_second_m));
  row.push_back(num(m.vc_mean_deg));
  row.push_back(num(m.vc_cav_deg));
  for (std::size_t b = 0; b < 4; ++b)
    row.push_back(m.vc_fracs ? num((*m.vc_fracs)[b]) : "");
  return row;
}

// --- SVG helpers ------------------------------------------------------------

std::string f2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame2D {
  double x0, y0, w, h;          // screen box
  double xmin, xmax, ymin, ymax;  // data range

  double X(double x) const {
    const double span = xmax - xmin;
    return x0 + (span > 0 ? (x - xmin) / span : 0.5) * w;
  }
  double Y(double y) const {
    const double span = ymax - ymin;
    return y0 + h - (span > 0 ? (y - ymin) / span : 0.5) * h;
  }
};

std::string polyline(const Frame2D& fr, const std::vector<double>& xs,
                     const std::vector<double>& ys, const std::string& stroke) {
  std::string pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
    if (!pts.empty()) pts += ' ';
    pts += f2(fr.X(xs[i])) + ',' + f2(fr.Y(ys[i]));
  }
  return "<polyline fill=\"none\" stroke=\"" + stroke +
         "\" stroke-width=\"1.2\" points=\"" + pts + "\"/>\n";
}

std::string html_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr std::array<const char*, 5> kPhaseColors = {
    "#dce9f7", "#d9f2d9", "#fdeecd", "#e4dcf7", "#f7dcdc"};

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::span<const std::string_view> results_csv_columns() { return kResultsColumns; }
std::span<const std::string_view> steps_csv_columns() { return kStepsColumns; }

std::vector<std::filesystem::path> ReportBundle::all() const {
  return {json,           results_csv,       steps_csv, kinematics_csv,
          vector_coding_csv, participants_csv, html};
}

ReportBundle bundle_paths(const std::filesystem::path& out_dir,
                          std::string_view trial_id) {
  const std::string stem(trial_id);
  ReportBundle b;
  b.json = out_dir / (stem + "_tug_data.json");
  b.results_csv = out_dir / (stem + "_bd_results.csv");
  b.steps_csv = out_dir / (stem + "_bd_steps.csv");
  b.kinematics_csv = out_dir / (stem + "_bd_kinematics.csv");
  b.vector_coding_csv = out_dir / (stem + "_bd_vector_coding.csv");
  b.participants_csv = out_dir / (stem + "_bd_participants.csv");
  b.html = out_dir / (stem + "_tug_report.html");
  return b;
}

void write_results_csv(const TrialResult& r, const std::filesystem::path& path) {
  std::vector<std::string> header(kResultsColumns.begin(), kResultsColumns.end());
  std::string out = csv::join_row(header);
  out += csv::join_row(results_row(r));
  csv::write_file(path, out);
}

void write_steps_csv(const TrialResult& r, const std::filesystem::path& path) {
  std::vector<std::string> header(kStepsColumns.begin(), kStepsColumns.end());
  std::string out = csv::join_row(header);
  for (const Step& st : r.steps) {
    std::vector<std::string> row;
    row.push_back(r.trial_id);
    row.push_back(phase_name(st.phase));
    row.push_back(foot_name(st.leading_foot));
    row.push_back(std::to_string(st.hs_frame));
    row.push_back(num(st.hs_time_s));
    row.push_back(st.trailing_to_frame ? std::to_string(*st.trailing_to_frame) : "");
    row.push_back(num(st.trailing_to_time_s));
    row.push_back(num(st.step_time_s));
    row.push_back(num(st.step_length_m));
    row.push_back(st.incomplete ? "true" : "false");
    out += csv::join_row(row);
  }
  csv::write_file(path, out);
}

void write_kinematics_csv(const TrialResult& r, const std::filesystem::path& path) {
  std::vector<std::string> header = {"time_s",        "phase",   "pelvis_x",
                                     "pelvis_y",      "pelvis_z", "com_speed_mps",
                                     "trunk_incl_deg", "xcom_x",  "xcom_y"};
  const bool left = r.kin.joints_left.has_value();
  const bool right = r.kin.joints_right.has_value();
  if (left)
    header.insert(header.end(), {"left_hip_deg", "left_knee_deg", "left_ankle_deg"});
  if (right)
    header.insert(header.end(),
                  {"right_hip_deg", "right_knee_deg", "right_ankle_deg"});
  std::string out = csv::join_row(header);

  for (std::size_t i = 0; i < r.kin.time_s.size(); ++i) {
    std::vector<std::string> row;
    row.push_back(num(r.kin.time_s[i]));
    row.push_back(r.kin.phase[i] ? phase_name(*r.kin.phase[i]) : "");
    row.push_back(num(r.kin.pelvis[i].x));
    row.push_back(num(r.kin.pelvis[i].y));
    row.push_back(num(r.kin.pelvis[i].z));
    row.push_back(num(r.kin.com_speed_mps[i]));
    row.push_back(num(r.kin.trunk_inclination_deg[i]));
    row.push_back(num(r.kin.xcom[i].x));
    row.push_back(num(r.kin.xcom[i].y));
    if (left) {
      row.push_back(num(r.kin.joints_left->hip_deg[i]));
      row.push_back(num(r.kin.joints_left->knee_deg[i]));
      row.push_back(num(r.kin.joints_left->ankle_deg[i]));
    }
    if (right) {
      row.push_back(num(r.kin.joints_right->hip_deg[i]));
      row.push_back(num(r.kin.joints_right->knee_deg[i]));
      row.push_back(num(r.kin.joints_right->ankle_deg[i]));
    }
    out += csv::join_row(row);
  }
  csv::write_file(path, out);
}

void write_vector_coding_csv(const TrialResult& r, const std::filesystem::path& path) {
  std::string out = csv::join_row({"time_s", "theta_pelvis_deg", "theta_trunk_deg",
                                   "gamma_deg", "bin", "stationary_flag"});
  const CouplingSeries& cs = r.coupling;
  for (std::size_t i = 0; i < cs.gamma_deg.size(); ++i) {
    // the pair (i, i+1) is stamped with the second frame's time and angles
    const std::size_t frame = cs.start_frame + i + 1;
    std::vector<std::string> row;
    row.push_back(num(static_cast<double>(frame) / cs.fps));
    row.push_back(num(r.axial.pelvis_deg[i + 1]));
    row.push_back(num(r.axial.trunk_deg[i + 1]));
    row.push_back(num(cs.gamma_deg[i]));
    row.push_back(cs.bin[i] ? coupling_bin_name(*cs.bin[i]) : "");
    row.push_back(cs.stationary[i] ? "true" : "false");
    out += csv::join_row(row);
  }
  auto comment = [&](const std::string& key, const std::string& value) {
    out += csv::join_row({"# " + key, value, "", "", "", ""});
  };
  out += csv::join_row({"# summary", "", "", "", "", ""});
  comment("valid_pairs", std::to_string(cs.valid_pairs));
  comment("gamma_mean_deg", num(cs.mean_deg));
  comment("cav_deg", num(cs.cav_deg));
  const char* frac_keys[4] = {"inphase_frac", "antiphase_frac", "pelvisphase_frac",
                              "trunkphase_frac"};
  for (std::size_t b = 0; b < 4; ++b)
    comment(frac_keys[b], cs.valid_pairs > 0 ? num(cs.occupancy[b]) : "");
  csv::write_file(path, out);
}

void write_participants_csv(const TrialResult& r, const std::filesystem::path& path) {
  std::string out = csv::join_row(
      {"trial_id", "participant_id", "height_m", "leg_length_m", "fps"});
  out += csv::join_row({r.trial_id, r.cfg.participant.id,
                        num(r.cfg.participant.height_m),
                        num(r.cfg.participant.leg_length_m), num(r.cfg.fps)});
  csv::write_file(path, out);
}

void write_json(const TrialResult& r, const std::filesystem::path& path) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["software_version"] = kVersion;
  j["trial_id"] = r.trial_id;
  j["input_digest_fnv1a64"] = digest_hex(r.input_digest);

  ordered_json cfg;
  cfg["fps"] = r.cfg.fps;
  cfg["units"] = r.cfg.units;
  ordered_json th;
  th["chair_zone_y_max"] = r.cfg.chair_zone_y_max;
  th["turn_zone_y"] = r.cfg.turn_zone_y;
  th["turn_tolerance_y"] = r.cfg.turn_tolerance_y;
  th["walk_speed_min"] = r.cfg.walk_speed_min;
  th["standing_height_fraction"] = r.cfg.standing_height_fraction;
  th["hs_refractory_ms"] = r.cfg.hs_refractory_ms;
  th["hs_prominence_m"] = r.cfg.hs_prominence_m;
  th["filter_cutoff_hz"] = r.cfg.filter_cutoff_hz;
  th["max_gap_fill_frames"] = r.cfg.max_gap_fill_frames;
  th["trim_idle"] = r.cfg.trim_idle;
  cfg["thresholds"] = th;
  ordered_json part;
  part["id"] = r.cfg.participant.id;
  part["height_m"] = jnum(r.cfg.participant.height_m);
  part["leg_length_m"] = jnum(r.cfg.participant.leg_length_m);
  cfg["participant"] = part;
  ordered_json marks;
  for (const auto& [logical, stem] : r.cfg.markers.stems) marks[logical] = stem;
  cfg["markers"] = marks;
  j["config"] = cfg;

  ordered_json seg;
  seg["turn_direction"] =
      r.seg.turn_direction ? ordered_json(turn_direction_name(*r.seg.turn_direction))
                           : ordered_json(nullptr);
  ordered_json phases = ordered_json::array();
  for (std::size_t p = 0; p < kAllPhases.size(); ++p) {
    const Interval iv = r.seg.of(kAllPhases[p]);
    ordered_json e;
    e["phase"] = phase_name(kAllPhases[p]);
    e["begin_frame"] = iv.begin;
    e["end_frame"] = iv.end;
    e["duration_s"] = jnum(r.metrics.phase_s[p]);
    phases.push_back(e);
  }
  seg["phases"] = phases;
  seg["span_begin_frame"] = r.seg.span().begin;
  seg["span_end_frame"] = r.seg.span().end;
  seg["total_time_s"] = jnum(r.metrics.total_time_s);
  j["segmentation"] = seg;

  ordered_json events = ordered_json::array();
  for (const auto* list : {&r.heel_strikes, &r.toe_offs})
    for (const GaitEvent& e : *list) {
      ordered_json o;
      o["kind"] = event_kind_name(e.kind);
      o["foot"] = foot_name(e.foot);
      o["frame"] = e.frame;
      o["time_s"] = jnum(e.time_s);
      o["phase"] = phase_name(e.phase);
      o["projection_value_m"] = jnum(e.projection_value_m);
      events.push_back(o);
    }
  j["events"] = events;

  const std::vector<std::string> row = results_row(r);
  ordered_json metrics;
  for (std::size_t c = 1; c < kResultsColumns.size(); ++c) {
    const std::string key(kResultsColumns[c]);
    const std::string& val = row[c];
    if (val.empty())
      metrics[key] = nullptr;
    else if (key == "turn_direction")
      metrics[key] = val;
    else if (key == "steps_first" || key == "steps_second")
      metrics[key] = std::stoull(val);
    else
      metrics[key] = *csv::parse_double(val);
  }
  j["metrics"] = metrics;

  ordered_json vc;
  vc["start_frame"] = r.coupling.start_frame;
  vc["valid_pairs"] = r.coupling.valid_pairs;
  vc["mean_deg"] = jnum(r.coupling.mean_deg);
  vc["cav_deg"] = jnum(r.coupling.cav_deg);
  ordered_json occ;
  const char* occ_keys[4] = {"in_phase", "anti_phase", "pelvis_phase", "trunk_phase"};
  for (std::size_t b = 0; b < 4; ++b)
    occ[occ_keys[b]] =
        r.coupling.valid_pairs > 0 ? jnum(r.coupling.occupancy[b]) : nullptr;
  vc["occupancy"] = occ;
  j["vector_coding"] = vc;

  ordered_json xc;
  xc["pendulum_length_m"] = jnum(r.xcom.pendulum_length_m);
  xc["omega0_rad_s"] = jnum(r.xcom.omega0);
  j["xcom"] = xc;

  ordered_json defs;
  defs["cadence_spm"] =
      "60 x (steps_first + steps_second) / (first_gait_s + second_gait_s); "
      "the denominator is combined gait-phase time, not total trial time";
  defs["velocity_mps"] =
      "pelvis horizontal path length over the full span / total_time_s";
  defs["xcom_deviation_m"] =
      "mean absolute perpendicular distance of XCoM from the principal-axis line"
      " fit to the pelvis path within the gait phase";
  defs["step_stats"] =
      "mean and sample SD over complete steps only; counts include incomplete steps";
  j["definitions"] = defs;

  j["warnings"] = r.warnings;

  csv::write_file(path, j.dump(2) + "\n");
}

void render_html(const TrialResult& r, const std::filesystem::path& path,
                 const ReportOptions& opts) {
  const std::size_t n = r.kin.time_s.size();
  const double duration = n > 0 ? static_cast<double>(n - 1) / r.cfg.fps : 1.0;

  std::string h;
  h += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  h += "<title>TUG report: " + html_escape(r.trial_id) + "</title>\n";
  h += "<style>\n"
       "body{font-family:sans-serif;margin:2em;max-width:1000px}\n"
       "table{border-collapse:collapse;margin:1em 0}\n"
       "td,th{border:1px solid #999;padding:0.25em 0.6em;text-align:left}\n"
       "svg{background:#fff;border:1px solid #ccc;margin:0.5em 0}\n"
       "h2{margin-top:1.4em}\n"
       ".muted{color:#666}\n"
       "</style>\n</head>\n<body>\n";
  h += "<h1>TUG trial report: " + html_escape(r.trial_id) + "</h1>\n";

  h += "<table>\n";
  auto meta = [&](const std::string& k, const std::string& v) {
    h += "<tr><th>" + html_escape(k) + "</th><td>" + html_escape(v) + "</td></tr>\n";
  };
  meta("participant", r.cfg.participant.id.empty() ? "-" : r.cfg.participant.id);
  meta("fps", num(r.cfg.fps));
  meta("frames", std::to_string(n));
  meta("software version", kVersion);
  meta("input digest", digest_hex(r.input_digest));
  if (!opts.no_timestamp) meta("generated", utc_timestamp());
  h += "</table>\n";

  // metrics table mirroring bd_results
  h += "<h2>Metrics</h2>\n<table>\n<tr><th>metric</th><th>value</th></tr>\n";
  const std::vector<std::string> row = results_row(r);
  for (std::size_t c = 0; c < kResultsColumns.size(); ++c) {
    h += "<tr><td>" + std::string(kResultsColumns[c]) + "</td><td>" +
         (row[c].empty() ? std::string("&#8212;") : html_escape(row[c])) +
         "</td></tr>\n";
  }
  h += "</table>\n";
  h += "<p class=\"muted\">cadence_spm = 60 x steps / combined gait time; "
       "velocity_mps = pelvis path length / total time; xcom_dev = mean distance "
       "of XCoM from the phase's pelvis progression line.</p>\n";

  // --- pelvis Y with phase bands -------------------------------------------
  h += "<h2>Pelvis anteroposterior position</h2>\n";
  {
    Frame2D fr{50, 10, 820, 240, 0.0, duration, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      fr.ymin = std::min(fr.ymin, r.kin.pelvis[i].y);
      fr.ymax = std::max(fr.ymax, r.kin.pelvis[i].y);
    }
    fr.ymax = std::max(fr.ymax, r.cfg.turn_zone_y + 0.1);
    h += "<svg width=\"900\" height=\"290\" viewBox=\"0 0 900 290\" "
         "role=\"img\" aria-label=\"pelvis Y vs time\">\n";
    for (std::size_t p = 0; p < kAllPhases.size(); ++p) {
      const Interval iv = r.seg.of(kAllPhases[p]);
      if (iv.size() == 0) continue;
      const double xa = fr.X(static_cast<double>(iv.begin) / r.cfg.fps);
      const double xb = fr.X(static_cast<double>(iv.end) / r.cfg.fps);
      h += "<rect class=\"phase-band\" data-phase=\"" +
           std::string(phase_name(kAllPhases[p])) + "\" data-begin-frame=\"" +
           std::to_string(iv.begin) + "\" data-end-frame=\"" +
           std::to_string(iv.end) + "\" x=\"" + f2(xa) + "\" y=\"" + f2(fr.y0) +
           "\" width=\"" + f2(xb - xa) + "\" height=\"" + f2(fr.h) +
           "\" fill=\"" + kPhaseColors[p] + "\"/>\n";
    }
    for (double line : {r.cfg.chair_zone_y_max,
                        r.cfg.turn_zone_y - r.cfg.turn_tolerance_y}) {
      h += "<line x1=\"" + f2(fr.x0) + "\" x2=\"" + f2(fr.x0 + fr.w) + "\" y1=\"" +
           f2(fr.Y(line)) + "\" y2=\"" + f2(fr.Y(line)) +
           "\" stroke=\"#aa3333\" stroke-dasharray=\"5,4\"/>\n";
    }
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = r.kin.pelvis[i].y;
    h += polyline(fr, r.kin.time_s, ys, "#102a54");
    h += "<text x=\"55\" y=\"270\" font-size=\"12\">time 0 .. " +
         csv::format_number(duration) + " s; dashed: chair and turn thresholds; "
         "bands: Stand/FirstGait/Turn/SecondGait/Sit</text>\n";
    h += "</svg>\n";
  }

  // --- projections with events ----------------------------------------------
  h += "<h2>Heel and toe projections</h2>\n";
  {
    Frame2D fr{50, 10, 820, 240, 0.0, duration, 0.0, 0.0};
    for (const auto* s : {&r.heel_proj_left, &r.heel_proj_right, &r.toe_proj_left,
                          &r.toe_proj_right})
      for (double v : *s) {
        if (!std::isfinite(v)) continue;
        fr.ymin = std::min(fr.ymin, v);
        fr.ymax = std::max(fr.ymax, v);
      }
    h += "<svg width=\"900\" height=\"290\" viewBox=\"0 0 900 290\" "
         "role=\"img\" aria-label=\"projections vs time\">\n";
    h += polyline(fr, r.kin.time_s, r.heel_proj_left, "#1f77b4");
    h += polyline(fr, r.kin.time_s, r.heel_proj_right, "#d62728");
    h += polyline(fr, r.kin.time_s, r.toe_proj_left, "#76aed1");
    h += polyline(fr, r.kin.time_s, r.toe_proj_right, "#e08a8b");
    for (const GaitEvent& e : r.heel_strikes)
      h += "<circle class=\"event\" data-kind=\"HS\" data-frame=\"" +
           std::to_string(e.frame) + "\" cx=\"" + f2(fr.X(e.time_s)) + "\" cy=\"" +
           f2(fr.Y(e.projection_value_m)) + "\" r=\"3.5\" fill=\"" +
           (e.foot == Foot::Left ? "#1f77b4" : "#d62728") + "\"/>\n";
    for (const GaitEvent& e : r.toe_offs)
      h += "<circle class=\"event\" data-kind=\"TO\" data-frame=\"" +
           std::to_string(e.frame) + "\" cx=\"" + f2(fr.X(e.time_s)) + "\" cy=\"" +
           f2(fr.Y(e.projection_value_m)) + "\" r=\"3.5\" fill=\"none\" stroke=\"" +
           (e.foot == Foot::Left ? "#1f77b4" : "#d62728") + "\"/>\n";
    h += "<text x=\"55\" y=\"270\" font-size=\"12\">blue: left, red: right; "
         "dark: heel, light: toe; filled: HS, hollow: TO</text>\n";
    h += "</svg>\n";
  }

  // --- coupling-angle polar histogram ----------------------------------------
  h += "<h2>Trunk-pelvis coordination (turn)</h2>\n";
  {
    const double cx = 180, cy = 160, radius = 130;
    h += "<svg width=\"640\" height=\"320\" viewBox=\"0 0 640 320\" "
         "role=\"img\" aria-label=\"coupling bins\">\n";
    h += "<circle cx=\"" + f2(cx) + "\" cy=\"" + f2(cy) + "\" r=\"" + f2(radius) +
         "\" fill=\"none\" stroke=\"#bbb\"/>\n";
    h += "<circle cx=\"" + f2(cx) + "\" cy=\"" + f2(cy) + "\" r=\"" +
         f2(radius / 2) + "\" fill=\"none\" stroke=\"#ddd\" "
         "stroke-dasharray=\"3,3\"/>\n";
    const std::array<CouplingBin, 8> sector_bins = {
        CouplingBin::PelvisPhase, CouplingBin::InPhase,   CouplingBin::TrunkPhase,
        CouplingBin::AntiPhase,   CouplingBin::PelvisPhase, CouplingBin::InPhase,
        CouplingBin::TrunkPhase,  CouplingBin::AntiPhase};
    const char* bin_colors[4] = {"#2a9d8f", "#e76f51", "#457b9d", "#9b5de5"};
    if (r.coupling.valid_pairs > 0) {
      for (int k = 0; k < 8; ++k) {
        const auto bin = sector_bins[static_cast<std::size_t>(k)];
        const double occ = r.coupling.occupancy[static_cast<std::size_t>(bin)];
        if (occ <= 0.0) continue;
        const double rr = radius * occ;
        const double a0 = deg2rad(45.0 * k - 22.5);
        const double a1 = deg2rad(45.0 * k + 22.5);
        h += "<path d=\"M " + f2(cx) + ' ' + f2(cy) + " L " +
             f2(cx + rr * std::cos(a0)) + ' ' + f2(cy - rr * std::sin(a0)) +
             " A " + f2(rr) + ' ' + f2(rr) + " 0 0 0 " +
             f2(cx + rr * std::cos(a1)) + ' ' + f2(cy - rr * std::sin(a1)) +
             " Z\" fill=\"" + bin_colors[static_cast<std::size_t>(bin)] +
             "\" fill-opacity=\"0.75\"/>\n";
      }
    }
    const char* legend[4] = {"InPhase", "AntiPhase", "PelvisPhase", "TrunkPhase"};
    for (int b = 0; b < 4; ++b) {
      const double y = 70.0 + 28.0 * b;
      h += "<rect x=\"380\" y=\"" + f2(y - 11) +
           "\" width=\"14\" height=\"14\" fill=\"" +
           bin_colors[static_cast<std::size_t>(b)] + "\"/>\n";
      std::string frac = "&#8212;";
      if (r.coupling.valid_pairs > 0)
        frac = csv::format_number(r.coupling.occupancy[static_cast<std::size_t>(b)]);
      h += "<text x=\"402\" y=\"" + f2(y) + "\" font-size=\"13\">" +
           std::string(legend[b]) + ": " + frac + "</text>\n";
    }
    h += "</svg>\n";
  }

  // --- CoM vs XCoM path --------------------------------------------------------
  h += "<h2>CoM and XCoM horizontal paths</h2>\n";
  {
    Frame2D fr{50, 10, 500, 500, 0.0, 0.0, 0.0, 0.0};
    bool any = false;
    auto grow = [&](Vec2 p) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) return;
      if (!any) {
        fr.xmin = fr.xmax = p.x;
        fr.ymin = fr.ymax = p.y;
        any = true;
        return;
      }
      fr.xmin = std::min(fr.xmin, p.x);
      fr.xmax = std::max(fr.xmax, p.x);
      fr.ymin = std::min(fr.ymin, p.y);
      fr.ymax = std::max(fr.ymax, p.y);
    };
    for (std::size_t i = 0; i < n; ++i) {
      grow(r.kin.pelvis[i].xy());
      grow(r.kin.xcom[i]);
    }
    // equalize scales so the geometry is undistorted
    const double span = std::max(fr.xmax - fr.xmin, fr.ymax - fr.ymin) + 0.2;
    const double mx = (fr.xmin + fr.xmax) / 2, my = (fr.ymin + fr.ymax) / 2;
    fr.xmin = mx - span / 2;
    fr.xmax = mx + span / 2;
    fr.ymin = my - span / 2;
    fr.ymax = my + span / 2;

    std::vector<double> px(n), py(n), xx(n), xy(n);
    for (std::size_t i = 0; i < n; ++i) {
      px[i] = r.kin.pelvis[i].x;
      py[i] = r.kin.pelvis[i].y;
      xx[i] = r.kin.xcom[i].x;
      xy[i] = r.kin.xcom[i].y;
    }
    h += "<svg width=\"600\" height=\"560\" viewBox=\"0 0 600 560\" "
         "role=\"img\" aria-label=\"CoM and XCoM paths\">\n";
    h += polyline(fr, px, py, "#102a54");
    h += polyline(fr, xx, xy, "#d62728");
    h += "<text x=\"55\" y=\"540\" font-size=\"12\">dark: CoM (pelvis), red: "
         "XCoM</text>\n";
    h += "</svg>\n";
  }

  h += "<h2>Warnings</h2>\n";
  if (r.warnings.empty()) {
    h += "<p class=\"muted\">none</p>\n";
  } else {
    h += "<ul>\n";
    for (const std::string& w : r.warnings)
      h += "<li>" + html_escape(w) + "</li>\n";
    h += "</ul>\n";
  }
  h += "</body>\n</html>\n";
  csv::write_file(path, h);
}

ReportBundle write_bundle(const TrialResult& r, const std::filesystem::path& out_dir,
                          const ReportOptions& opts) {
  const ReportBundle b = bundle_paths(out_dir, r.trial_id);
  if (!opts.force)
    for (const auto& p : b.all())
      if (std::filesystem::exists(p))
        fail(ErrorKind::OutputExists,
             "'" + p.string() + "' already exists (use --force to overwrite)");
  write_json(r, b.json);
  write_results_csv(r, b.results_csv);
  write_steps_csv(r, b.steps_csv);
  write_kinematics_csv(r, b.kinematics_csv);
  write_vector_coding_csv(r, b.vector_coding_csv);
  write_participants_csv(r, b.participants_csv);
  render_html(r, b.html, opts);
  return b;
}

}  // namespace tug
