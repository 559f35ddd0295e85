#pragma once

#include <filesystem>

#include "tug/types.hpp"

namespace tug {

/// Parses the trial TOML, applies defaults for absent keys and validates
/// the result. Throws MissingKey / InvalidValue / IoError.
PipelineConfig load_config(const std::filesystem::path& path);

/// Reads a landmark CSV into a recording keyed by logical marker names.
/// Column stems are matched exactly; the _X/_Y/_Z suffix case-insensitively.
/// Empty or non-numeric cells become gaps in the quality mask. Throws
/// MissingColumn / TooShort / AllGap / IoError.
TrialRecording load_landmarks_csv(const std::filesystem::path& path,
                                  const PipelineConfig& cfg);

/// Linear interpolation of interior gaps up to cfg.max_gap_fill_frames;
/// leading and trailing gaps take the nearest observed value. The quality
/// mask still marks filled frames as unobserved. Throws GapTooLong.
TrialRecording fill_gaps(const TrialRecording& rec, const PipelineConfig& cfg);

/// Zero-phase (forward-backward) 2nd-order-per-pass Butterworth low-pass of
/// every coordinate channel at cfg.filter_cutoff_hz. Requires gap-filled
/// input.
TrialRecording lowpass_filter(const TrialRecording& rec, const PipelineConfig& cfg);

/// Writes a recording back out in the same CSV dialect the loader reads
/// (frame column plus <name>_X/_Y/_Z, full double precision, gaps as empty
/// cells). Coordinates survive a round trip bit-exactly.
void write_landmarks_csv(const TrialRecording& rec, const std::filesystem::path& path);

}  // namespace tug
