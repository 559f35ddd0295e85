#include "tug/error.hpp"

namespace tug {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingKey: return "MissingKey";
    case ErrorKind::InvalidValue: return "InvalidValue";
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::AllGap: return "AllGap";
    case ErrorKind::GapTooLong: return "GapTooLong";
    case ErrorKind::NoStandExit: return "NoStandExit";
    case ErrorKind::NoTurnEntry: return "NoTurnEntry";
    case ErrorKind::NoTurnExit: return "NoTurnExit";
    case ErrorKind::NoChairReturn: return "NoChairReturn";
    case ErrorKind::NeverMoving: return "NeverMoving";
    case ErrorKind::DegenerateAxis: return "DegenerateAxis";
    case ErrorKind::AllStationary: return "AllStationary";
    case ErrorKind::PhaseTooShort: return "PhaseTooShort";
    case ErrorKind::NoLegLength: return "NoLegLength";
    case ErrorKind::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::OutputExists: return "OutputExists";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace tug
