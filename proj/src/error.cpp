#include "vowelspace/error.hpp"

namespace vowelspace {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MissingFile: return "MissingFile";
    case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::EmptyAudio: return "EmptyAudio";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::NoVoicedSegment: return "NoVoicedSegment";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::InsufficientFormants: return "InsufficientFormants";
    case ErrorKind::GateViolation: return "GateViolation";
    case ErrorKind::EmptyList: return "EmptyList";
    case ErrorKind::UnknownLanguage: return "UnknownLanguage";
    case ErrorKind::VowelNotInPair: return "VowelNotInPair";
    case ErrorKind::InventoryValidation: return "InventoryValidation";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::MissingAnchor: return "MissingAnchor";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::EmptyPlot: return "EmptyPlot";
    case ErrorKind::UnknownSelector: return "UnknownSelector";
    case ErrorKind::ManifestParseError: return "ManifestParseError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace vowelspace
