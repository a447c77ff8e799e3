#include "ppa/error.hpp"

namespace ppa {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidData: return "invalid-data";
    case ErrorKind::RankDeficient: return "rank-deficient";
    case ErrorKind::InsufficientSamples: return "insufficient-samples";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::DegenerateFrame: return "undefined-frame";
    case ErrorKind::Io: return "io-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace ppa
