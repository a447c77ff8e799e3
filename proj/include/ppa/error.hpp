#pragma once

#include <stdexcept>
#include <string>

namespace ppa {

enum class ErrorKind {
  InvalidData,
  RankDeficient,
  InsufficientSamples,
  DimensionMismatch,
  OutOfRange,
  Parse,
  DegenerateFrame,
  Io,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so the
// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ppa
