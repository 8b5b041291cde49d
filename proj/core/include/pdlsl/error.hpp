#pragma once

#include <stdexcept>
#include <string>

namespace pdlsl {

enum class ErrorCode {
  ZeroVector,
  CoincidentPoints,
  InvalidPlaceMap,
  EmptySequence,
  NoKeyPosture,
  NonMonotoneTimestamps,
  UnknownState,
  UngroundedFormula,
  IncompleteValuation,
  MalformedModel,
  Schema,
  Io,
};

const char* error_code_name(ErrorCode code);

/// Base class for every error raised by the library. Parse errors derive from
/// it as well (see parse.hpp) and carry a source span in addition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pdlsl
