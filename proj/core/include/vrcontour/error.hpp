// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vrc {

enum class ErrorCode {
  InvalidArgument,
  ConstantVolume,
  DimensionMismatch,
  IndexOutOfRange,
  CorruptFile,
  VersionMismatch,
  IoError,
  ParallelRays,
  NonUnitQuaternion,
  NeedTwoKeys,
  UnsortedKeys,
  NoStroke,
  NoSessionEnd,
  NonIncreasingTime,
  MalformedEvent,
  NotFound,
  VersionConflict,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `field()` names the offending input
/// (a JSON key, a file, a line number) when one exists; it is what the HTTP
/// service reports back as `{error, field}`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field = {})
      : std::runtime_error(message), code_(code), field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

}  // namespace vrc
