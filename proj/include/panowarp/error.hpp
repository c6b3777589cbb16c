// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace panowarp {

enum class ErrorKind {
  InvalidArgument,
  ZeroRadius,
  PointAtCamera,
  DimsMismatch,
  NonPanoramicDims,
  Io,
  Format,
  ZeroDepth,
  DepthOutOfRange,
  DegenerateCorner,
  InvalidLayout,
  CameraOutsideRoom,
  CameraAboveCeiling,
  CameraBelowFloor,
  EmptyMask,
  ImageTooSmall,
  ValueOutOfRange,
  RoomTooSmall,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

  /// True for I/O failures; everything else is a validation failure.
  bool is_io() const noexcept { return kind_ == ErrorKind::Io; }

 private:
  ErrorKind kind_;
};

}  // namespace panowarp
