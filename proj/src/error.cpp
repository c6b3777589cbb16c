// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

#include "panowarp/error.hpp"

namespace panowarp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroRadius: return "ZeroRadius";
    case ErrorKind::PointAtCamera: return "PointAtCamera";
    case ErrorKind::DimsMismatch: return "DimsMismatch";
    case ErrorKind::NonPanoramicDims: return "NonPanoramicDims";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Format: return "FormatError";
    case ErrorKind::ZeroDepth: return "ZeroDepth";
    case ErrorKind::DepthOutOfRange: return "DepthOutOfRange";
    case ErrorKind::DegenerateCorner: return "DegenerateCorner";
    case ErrorKind::InvalidLayout: return "InvalidLayout";
    case ErrorKind::CameraOutsideRoom: return "CameraOutsideRoom";
    case ErrorKind::CameraAboveCeiling: return "CameraAboveCeiling";
    case ErrorKind::CameraBelowFloor: return "CameraBelowFloor";
    case ErrorKind::EmptyMask: return "EmptyMask";
    case ErrorKind::ImageTooSmall: return "ImageTooSmall";
    case ErrorKind::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorKind::RoomTooSmall: return "RoomTooSmall";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

}  // namespace panowarp
