// Copyright Contributors to the panowarp project
// SPDX-License-Identifier: Apache-2.0

// PNG encode/decode on top of libpng. Error reporting from libpng goes through
// setjmp/longjmp, so every object with a destructor is owned by the caller of
// the *_impl functions below.

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <string>

#include "panowarp/error.hpp"
#include "panowarp/imaging.hpp"

namespace panowarp {

namespace {

struct RawPng {
  int width = 0;
  int height = 0;
  int channels = 0;   // 1 or 3
  int bit_depth = 0;  // 8 or 16
  std::vector<std::uint8_t> bytes;  // packed rows, 16-bit samples big-endian
  std::vector<png_bytep> rows;
};

struct ErrorSink {
  std::jmp_buf jump;
  char message[256] = {};
};

void on_png_error(png_structp png, png_const_charp msg) {
  auto* sink = static_cast<ErrorSink*>(png_get_error_ptr(png));
  std::snprintf(sink->message, sizeof(sink->message), "%s", msg);
  std::longjmp(sink->jump, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// Returns false with sink->message filled on failure. A message starting with
// "format:" marks an unsupported but well-formed file.
bool read_impl(std::FILE* file, RawPng& out, ErrorSink* sink) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, sink, on_png_error,
                                           on_png_warning);
  if (png == nullptr) {
    std::snprintf(sink->message, sizeof(sink->message), "cannot allocate png reader");
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    std::snprintf(sink->message, sizeof(sink->message), "cannot allocate png info");
    return false;
  }
  if (setjmp(sink->jump)) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_init_io(png, file);
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int color_type = png_get_color_type(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  if (png_get_interlace_type(png, info) != PNG_INTERLACE_NONE) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::snprintf(sink->message, sizeof(sink->message), "format: interlaced png not supported");
    return false;
  }
  if ((color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB) ||
      (bit_depth != 8 && bit_depth != 16)) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::snprintf(sink->message, sizeof(sink->message),
                  "format: unsupported png layout (color type %d, %d-bit)", color_type,
                  bit_depth);
    return false;
  }
  out.width = static_cast<int>(width);
  out.height = static_cast<int>(height);
  out.channels = color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;
  out.bit_depth = bit_depth;
  const std::size_t stride = png_get_rowbytes(png, info);
  out.bytes.resize(stride * height);
  out.rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) out.rows[y] = out.bytes.data() + y * stride;
  png_read_image(png, out.rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

bool write_impl(std::FILE* file, RawPng& in, ErrorSink* sink) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, sink, on_png_error,
                                            on_png_warning);
  if (png == nullptr) {
    std::snprintf(sink->message, sizeof(sink->message), "cannot allocate png writer");
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    std::snprintf(sink->message, sizeof(sink->message), "cannot allocate png info");
    return false;
  }
  if (setjmp(sink->jump)) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_init_io(png, file);
  png_set_IHDR(png, info, static_cast<png_uint_32>(in.width), static_cast<png_uint_32>(in.height),
               in.bit_depth, in.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, in.rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

RawPng read_png(const std::filesystem::path& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw Error(ErrorKind::Io, "cannot open " + path.string());
  png_byte signature[8] = {};
  if (std::fread(signature, 1, 8, file.get()) != 8 || png_sig_cmp(signature, 0, 8) != 0) {
    throw Error(ErrorKind::Format, path.string() + " is not a PNG file");
  }
  RawPng raw;
  ErrorSink sink;
  if (!read_impl(file.get(), raw, &sink)) {
    const bool format = std::strncmp(sink.message, "format:", 7) == 0;
    throw Error(format ? ErrorKind::Format : ErrorKind::Io,
                path.string() + ": " + (format ? sink.message + 8 : sink.message));
  }
  return raw;
}

void write_png(RawPng& raw, const std::filesystem::path& path) {
  const std::size_t stride =
      static_cast<std::size_t>(raw.width) * raw.channels * (raw.bit_depth / 8);
  raw.rows.resize(raw.height);
  for (int y = 0; y < raw.height; ++y) raw.rows[y] = raw.bytes.data() + y * stride;
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  ErrorSink sink;
  if (!write_impl(file.get(), raw, &sink)) {
    throw Error(ErrorKind::Io, path.string() + ": " + sink.message);
  }
  if (std::fflush(file.get()) != 0) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

RawPng require(RawPng raw, int channels, int bit_depth, const std::filesystem::path& path) {
  if (raw.channels != channels || raw.bit_depth != bit_depth) {
    throw Error(ErrorKind::Format, path.string() + ": expected " + std::to_string(bit_depth) +
                                       "-bit " + (channels == 3 ? "RGB" : "grayscale") +
                                       " png, got " + std::to_string(raw.bit_depth) + "-bit " +
                                       std::to_string(raw.channels) + "-channel");
  }
  return raw;
}

ImageBuffer decode8(const RawPng& raw) {
  std::vector<double> data(raw.bytes.size());
  for (std::size_t i = 0; i < raw.bytes.size(); ++i) data[i] = raw.bytes[i] / 255.0;
  return ImageBuffer({raw.width, raw.height}, raw.channels, std::move(data));
}

RawPng encode8(const ImageBuffer& buffer) {
  RawPng raw;
  raw.width = buffer.width();
  raw.height = buffer.height();
  raw.channels = buffer.channels();
  raw.bit_depth = 8;
  const auto values = buffer.values();
  raw.bytes.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) raw.bytes[i] = quantize_unit(values[i]);
  return raw;
}

}  // namespace

ImageBuffer load_rgb(const std::filesystem::path& path) {
  return decode8(require(read_png(path), 3, 8, path));
}

void save_rgb(const ImageBuffer& buffer, const std::filesystem::path& path) {
  if (buffer.channels() != 3) {
    throw Error(ErrorKind::Format, "save_rgb needs 3 channels, got " +
                                       std::to_string(buffer.channels()));
  }
  RawPng raw = encode8(buffer);
  write_png(raw, path);
}

ImageBuffer load_gray(const std::filesystem::path& path) {
  return decode8(require(read_png(path), 1, 8, path));
}

void save_gray(const ImageBuffer& buffer, const std::filesystem::path& path) {
  if (buffer.channels() != 1) {
    throw Error(ErrorKind::Format, "save_gray needs 1 channel, got " +
                                       std::to_string(buffer.channels()));
  }
  RawPng raw = encode8(buffer);
  write_png(raw, path);
}

std::vector<std::uint16_t> load_gray16(const std::filesystem::path& path, PanoDims& dims) {
  const RawPng raw = require(read_png(path), 1, 16, path);
  dims = {raw.width, raw.height};
  std::vector<std::uint16_t> samples(static_cast<std::size_t>(raw.width) * raw.height);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = static_cast<std::uint16_t>((raw.bytes[2 * i] << 8) | raw.bytes[2 * i + 1]);
  }
  return samples;
}

void save_gray16(std::span<const std::uint16_t> samples, const PanoDims& dims,
                 const std::filesystem::path& path) {
  validate_dims(dims);
  if (samples.size() != static_cast<std::size_t>(dims.pixel_count())) {
    throw Error(ErrorKind::DimsMismatch, "sample count does not match dimensions");
  }
  RawPng raw;
  raw.width = dims.width;
  raw.height = dims.height;
  raw.channels = 1;
  raw.bit_depth = 16;
  raw.bytes.resize(samples.size() * 2);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    raw.bytes[2 * i] = static_cast<std::uint8_t>(samples[i] >> 8);
    raw.bytes[2 * i + 1] = static_cast<std::uint8_t>(samples[i] & 0xff);
  }
  write_png(raw, path);
}

DepthBuffer load_depth(const std::filesystem::path& path) {
  PanoDims dims;
  const auto samples = load_gray16(path, dims);
  std::vector<double> meters(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i] == 0) {
      throw Error(ErrorKind::ZeroDepth, path.string() + ": zero depth at pixel (" +
                                            std::to_string(i % dims.width) + ", " +
                                            std::to_string(i / dims.width) + ")");
    }
    meters[i] = samples[i] / 1000.0;
  }
  return DepthBuffer(dims, std::move(meters));
}

void save_depth(const DepthBuffer& depth, const std::filesystem::path& path) {
  const auto values = depth.values();
  std::vector<std::uint16_t> samples(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double mm = std::round(values[i] * 1000.0);
    if (!(values[i] > 0.0) || !(mm <= 65535.0) || mm < 1.0) {
      throw Error(ErrorKind::DepthOutOfRange,
                  "depth " + std::to_string(values[i]) + " m cannot be stored in millimeters");
    }
    samples[i] = static_cast<std::uint16_t>(mm);
  }
  save_gray16(samples, depth.dims(), path);
}

Mask load_mask(const std::filesystem::path& path) {
  const RawPng raw = require(read_png(path), 1, 8, path);
  Mask mask({raw.width, raw.height}, false);
  for (int v = 0; v < raw.height; ++v) {
    for (int u = 0; u < raw.width; ++u) {
      mask.set(u, v, raw.bytes[static_cast<std::size_t>(v) * raw.width + u] != 0);
    }
  }
  return mask;
}

void save_mask(const Mask& mask, const std::filesystem::path& path) {
  RawPng raw;
  raw.width = mask.width();
  raw.height = mask.height();
  raw.channels = 1;
  raw.bit_depth = 8;
  raw.bytes.resize(static_cast<std::size_t>(mask.dims().pixel_count()));
  for (int v = 0; v < raw.height; ++v) {
    for (int u = 0; u < raw.width; ++u) {
      raw.bytes[static_cast<std::size_t>(v) * raw.width + u] = mask.at(u, v) ? 255 : 0;
    }
  }
  write_png(raw, path);
}

}  // namespace panowarp
