#include "tabstruct/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <vector>

#include "tabstruct/errors.hpp"

namespace tabstruct {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_error_handler(png_structp, png_const_charp msg) { throw FormatError(msg); }
void png_warning_handler(png_structp, png_const_charp) {}

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

void write_rows(const std::filesystem::path& path, int width, int height, int color_type,
                const std::vector<std::vector<std::uint8_t>>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    FilePtr fp(std::fopen(tmp.c_str(), "wb"));
    if (!fp) throw FormatError("cannot write " + tmp.string());
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_handler, png_warning_handler);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
      png_destroy_write_struct(&png, &info);
      throw FormatError("libpng initialisation failed");
    }
    try {
      png_init_io(png, fp.get());
      png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8, color_type,
                   PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
      png_write_info(png, info);
      for (const auto& row : rows) png_write_row(png, row.data());
      png_write_end(png, nullptr);
    } catch (...) {
      png_destroy_write_struct(&png, &info);
      throw;
    }
    png_destroy_write_struct(&png, &info);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void write_png_gray(const std::filesystem::path& path, const RasterImage& img) {
  std::vector<std::vector<std::uint8_t>> rows(static_cast<std::size_t>(img.height()));
  for (int y = 0; y < img.height(); ++y) {
    auto& row = rows[static_cast<std::size_t>(y)];
    row.resize(static_cast<std::size_t>(img.width()));
    for (int x = 0; x < img.width(); ++x) row[static_cast<std::size_t>(x)] = to_byte(img.at(x, y));
  }
  write_rows(path, img.width(), img.height(), PNG_COLOR_TYPE_GRAY, rows);
}

void write_png_overlay(const std::filesystem::path& path, const RasterImage& background, const RasterImage& overlay) {
  if (background.width() != overlay.width() || background.height() != overlay.height()) {
    throw std::invalid_argument("overlay and background sizes differ");
  }
  std::vector<std::vector<std::uint8_t>> rows(static_cast<std::size_t>(background.height()));
  for (int y = 0; y < background.height(); ++y) {
    auto& row = rows[static_cast<std::size_t>(y)];
    row.resize(static_cast<std::size_t>(background.width()) * 3);
    for (int x = 0; x < background.width(); ++x) {
      const double ink = 1.0 - overlay.at(x, y);
      const double base = background.at(x, y);
      const auto px = static_cast<std::size_t>(x) * 3;
      row[px + 0] = to_byte(base * (1.0 - ink));
      row[px + 1] = to_byte(base * (1.0 - ink));
      row[px + 2] = to_byte(base * (1.0 - ink) + ink);
    }
  }
  write_rows(path, background.width(), background.height(), PNG_COLOR_TYPE_RGB, rows);
}

RasterImage read_png_gray(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw FormatError("cannot open " + path.string());
  png_byte header[8] = {};
  if (std::fread(header, 1, sizeof header, fp.get()) != sizeof header || png_sig_cmp(header, 0, sizeof header) != 0) {
    throw FormatError(path.string() + ": not a PNG file");
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_handler, png_warning_handler);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError("libpng initialisation failed");
  }
  try {
    png_init_io(png, fp.get());
    png_set_sig_bytes(png, sizeof header);
    png_read_info(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    if (color_type != PNG_COLOR_TYPE_GRAY || bit_depth != 8) {
      throw FormatError(path.string() + ": expected 8-bit grayscale PNG (colour type " + std::to_string(color_type) +
                        ", bit depth " + std::to_string(bit_depth) + ")");
    }
    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));
    png_set_interlace_handling(png);
    png_read_update_info(png, info);
    std::vector<std::uint8_t> buffer(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    std::vector<png_bytep> row_ptrs(static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y) {
      row_ptrs[static_cast<std::size_t>(y)] = buffer.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(width);
    }
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    RasterImage img(width, height, 1.0);
    auto px = img.pixels();
    for (std::size_t i = 0; i < buffer.size(); ++i) px[i] = buffer[i] / 255.0;
    return img;
  } catch (const std::exception& e) {
    png_destroy_read_struct(&png, &info, nullptr);
    if (dynamic_cast<const FormatError*>(&e)) throw;
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace tabstruct
