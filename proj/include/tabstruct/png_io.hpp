#pragma once

#include <filesystem>

#include "tabstruct/raster_image.hpp"

namespace tabstruct {

/// Writes an 8-bit grayscale PNG; intensities are scaled by 255 and rounded.
void write_png_gray(const std::filesystem::path& path, const RasterImage& img);

/// Reads an 8-bit grayscale PNG into [0, 1] intensities. Throws FormatError
/// for missing or corrupt files and for any other colour type or bit depth.
RasterImage read_png_gray(const std::filesystem::path& path);

/// Overlay of a background image (drawn in gray levels) and candidate
/// separators (drawn blue where the candidate is dark), written as 8-bit RGB.
void write_png_overlay(const std::filesystem::path& path, const RasterImage& background, const RasterImage& overlay);

}  // namespace tabstruct
