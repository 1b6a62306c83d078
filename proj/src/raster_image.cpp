#include "tabstruct/raster_image.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tabstruct {

RasterImage::RasterImage(int width, int height, double fill) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("image dimensions must be positive, got " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

void RasterImage::fill_rect(int x, int y, int w, int h, double value) {
  const int x_begin = std::max(x, 0);
  const int y_begin = std::max(y, 0);
  const int x_end = std::min(x + w, width_);
  const int y_end = std::min(y + h, height_);
  if (x_end <= x_begin || y_end <= y_begin) return;
  for (int yy = y_begin; yy < y_end; ++yy) {
    std::fill(pixels_.begin() + static_cast<std::ptrdiff_t>(index(x_begin, yy)),
              pixels_.begin() + static_cast<std::ptrdiff_t>(index(x_end, yy)),
              value);
  }
}

double RasterImage::darkness() const {
  double sum = 0.0;
  for (double v : pixels_) sum += 1.0 - v;
  return sum;
}

bool RasterImage::is_binary() const {
  return std::all_of(pixels_.begin(), pixels_.end(), [](double v) { return v == 0.0 || v == 1.0; });
}

bool RasterImage::all_white() const {
  return std::all_of(pixels_.begin(), pixels_.end(), [](double v) { return v == 1.0; });
}

}  // namespace tabstruct
