#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tabstruct {

/// Row-major grayscale image, intensities in [0, 1] with 0 black and 1 white.
class RasterImage {
 public:
  RasterImage() = default;
  /// Throws std::invalid_argument for non-positive dimensions.
  RasterImage(int width, int height, double fill = 1.0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  double at(int x, int y) const { return pixels_[index(x, y)]; }
  double& at(int x, int y) { return pixels_[index(x, y)]; }

  std::span<const double> pixels() const { return pixels_; }
  std::span<double> pixels() { return pixels_; }

  /// Sets [x, x+w) x [y, y+h) to `value`, clipped to the image.
  void fill_rect(int x, int y, int w, int h, double value);

  /// Sum of (1 - intensity).
  double darkness() const;
  bool is_binary() const;
  bool all_white() const;

  bool operator==(const RasterImage&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> pixels_;
};

}  // namespace tabstruct
