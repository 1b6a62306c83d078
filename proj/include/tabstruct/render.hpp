#pragma once

#include <cstdint>
#include <vector>

#include "tabstruct/genotype.hpp"
#include "tabstruct/raster_image.hpp"
#include "tabstruct/table_config.hpp"

namespace tabstruct {

struct RenderStyle {
  int line_width = 1;
  /// Probability that a given separator is drawn on a scan.
  double separator_visibility_prob = 0.5;
  /// Horizontal space between words on a text line, px.
  int word_gap = 4;
  /// Minimum clearance between text and the cell's separators, px.
  int cell_padding = 3;

  bool operator==(const RenderStyle&) const = default;
};

/// Throws std::invalid_argument if line_width < 1, the probability is outside
/// [0, 1], or a spacing is negative.
void validate(const RenderStyle& style);

/// An axis-aligned line piece in page pixels. A horizontal piece covers
/// rows [position, position + line_width) and columns [begin, end).
struct LineSegment {
  bool horizontal = true;
  int position = 0;
  int begin = 0;
  int end = 0;
};

/// Full-length lines for every divider: each spans the table's bounding box
/// including the far border's thickness. Empty for blank genotypes.
std::vector<LineSegment> grid_lines(const Dividers& d, int line_width);

/// Paints segments black onto a white page-sized image.
RasterImage rasterize_segments(const std::vector<LineSegment>& segments, const PageSpec& page, int line_width);

/// All dividers, no text, white background; binary.
RasterImage render_skeleton(const TableGenotype& g, const PageSpec& page = {}, const RenderStyle& style = {});

/// Synthetic table scan: random lowercase words in every cell using the
/// embedded bitmap font and the config's alignment, and each separator
/// drawn independently with style.separator_visibility_prob.
RasterImage render_scan(const TableGenotype& g, const TableConfig& config, const RenderStyle& style,
                        std::uint64_t seed, const PageSpec& page = {});

/// Mapping between page pixels and the square model grid. The page is padded
/// with white on the right/bottom to a square of side max(width, height) and
/// area-averaged down to `target` pixels.
struct ModelTransform {
  int square = 842;
  int target = 256;

  static ModelTransform for_page(const PageSpec& page) {
    return {page.width > page.height ? page.width : page.height, page.model_resolution};
  }
  /// Page pixels per model pixel.
  double scale() const { return static_cast<double>(square) / target; }
  /// Page coordinate of the first pixel of a line of `line_width` whose
  /// centre falls at model pixel index `model_index` (fractional).
  double to_page(double model_index, int line_width) const {
    return (model_index + 0.5) * scale() - 0.5 * line_width;
  }
};

/// Pads to square with white (right/bottom), then area-averages to
/// target x target. Overlaps are computed in integer sub-pixel units, so
/// binary inputs resize exactly.
RasterImage resize(const RasterImage& img, int target = 256);

/// Equivalent to resize(render_skeleton(g, page, style), page.model_resolution),
/// computed from separable line coverage without the page-sized raster.
/// Results are bit-identical to the two-step path.
RasterImage render_skeleton_resized(const TableGenotype& g, const PageSpec& page = {}, const RenderStyle& style = {});

}  // namespace tabstruct
