#pragma once

#include <cstdint>
#include <vector>

#include "tabstruct/genotype.hpp"
#include "tabstruct/raster_image.hpp"
#include "tabstruct/render.hpp"
#include "tabstruct/skeleton_source.hpp"
#include "tabstruct/table_config.hpp"

namespace tabstruct {

enum class Axis { x, y };

/// Summed darkness per column (Axis::x) or per row (Axis::y).
struct ProjectionProfile {
  Axis axis = Axis::x;
  std::vector<double> values;
};

struct PeakThresholds {
  /// Peaks below this fraction of the profile maximum are ignored.
  double peak_threshold_frac = 0.15;
  /// Peaks closer than this (profile bins) are merged.
  double min_gap_px = 4.0;
  /// Half-length of the median filter run along each line direction before
  /// projecting; 0 projects the raw image.
  int line_filter_radius = 3;
};

ProjectionProfile project(const RasterImage& img, Axis axis);

/// Median of the 2r+1 pixels along the direction of lines that show up in
/// the `axis` profile (vertical for Axis::x), with white beyond the border.
/// Isolated specks and lines running the other way are removed.
RasterImage line_filter(const RasterImage& img, Axis axis, int radius);

/// Sub-pixel divider positions (in profile bins) from local maxima of the
/// profile.
///
/// Local maxima at or above peak_threshold_frac * max are grouped while
/// consecutive ones are closer than min_gap_px. A group's position is the
/// darkness-weighted centroid of the bins from one before its first peak to
/// one after its last, weighted by the excess over the surrounding floor.
/// Groups whose centroids end up closer than min_gap_px are merged. An
/// all-zero profile yields no positions.
std::vector<double> detect_dividers(const ProjectionProfile& profile, const PeakThresholds& thresholds = {});

/// Genotype from the dividers of a model-resolution skeleton, mapped back to
/// page coordinates. Throws InsufficientStructure when either axis has fewer
/// than two dividers.
TableGenotype initial_genotype(const SkeletonTarget& target, const PeakThresholds& thresholds = {},
                               const PageSpec& page = {}, const RenderStyle& style = {});

/// `size` independent sample_genotype draws with seeds derived from `seed`.
std::vector<TableGenotype> random_initial_population(const TableConfig& config, int size, std::uint64_t seed,
                                                     const PageSpec& page = {});

}  // namespace tabstruct
