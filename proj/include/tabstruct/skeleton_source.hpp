#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "tabstruct/genotype.hpp"
#include "tabstruct/raster_image.hpp"
#include "tabstruct/render.hpp"
#include "tabstruct/rng.hpp"

namespace tabstruct {

enum class Provenance { oracle, degraded, external };

std::string to_string(Provenance p);

/// The skeleton image a genotype is fitted against, at model resolution.
struct SkeletonTarget {
  RasterImage image;
  Provenance provenance = Provenance::oracle;
};

/// Controlled corruption standing in for translator output imperfection.
///
/// All stages act on the page-resolution image before it is resized: jitter
/// and blur radius are in page pixels, speckle is a per-page-pixel inversion
/// probability.
struct DegradationParams {
  int divider_jitter_px = 3;
  double segment_dropout_prob = 0.1;
  int blur_radius = 1;
  double speckle_prob = 0.001;

  static DegradationParams none() { return {0, 0.0, 0, 0.0}; }
};

void validate(const DegradationParams& p);

/// resize(render_skeleton(g)).
SkeletonTarget oracle_skeleton(const TableGenotype& g, const PageSpec& page = {}, const RenderStyle& style = {});

/// Page-resolution degraded skeleton before resizing: each divider shifted
/// by a uniform integer in [-jitter, +jitter], each cell-boundary segment
/// erased with segment_dropout_prob, then box blur and speckle.
RasterImage degraded_page(const TableGenotype& g, const DegradationParams& params, Rng& rng,
                          const PageSpec& page = {}, const RenderStyle& style = {});

SkeletonTarget degraded_skeleton(const TableGenotype& g, const DegradationParams& params, std::uint64_t seed,
                                 const PageSpec& page = {}, const RenderStyle& style = {});

/// Mean of the (2r+1)^2 neighbourhood, restricted to in-bounds pixels.
RasterImage box_blur(const RasterImage& img, int radius);

/// Loads an 8-bit grayscale PNG produced elsewhere and resizes it to
/// model resolution if needed.
SkeletonTarget load_external_skeleton(const std::filesystem::path& path, int model_resolution = 256);

struct ExternalSkeleton {
  std::string id;
  SkeletonTarget target;
};

/// One target per *.png in `dir`, sorted by file name. The id is the file
/// name with ".png" and an optional ".skel" suffix removed.
std::vector<ExternalSkeleton> load_external_skeletons(const std::filesystem::path& dir, int model_resolution = 256);

/// M x M patch probabilities, row-major.
struct PatchScores {
  int size = 0;
  std::vector<double> values;

  double at(int col, int row) const { return values[static_cast<std::size_t>(row * size + col)]; }
};

inline constexpr int kPatchGrid = 30;
inline constexpr int kPatchSize = 70;

/// Scores a candidate skeleton given the conditioning image. Implementations
/// must be safe for concurrent calls.
class Discriminator {
 public:
  virtual ~Discriminator() = default;
  virtual PatchScores scores(const RasterImage& scan, const RasterImage& candidate) const = 0;
};

/// Start offset of patch `i` on an axis of `extent` pixels; the 30 patches of
/// side min(70, extent) tile the axis from edge to edge.
int patch_origin(int i, int extent);

/// Patch score = 1 - mean |scan - candidate| over the patch.
std::shared_ptr<const Discriminator> stub_discriminator();

/// Reads precomputed scores from <dir>/<candidate_key(candidate)>.csv.
std::shared_ptr<const Discriminator> score_directory_discriminator(const std::filesystem::path& dir);

/// 16 hex digits identifying a candidate image by its 8-bit quantized pixels.
std::string candidate_key(const RasterImage& candidate);

/// 30 lines of 30 comma-separated probabilities.
PatchScores read_patch_scores_csv(const std::filesystem::path& path);
void write_patch_scores_csv(const std::filesystem::path& path, const PatchScores& scores);

}  // namespace tabstruct
