#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "tabstruct/genotype.hpp"
#include "tabstruct/raster_image.hpp"
#include "tabstruct/render.hpp"
#include "tabstruct/skeleton_source.hpp"

namespace tabstruct {

enum class ObjectiveKind {
  /// Mean log patch probability of the candidate (maximised).
  discriminator_logprob,
  /// Pixel L1 distance to the target (minimised).
  l1,
  /// Log probability minus lambda * L1 (maximised).
  weighted,
  /// L1 over the product of the two images' ink masses (minimised).
  nonoverlap,
};

std::string to_string(ObjectiveKind k);
ObjectiveKind parse_objective_kind(std::string_view s);
bool is_minimized(ObjectiveKind k);

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::nonoverlap;
  double lambda = 100.0;
  std::shared_ptr<const Discriminator> discriminator;
};

/// Throws ObjectiveError if the kind needs a discriminator and none is set,
/// or lambda is negative.
void validate(const ObjectiveSpec& spec);

/// Lower bound applied to patch probabilities before taking logs.
inline constexpr double kLogFloor = 1e-12;

/// All separators, no text, at model resolution.
RasterImage candidate_phenotype(const TableGenotype& g, const PageSpec& page = {}, const RenderStyle& style = {});

double obj_discriminator(const ObjectiveSpec& spec, const RasterImage& scan, const RasterImage& candidate);
double obj_l1(const RasterImage& target, const RasterImage& candidate);
double obj_weighted(const ObjectiveSpec& spec, const RasterImage& scan, const RasterImage& target,
                    const RasterImage& candidate);
double obj_nonoverlap(const RasterImage& target, const RasterImage& candidate);

/// Core of obj_nonoverlap over flat intensity arrays of equal length.
/// Returns 1 when either image has no ink.
double nonoverlap_score(std::span<const double> target, std::span<const double> candidate);

/// Dispatches on spec.kind.
double evaluate_objective(const ObjectiveSpec& spec, const RasterImage& scan, const RasterImage& target,
                          const RasterImage& candidate);

/// Larger is fitter: the score for maximised kinds, its negation otherwise.
double fitness(ObjectiveKind kind, double score);

}  // namespace tabstruct
