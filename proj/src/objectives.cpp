#include "tabstruct/objectives.hpp"

#include <cmath>

#include "tabstruct/errors.hpp"

namespace tabstruct {

namespace {

void require_same_size(const RasterImage& a, const RasterImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw ObjectiveError("image sizes differ: " + std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                         " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()));
  }
}

void require_discriminator(const ObjectiveSpec& spec) {
  if (!spec.discriminator) throw ObjectiveError("objective '" + to_string(spec.kind) + "' needs a discriminator");
}

}  // namespace

std::string to_string(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::discriminator_logprob: return "discriminator";
    case ObjectiveKind::l1: return "l1";
    case ObjectiveKind::weighted: return "weighted";
    case ObjectiveKind::nonoverlap: return "nonoverlap";
  }
  return "nonoverlap";
}

ObjectiveKind parse_objective_kind(std::string_view s) {
  if (s == "discriminator" || s == "discriminator_logprob" || s == "logprob") return ObjectiveKind::discriminator_logprob;
  if (s == "l1") return ObjectiveKind::l1;
  if (s == "weighted") return ObjectiveKind::weighted;
  if (s == "nonoverlap") return ObjectiveKind::nonoverlap;
  throw ObjectiveError("unknown objective '" + std::string(s) + "'");
}

bool is_minimized(ObjectiveKind k) { return k == ObjectiveKind::l1 || k == ObjectiveKind::nonoverlap; }

void validate(const ObjectiveSpec& spec) {
  if (spec.kind == ObjectiveKind::discriminator_logprob || spec.kind == ObjectiveKind::weighted) {
    require_discriminator(spec);
  }
  if (!(spec.lambda >= 0.0)) throw ObjectiveError("lambda must be non-negative");
}

RasterImage candidate_phenotype(const TableGenotype& g, const PageSpec& page, const RenderStyle& style) {
  return render_skeleton_resized(g, page, style);
}

double obj_discriminator(const ObjectiveSpec& spec, const RasterImage& scan, const RasterImage& candidate) {
  require_discriminator(spec);
  const PatchScores s = spec.discriminator->scores(scan, candidate);
  if (s.values.empty()) throw ObjectiveError("discriminator returned no patch scores");
  double sum = 0.0;
  for (double p : s.values) sum += std::log(std::max(p, kLogFloor));
  return sum / static_cast<double>(s.values.size());
}

double obj_l1(const RasterImage& target, const RasterImage& candidate) {
  require_same_size(target, candidate);
  const auto a = target.pixels();
  const auto b = candidate.pixels();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double obj_weighted(const ObjectiveSpec& spec, const RasterImage& scan, const RasterImage& target,
                    const RasterImage& candidate) {
  return obj_discriminator(spec, scan, candidate) - spec.lambda * obj_l1(target, candidate);
}

double nonoverlap_score(std::span<const double> target, std::span<const double> candidate) {
  double diff = 0.0;
  double ink_target = 0.0;
  double ink_candidate = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    diff += std::abs(target[i] - candidate[i]);
    ink_target += 1.0 - target[i];
    ink_candidate += 1.0 - candidate[i];
  }
  if (ink_target <= 0.0 || ink_candidate <= 0.0) return 1.0;
  return diff / (ink_candidate * ink_target);
}

double obj_nonoverlap(const RasterImage& target, const RasterImage& candidate) {
  require_same_size(target, candidate);
  return nonoverlap_score(target.pixels(), candidate.pixels());
}

double evaluate_objective(const ObjectiveSpec& spec, const RasterImage& scan, const RasterImage& target,
                          const RasterImage& candidate) {
  switch (spec.kind) {
    case ObjectiveKind::discriminator_logprob: return obj_discriminator(spec, scan, candidate);
    case ObjectiveKind::l1: return obj_l1(target, candidate);
    case ObjectiveKind::weighted: return obj_weighted(spec, scan, target, candidate);
    case ObjectiveKind::nonoverlap: return obj_nonoverlap(target, candidate);
  }
  throw ObjectiveError("unhandled objective kind");
}

double fitness(ObjectiveKind kind, double score) { return is_minimized(kind) ? -score : score; }

}  // namespace tabstruct
