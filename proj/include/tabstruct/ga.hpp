#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tabstruct/genotype.hpp"
#include "tabstruct/json_io.hpp"
#include "tabstruct/objectives.hpp"
#include "tabstruct/render.hpp"
#include "tabstruct/rng.hpp"
#include "tabstruct/skeleton_source.hpp"

namespace tabstruct {

struct GaParams {
  int population_size = 50;
  /// Fraction of the non-elite slots filled by mutated selected members;
  /// the remainder is crossover offspring.
  double survival_rate = 0.7;
  /// Probability that each of x0, y0, every row height and every column
  /// width is perturbed.
  double per_entry_mutation_prob = 0.1;
  /// Probability, per dimension, of one add/merge/remove operation.
  double structural_mutation_prob = 0.1;
  /// Relative best-fitness improvement below which an epoch counts as stalled.
  double convergence_epsilon = 0.01;
  /// Consecutive stalled epochs that end the run.
  int convergence_window = 3;
  int max_epochs = 200;
  /// Geometric perturbations are non-zero integers in [-step, +step], page px.
  int geometry_mutation_step = 10;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument on out-of-range parameters.
void validate(const GaParams& params);

struct FitResult {
  TableGenotype best_genotype;
  double best_fitness = 0.0;
  double best_objective = 0.0;
  /// Objective of the first initial genotype (the supplied estimate).
  double initial_objective = 0.0;
  int epochs_run = 0;
  /// Entry 0 is the initial population's best; entry k the best after epoch k.
  std::vector<double> per_epoch_best;
  bool converged = false;
};

Json fit_result_to_json(const FitResult& r);

enum class StructuralOp { add, merge, remove };

/// One structural edit of a list of positive sizes. `add` splits a random
/// entry (size >= 2) in half; `merge` sums a random adjacent pair; `remove`
/// deletes a random entry and gives its extent to a neighbour. The total is
/// preserved. Returns the input unchanged when the edit is impossible
/// (single entry for merge/remove, no entry >= 2 for add).
std::vector<int> structural_edit(std::vector<int> sizes, StructuralOp op, Rng& rng);

/// Pulls an axis back onto the page: origin >= 0, sizes >= 1, then shifts the
/// origin and finally shrinks trailing sizes until the far border fits.
void clamp_axis(int& origin, std::vector<int>& sizes, int page_extent);

/// Geometric and structural mutation. The result is canonical and fits the
/// page; with nothing drawn the input is returned unchanged.
TableGenotype mutate(const TableGenotype& g, const GaParams& params, Rng& rng, const PageSpec& page = {});

/// Columns and x0 from `a`, rows and y0 from `b`.
TableGenotype crossover(const TableGenotype& a, const TableGenotype& b, const PageSpec& page = {});

struct EvolveContext {
  PageSpec page;
  RenderStyle style;
  /// Conditioning image for discriminator objectives; the target is used
  /// when empty.
  RasterImage scan;
  /// Called after each population evaluation (epoch 0 = initial).
  std::function<void(int epoch, std::span<const TableGenotype> population, std::span<const double> fitness)> observer;
};

/// Evolves `init` toward `target`. The initial list is truncated to, or
/// padded with mutations of its members up to, population_size.
FitResult evolve(const SkeletonTarget& target, const ObjectiveSpec& spec, std::vector<TableGenotype> init,
                 const GaParams& params, const EvolveContext& ctx = {});

}  // namespace tabstruct
