#include "tabstruct/ga.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "tabstruct/errors.hpp"

namespace tabstruct {

namespace {

int nonzero_delta(Rng& rng, int step) {
  const int magnitude = uniform_int(rng, 1, step);
  return chance(rng, 0.5) ? magnitude : -magnitude;
}

std::vector<int> genotype_key(const TableGenotype& g) {
  std::vector<int> key{g.x0, g.y0, g.max_rows()};
  key.insert(key.end(), g.row_heights.begin(), g.row_heights.end());
  key.insert(key.end(), g.col_widths.begin(), g.col_widths.end());
  return key;
}

StructuralOp draw_op(Rng& rng) {
  switch (uniform_int(rng, 0, 2)) {
    case 0: return StructuralOp::add;
    case 1: return StructuralOp::merge;
    default: return StructuralOp::remove;
  }
}

class RankSelector {
 public:
  explicit RankSelector(std::span<const double> fitness) {
    std::vector<std::size_t> order(fitness.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
    std::vector<double> weights(fitness.size());
    for (std::size_t r = 0; r < order.size(); ++r) weights[order[r]] = static_cast<double>(r + 1);
    dist_ = std::discrete_distribution<std::size_t>(weights.begin(), weights.end());
  }

  std::size_t operator()(Rng& rng) { return dist_(rng); }

 private:
  std::discrete_distribution<std::size_t> dist_;
};

}  // namespace

void validate(const GaParams& p) {
  auto prob = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (p.population_size < 1) throw std::invalid_argument("population_size must be >= 1");
  if (!(p.survival_rate > 0.0 && p.survival_rate < 1.0)) throw std::invalid_argument("survival_rate must be in (0, 1)");
  if (!prob(p.per_entry_mutation_prob) || !prob(p.structural_mutation_prob)) {
    throw std::invalid_argument("mutation probabilities must be in [0, 1]");
  }
  if (p.convergence_window < 1) throw std::invalid_argument("convergence_window must be >= 1");
  if (p.max_epochs < 0) throw std::invalid_argument("max_epochs must be >= 0");
  if (p.geometry_mutation_step < 1) throw std::invalid_argument("geometry_mutation_step must be >= 1");
  if (!(p.convergence_epsilon >= 0.0)) throw std::invalid_argument("convergence_epsilon must be >= 0");
}

Json fit_result_to_json(const FitResult& r) {
  return Json{{"best_genotype", genotype_to_json(r.best_genotype)},
              {"best_fitness", r.best_fitness},
              {"best_objective", r.best_objective},
              {"initial_objective", r.initial_objective},
              {"epochs_run", r.epochs_run},
              {"converged", r.converged},
              {"per_epoch_best", r.per_epoch_best}};
}

std::vector<int> structural_edit(std::vector<int> sizes, StructuralOp op, Rng& rng) {
  const int k = static_cast<int>(sizes.size());
  switch (op) {
    case StructuralOp::add: {
      std::vector<int> eligible;
      for (int i = 0; i < k; ++i)
        if (sizes[static_cast<std::size_t>(i)] >= 2) eligible.push_back(i);
      if (eligible.empty()) return sizes;
      const auto i = static_cast<std::size_t>(eligible[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(eligible.size()) - 1))]);
      const int first = sizes[i] / 2;
      const int second = sizes[i] - first;
      sizes[i] = first;
      sizes.insert(sizes.begin() + static_cast<std::ptrdiff_t>(i) + 1, second);
      return sizes;
    }
    case StructuralOp::merge: {
      if (k < 2) return sizes;
      const auto i = static_cast<std::size_t>(uniform_int(rng, 0, k - 2));
      sizes[i] += sizes[i + 1];
      sizes.erase(sizes.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      return sizes;
    }
    case StructuralOp::remove: {
      if (k < 2) return sizes;
      const int i = uniform_int(rng, 0, k - 1);
      int neighbour = i == 0 ? 1 : (i == k - 1 ? k - 2 : (chance(rng, 0.5) ? i - 1 : i + 1));
      sizes[static_cast<std::size_t>(neighbour)] += sizes[static_cast<std::size_t>(i)];
      sizes.erase(sizes.begin() + i);
      return sizes;
    }
  }
  return sizes;
}

void clamp_axis(int& origin, std::vector<int>& sizes, int page_extent) {
  origin = std::max(origin, 0);
  for (int& s : sizes) s = std::max(s, 1);
  int overflow = origin + std::accumulate(sizes.begin(), sizes.end(), 0) - (page_extent - 1);
  if (overflow <= 0) return;
  const int shift = std::min(origin, overflow);
  origin -= shift;
  overflow -= shift;
  for (auto it = sizes.rbegin(); it != sizes.rend() && overflow > 0; ++it) {
    const int cut = std::min(*it - 1, overflow);
    *it -= cut;
    overflow -= cut;
  }
}

TableGenotype mutate(const TableGenotype& g, const GaParams& params, Rng& rng, const PageSpec& page) {
  TableGenotype out = canonicalize(g);
  bool changed = false;
  const int step = params.geometry_mutation_step;
  auto perturb = [&](int& v) {
    if (chance(rng, params.per_entry_mutation_prob)) {
      v += nonzero_delta(rng, step);
      changed = true;
    }
  };
  perturb(out.x0);
  perturb(out.y0);
  for (int& h : out.row_heights) perturb(h);
  for (int& w : out.col_widths) perturb(w);
  for (auto* sizes : {&out.row_heights, &out.col_widths}) {
    if (chance(rng, params.structural_mutation_prob)) {
      *sizes = structural_edit(*sizes, draw_op(rng), rng);
      changed = true;
    }
  }
  if (!changed) return g;
  clamp_axis(out.x0, out.col_widths, page.width);
  clamp_axis(out.y0, out.row_heights, page.height);
  return out;
}

TableGenotype crossover(const TableGenotype& a, const TableGenotype& b, const PageSpec& page) {
  TableGenotype child = canonicalize({a.x0, b.y0, b.row_heights, a.col_widths});
  if (!fits_page(child, page)) {
    clamp_axis(child.x0, child.col_widths, page.width);
    clamp_axis(child.y0, child.row_heights, page.height);
  }
  return child;
}

FitResult evolve(const SkeletonTarget& target, const ObjectiveSpec& spec, std::vector<TableGenotype> init,
                 const GaParams& params, const EvolveContext& ctx) {
  validate(params);
  validate(spec);
  if (init.empty()) throw std::invalid_argument("evolve needs at least one initial genotype");
  const auto pop_size = static_cast<std::size_t>(params.population_size);
  const RasterImage& scan = ctx.scan.empty() ? target.image : ctx.scan;
  Rng rng(params.seed);

  std::map<std::vector<int>, double> cache;
  auto objective_of = [&](const TableGenotype& g) {
    auto key = genotype_key(g);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const double score = evaluate_objective(spec, scan, target.image, candidate_phenotype(g, ctx.page, ctx.style));
    if (!std::isfinite(score)) throw ObjectiveError("objective evaluated to a non-finite value");
    cache.emplace(std::move(key), score);
    return score;
  };

  std::vector<TableGenotype> population;
  population.reserve(pop_size);
  for (const auto& g : init) {
    if (population.size() == pop_size) break;
    population.push_back(canonicalize(g));
  }
  const std::size_t seeded = population.size();
  for (std::size_t i = 0; population.size() < pop_size; ++i) {
    population.push_back(mutate(population[i % seeded], params, rng, ctx.page));
  }

  FitResult result;
  result.initial_objective = objective_of(population.front());

  std::vector<double> fit(pop_size);
  auto evaluate = [&](int epoch) {
    for (std::size_t i = 0; i < pop_size; ++i) fit[i] = fitness(spec.kind, objective_of(population[i]));
    if (ctx.observer) ctx.observer(epoch, population, fit);
    return static_cast<std::size_t>(std::max_element(fit.begin(), fit.end()) - fit.begin());
  };

  std::size_t best = evaluate(0);
  result.per_epoch_best.push_back(fit[best]);

  const std::size_t survivors =
      pop_size > 1 ? static_cast<std::size_t>(std::lround(params.survival_rate * static_cast<double>(pop_size - 1))) : 0;
  int stalled = 0;
  for (int epoch = 1; epoch <= params.max_epochs; ++epoch) {
    RankSelector select(fit);
    std::vector<TableGenotype> next;
    next.reserve(pop_size);
    next.push_back(population[best]);
    for (std::size_t s = 0; s < survivors && next.size() < pop_size; ++s) {
      next.push_back(mutate(population[select(rng)], params, rng, ctx.page));
    }
    while (next.size() < pop_size) {
      const std::size_t a = select(rng);
      const std::size_t b = select(rng);
      next.push_back(mutate(crossover(population[a], population[b], ctx.page), params, rng, ctx.page));
    }
    population = std::move(next);

    const double previous = fit[best];
    best = evaluate(epoch);
    result.per_epoch_best.push_back(fit[best]);
    result.epochs_run = epoch;

    const double improvement = (fit[best] - previous) / std::max(std::abs(previous), 1e-9);
    stalled = improvement < params.convergence_epsilon ? stalled + 1 : 0;
    if (stalled >= params.convergence_window) {
      result.converged = true;
      break;
    }
  }

  result.best_genotype = population[best];
  result.best_fitness = fit[best];
  result.best_objective = objective_of(population[best]);
  return result;
}

}  // namespace tabstruct
