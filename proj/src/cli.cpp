#include "tabstruct/cli.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "tabstruct/dataset.hpp"
#include "tabstruct/errors.hpp"
#include "tabstruct/eval.hpp"
#include "tabstruct/objectives.hpp"
#include "tabstruct/parallel.hpp"
#include "tabstruct/png_io.hpp"
#include "tabstruct/rng.hpp"

namespace tabstruct {

namespace fs = std::filesystem;

namespace {

std::uint64_t text_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

Json style_json(const RenderStyle& s) {
  return Json{{"line_width", s.line_width},
              {"separator_visibility_prob", s.separator_visibility_prob},
              {"word_gap", s.word_gap},
              {"cell_padding", s.cell_padding}};
}

// ---------------------------------------------------------------- generate

std::vector<DatasetEntry> resolve_entries(const GenerateOptions& o) {
  std::map<std::string, TableConfig> custom;
  if (!o.presets_file.empty()) custom = load_config_presets(o.presets_file);
  std::vector<DatasetEntry> entries;
  std::set<std::string> seen;
  for (const auto& name : o.configs) {
    std::string key = name;
    std::replace(key.begin(), key.end(), ' ', '_');
    std::replace(key.begin(), key.end(), '-', '_');
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    auto it = custom.find(key);
    TableConfig c = it != custom.end() ? it->second : preset(key);
    if (!seen.insert(c.name).second) throw InfeasibleConfig("configuration '" + c.name + "' listed twice");
    entries.push_back({c, o.count});
  }
  return entries;
}

// --------------------------------------------------------------------- fit

struct FitJob {
  std::string config;
  std::string id;
  std::uint64_t key = 0;
  std::optional<TableGenotype> truth;
  fs::path skeleton_file;
  TableConfig fallback;
};

struct FitOutcome {
  bool fatal = false;
  std::optional<Json> error;
};

std::vector<FitJob> collect_fit_jobs(const FitOptions& o, PageSpec& page) {
  std::vector<FitJob> jobs;
  std::optional<DatasetManifest> manifest;
  std::map<std::string, TableConfig> configs;
  if (!o.dataset.empty()) {
    manifest = load_manifest(o.dataset);
    page = manifest->page;
    for (const auto& e : manifest->configs) configs[e.config.name] = e.config;
  }
  const TableConfig default_config = preset(o.fallback_config);
  auto config_for = [&](const std::string& name) {
    auto it = configs.find(name);
    return it != configs.end() ? it->second : default_config;
  };

  if (o.source == "oracle" || o.source == "degraded") {
    if (!manifest) throw FormatError("--source " + o.source + " requires --dataset");
    for (const auto& s : manifest->samples) {
      jobs.push_back({s.config, s.id, s.seed, load_sample_genotype(o.dataset, s), {}, config_for(s.config)});
    }
    return jobs;
  }
  if (o.source != "external") throw FormatError("unknown --source '" + o.source + "'");
  if (o.skeletons.empty()) throw FormatError("--source external requires --skeletons");
  if (!fs::is_directory(o.skeletons)) throw FormatError(o.skeletons + " is not a directory");

  auto add_dir = [&](const fs::path& dir, const std::string& config) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_regular_file() && e.path().extension() == ".png") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      std::string id = f.stem().string();
      if (id.size() > 5 && id.ends_with(".skel")) id.resize(id.size() - 5);
      jobs.push_back({config, id, text_hash(config + "/" + id), std::nullopt, f, config_for(config)});
    }
  };
  add_dir(o.skeletons, "external");
  std::vector<fs::path> subdirs;
  for (const auto& e : fs::directory_iterator(o.skeletons)) {
    if (e.is_directory()) subdirs.push_back(e.path());
  }
  std::sort(subdirs.begin(), subdirs.end());
  for (const auto& d : subdirs) add_dir(d, d.filename().string());
  return jobs;
}

FitOutcome fit_one(const FitJob& job, const FitOptions& o, const PageSpec& page, const ObjectiveSpec& spec) {
  FitOutcome outcome;
  auto error_json = [&](const std::string& kind, const std::string& message, bool fatal) {
    return Json{{"config", job.config}, {"id", job.id}, {"kind", kind}, {"message", message}, {"fatal", fatal}};
  };
  try {
    SkeletonTarget target;
    if (o.source == "oracle") {
      target = oracle_skeleton(*job.truth, page, o.style);
    } else if (o.source == "degraded") {
      target = degraded_skeleton(*job.truth, o.degradation, derive_seed(o.seed, {1, job.key}), page, o.style);
    } else {
      target = load_external_skeleton(job.skeleton_file, page.model_resolution);
    }

    std::string status = "ok";
    std::optional<TableGenotype> initial;
    try {
      initial = initial_genotype(target, o.thresholds, page, o.style);
    } catch (const InsufficientStructure& e) {
      status = o.no_ga ? "insufficient_structure" : "random_init_fallback";
      outcome.error = error_json("insufficient_structure", e.what(), false);
    }

    Json record{{"config", job.config}, {"id", job.id}, {"source", o.source}, {"stage", o.no_ga ? "initial" : "ga"}};
    TableGenotype prediction;
    if (o.no_ga) {
      prediction = initial.value_or(TableGenotype{});
      record["fit"] = nullptr;
    } else {
      GaParams ga = o.ga;
      ga.seed = derive_seed(o.seed, {2, job.key});
      std::vector<TableGenotype> init;
      if (initial) {
        init.push_back(*initial);
      } else {
        init = random_initial_population(job.fallback, ga.population_size, derive_seed(o.seed, {3, job.key}), page);
      }
      EvolveContext ctx;
      ctx.page = page;
      ctx.style = o.style;
      const FitResult fit = evolve(target, spec, std::move(init), ga, ctx);
      prediction = fit.best_genotype;
      record["fit"] = fit_result_to_json(fit);
    }
    record["status"] = status;
    record["initial_genotype"] = initial ? genotype_to_json(*initial) : Json(nullptr);
    record["genotype"] = genotype_to_json(prediction);

    const fs::path dir = fs::path(o.out) / job.config;
    write_json_atomic(dir / (job.id + ".fit.json"), record);
    if (o.overlays) {
      write_png_overlay(dir / (job.id + ".overlay.png"), target.image, candidate_phenotype(prediction, page, o.style));
    }
  } catch (const std::exception& e) {
    outcome.fatal = true;
    outcome.error = error_json("fatal", e.what(), true);
  }
  return outcome;
}

// -------------------------------------------------------------------- eval

struct FitRecord {
  std::string config;
  std::string id;
  std::string stage;
  TableGenotype genotype;
};

}  // namespace

Json options_to_json(const GenerateOptions& o) {
  return Json{{"command", "generate"}, {"configs", o.configs}, {"presets_file", o.presets_file}, {"count", o.count},
              {"seed", o.seed},        {"split", o.split},     {"jobs", o.jobs},                 {"style", style_json(o.style)}};
}

Json options_to_json(const FitOptions& o) {
  return Json{{"command", "fit"},
              {"source", o.source},
              {"dataset", o.dataset},
              {"skeletons", o.skeletons},
              {"no_ga", o.no_ga},
              {"objective", o.objective},
              {"lambda", o.lambda},
              {"scores_dir", o.scores_dir},
              {"fallback_config", o.fallback_config},
              {"degradation",
               {{"jitter", o.degradation.divider_jitter_px},
                {"dropout", o.degradation.segment_dropout_prob},
                {"blur", o.degradation.blur_radius},
                {"speckle", o.degradation.speckle_prob}}},
              {"thresholds", {{"peak_threshold", o.thresholds.peak_threshold_frac}, {"min_gap", o.thresholds.min_gap_px},
                {"line_filter_radius", o.thresholds.line_filter_radius}}},
              {"ga",
               {{"population", o.ga.population_size},
                {"survival_rate", o.ga.survival_rate},
                {"mutation_prob", o.ga.per_entry_mutation_prob},
                {"structural_prob", o.ga.structural_mutation_prob},
                {"convergence_epsilon", o.ga.convergence_epsilon},
                {"convergence_window", o.ga.convergence_window},
                {"max_epochs", o.ga.max_epochs},
                {"mutation_step", o.ga.geometry_mutation_step}}},
              {"seed", o.seed},
              {"overlays", o.overlays},
              {"jobs", o.jobs},
              {"style", style_json(o.style)}};
}

Json options_to_json(const EvalOptions& o) {
  return Json{{"command", "eval"}, {"fits", o.fits}, {"truth", o.truth}};
}

int cmd_generate(const GenerateOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (o.out.empty()) throw FormatError("--out is required");
    if (o.count < 0) throw FormatError("--count must be >= 0");
    DatasetOptions opts;
    opts.split = parse_split(o.split);
    opts.style = o.style;
    opts.jobs = o.jobs;
    const auto entries = resolve_entries(o);
    const DatasetManifest m = generate_dataset(entries, o.out, o.seed, opts);
    write_json_atomic(fs::path(o.out) / "resolved_config.json", options_to_json(o));
    out << "generated " << m.samples.size() << " samples in " << o.out << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "generate: " << e.what() << "\n";
    return 1;
  }
}

int cmd_fit(const FitOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<FitJob> jobs;
  PageSpec page;
  ObjectiveSpec spec;
  try {
    if (o.out.empty()) throw FormatError("--out is required");
    if (!o.dataset.empty() && !fs::exists(fs::path(o.dataset) / "manifest.json")) {
      throw FormatError("no manifest.json in " + o.dataset);
    }
    validate(o.degradation);
    validate(o.ga);
    validate(o.style);
    spec.kind = parse_objective_kind(o.objective);
    spec.lambda = o.lambda;
    spec.discriminator = o.scores_dir.empty() ? stub_discriminator() : score_directory_discriminator(o.scores_dir);
    validate(spec);
    jobs = collect_fit_jobs(o, page);
    fs::create_directories(o.out);
  } catch (const std::exception& e) {
    err << "fit: " << e.what() << "\n";
    return 1;
  }

  std::vector<FitOutcome> outcomes(jobs.size());
  parallel_for(jobs.size(), o.jobs, [&](std::size_t i) { outcomes[i] = fit_one(jobs[i], o, page, spec); });

  Json errors = Json::array();
  int fatal = 0;
  for (const auto& oc : outcomes) {
    if (oc.error) errors.push_back(*oc.error);
    fatal += oc.fatal;
  }
  write_json_atomic(fs::path(o.out) / "errors.json", errors);
  write_json_atomic(fs::path(o.out) / "resolved_config.json", options_to_json(o));
  out << "fitted " << jobs.size() - static_cast<std::size_t>(fatal) << "/" << jobs.size() << " samples";
  if (!errors.empty()) out << " (" << errors.size() << " reported in errors.json)";
  out << "\n";
  for (const auto& e : errors) {
    if (e.at("fatal").get<bool>()) {
      err << "fit: " << e.at("config").get<std::string>() << "/" << e.at("id").get<std::string>() << ": "
          << e.at("message").get<std::string>() << "\n";
    }
  }
  return fatal == 0 ? 0 : 1;
}

int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (o.out.empty()) throw FormatError("--out is required");
    if (!fs::is_directory(o.fits)) throw FormatError("fits directory " + o.fits + " not found");
    const DatasetManifest manifest = load_manifest(o.truth);

    std::map<std::pair<std::string, std::string>, const SampleRecord*> truth_index;
    for (const auto& s : manifest.samples) truth_index[{s.config, s.id}] = &s;

    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(o.fits)) {
      const std::string name = e.path().filename().string();
      if (e.is_regular_file() && name.size() > 9 && name.ends_with(".fit.json")) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<std::string> config_order;
    for (const auto& c : manifest.configs) config_order.push_back(c.config.name);
    std::map<std::pair<std::string, std::string>, std::vector<StructureErrors>> groups;
    std::set<std::pair<std::string, std::string>> matched;
    Json unmatched_fits = Json::array();
    for (const auto& f : files) {
      const Json j = read_json_file(f);
      FitRecord r{j.at("config").get<std::string>(), j.at("id").get<std::string>(), j.at("stage").get<std::string>(),
                  genotype_from_json(j.at("genotype"))};
      auto it = truth_index.find({r.config, r.id});
      if (it == truth_index.end()) {
        err << "eval: warning: no ground truth for " << r.config << "/" << r.id << "; excluded\n";
        unmatched_fits.push_back(r.config + "/" + r.id);
        continue;
      }
      matched.insert({r.config, r.id});
      groups[{r.config, r.stage}].push_back(compare(load_sample_genotype(o.truth, *it->second), r.genotype));
    }
    Json missing = Json::array();
    for (const auto& s : manifest.samples) {
      if (!matched.contains({s.config, s.id})) {
        err << "eval: warning: no fit for " << s.config << "/" << s.id << "; excluded\n";
        missing.push_back(s.config + "/" + s.id);
      }
    }
    if (groups.empty()) throw FormatError("no fits matched the ground truth");

    auto rank = [&](const std::string& config) {
      auto it = std::find(config_order.begin(), config_order.end(), config);
      return static_cast<std::size_t>(it - config_order.begin());
    };
    std::vector<std::pair<std::string, std::string>> keys;
    for (const auto& [k, _] : groups) keys.push_back(k);
    std::stable_sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
      return std::pair(rank(a.first), a.second) < std::pair(rank(b.first), b.second);
    });

    std::vector<EvalReport> reports;
    Json reports_json = Json::array();
    for (const auto& k : keys) {
      reports.push_back(aggregate(groups.at(k), k.first, k.second));
      reports_json.push_back(report_to_json(reports.back()));
    }
    const fs::path dir(o.out);
    write_json_atomic(dir / "report.json",
                      Json{{"reports", reports_json}, {"unmatched_fits", unmatched_fits}, {"missing_fits", missing}});
    write_text_atomic(dir / "report.csv", reports_to_csv(reports));
    write_text_atomic(dir / "histograms.csv", histograms_to_csv(reports));
    const std::string summary = format_summary(reports);
    write_text_atomic(dir / "summary.txt", summary);
    write_json_atomic(dir / "resolved_config.json", options_to_json(o));
    out << summary;
    return 0;
  } catch (const std::exception& e) {
    err << "eval: " << e.what() << "\n";
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Table structure recovery: synthetic data, skeleton fitting and evaluation", "tabstruct"};
  app.set_config("--config-file", "", "TOML config file; [generate], [fit] and [eval] sections hold command flags");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Render a synthetic scan/skeleton/genotype corpus");
  g->add_option("--config", gen.configs, "Table configuration name(s)")->capture_default_str();
  g->add_option("--presets", gen.presets_file, "JSON file of additional configurations");
  g->add_option("--count", gen.count, "Samples per configuration")->capture_default_str();
  g->add_option("--seed", gen.seed, "Base seed")->capture_default_str();
  g->add_option("--split", gen.split, "train | test")->capture_default_str()->check(CLI::IsMember({"train", "test"}));
  g->add_option("--out", gen.out, "Output directory")->required();
  g->add_option("--jobs", gen.jobs, "Worker threads")->capture_default_str();
  g->add_option("--line-width", gen.style.line_width, "Separator thickness, px")->capture_default_str();
  g->add_option("--visibility", gen.style.separator_visibility_prob, "Probability a scan separator is drawn")->capture_default_str();
  g->add_option("--word-gap", gen.style.word_gap, "Space between words, px")->capture_default_str();
  g->add_option("--cell-padding", gen.style.cell_padding, "Text clearance from separators, px")->capture_default_str();

  FitOptions fit;
  auto* f = app.add_subcommand("fit", "Estimate genotypes from skeletons (projection init, then GA)");
  f->add_option("--source", fit.source, "oracle | degraded | external")
      ->capture_default_str()
      ->check(CLI::IsMember({"oracle", "degraded", "external"}));
  f->add_option("--dataset", fit.dataset, "Dataset directory with manifest.json");
  f->add_option("--skeletons", fit.skeletons, "Directory of external skeleton PNGs");
  f->add_option("--out", fit.out, "Output run directory")->required();
  f->add_flag("--no-ga", fit.no_ga, "Stop after the projection estimate");
  f->add_option("--objective", fit.objective, "nonoverlap | l1 | weighted | discriminator")->capture_default_str();
  f->add_option("--lambda", fit.lambda, "L1 weight of the weighted objective")->capture_default_str();
  f->add_option("--scores-dir", fit.scores_dir, "Directory of precomputed 30x30 discriminator score CSVs");
  f->add_option("--fallback-config", fit.fallback_config, "Config for random initialisation")->capture_default_str();
  f->add_option("--jitter", fit.degradation.divider_jitter_px, "Degraded: max divider shift, page px")->capture_default_str();
  f->add_option("--dropout", fit.degradation.segment_dropout_prob, "Degraded: segment erase probability")->capture_default_str();
  f->add_option("--blur", fit.degradation.blur_radius, "Degraded: box blur radius, model px")->capture_default_str();
  f->add_option("--speckle", fit.degradation.speckle_prob, "Degraded: pixel inversion probability")->capture_default_str();
  f->add_option("--peak-threshold", fit.thresholds.peak_threshold_frac, "Peak threshold, fraction of max")->capture_default_str();
  f->add_option("--line-filter", fit.thresholds.line_filter_radius, "Directional median half-length, model px")->capture_default_str();
  f->add_option("--min-gap", fit.thresholds.min_gap_px, "Minimum divider gap, model px")->capture_default_str();
  f->add_option("--population", fit.ga.population_size, "GA population size")->capture_default_str();
  f->add_option("--survival-rate", fit.ga.survival_rate, "GA survivor fraction")->capture_default_str();
  f->add_option("--mutation-prob", fit.ga.per_entry_mutation_prob, "Per-entry mutation probability")->capture_default_str();
  f->add_option("--structural-prob", fit.ga.structural_mutation_prob, "Per-dimension structural mutation probability")->capture_default_str();
  f->add_option("--mutation-step", fit.ga.geometry_mutation_step, "Max geometric mutation, page px")->capture_default_str();
  f->add_option("--convergence-epsilon", fit.ga.convergence_epsilon, "Relative improvement threshold")->capture_default_str();
  f->add_option("--convergence-window", fit.ga.convergence_window, "Stalled epochs before stopping")->capture_default_str();
  f->add_option("--max-epochs", fit.ga.max_epochs, "Epoch cap")->capture_default_str();
  f->add_option("--seed", fit.seed, "Base seed")->capture_default_str();
  f->add_flag("--overlays", fit.overlays, "Write <id>.overlay.png next to each fit");
  f->add_option("--jobs", fit.jobs, "Worker threads")->capture_default_str();
  f->add_option("--line-width", fit.style.line_width, "Separator thickness, px")->capture_default_str();

  EvalOptions ev;
  auto* e = app.add_subcommand("eval", "Compare fitted genotypes with ground truth");
  e->add_option("--fits", ev.fits, "Run directory written by fit")->required();
  e->add_option("--truth", ev.truth, "Dataset directory with manifest.json")->required();
  e->add_option("--out", ev.out, "Report directory")->required();

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& pe) {
    return app.exit(pe, out, err);
  }

  if (g->parsed()) return cmd_generate(gen, out, err);
  if (f->parsed()) return cmd_fit(fit, out, err);
  if (e->parsed()) return cmd_eval(ev, out, err);
  return 1;
}

}  // namespace tabstruct
