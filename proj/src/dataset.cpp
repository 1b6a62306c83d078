#include "tabstruct/dataset.hpp"

#include <cstdio>

#include "tabstruct/errors.hpp"
#include "tabstruct/parallel.hpp"
#include "tabstruct/png_io.hpp"
#include "tabstruct/rng.hpp"

namespace tabstruct {

namespace {

std::uint64_t name_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string sample_id(int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%06d", index);
  return buf;
}

Json style_to_json(const RenderStyle& s) {
  return Json{{"line_width", s.line_width},
              {"separator_visibility_prob", s.separator_visibility_prob},
              {"word_gap", s.word_gap},
              {"cell_padding", s.cell_padding}};
}

RenderStyle style_from_json(const Json& j) {
  RenderStyle s;
  s.line_width = j.at("line_width").get<int>();
  s.separator_visibility_prob = j.at("separator_visibility_prob").get<double>();
  s.word_gap = j.at("word_gap").get<int>();
  s.cell_padding = j.at("cell_padding").get<int>();
  return s;
}

}  // namespace

std::string to_string(Split s) { return s == Split::train ? "train" : "test"; }

Split parse_split(std::string_view s) {
  if (s == "train") return Split::train;
  if (s == "test") return Split::test;
  throw FormatError("unknown split '" + std::string(s) + "'");
}

std::uint64_t sample_seed(std::uint64_t seed, Split split, std::string_view config_name, int index) {
  return derive_seed(seed, {split == Split::train ? 1ULL : 2ULL, name_hash(config_name), static_cast<std::uint64_t>(index)});
}

bool scan_matches_skeleton(const TableGenotype& g, const TableConfig& config, const RenderStyle& style,
                           std::uint64_t scan_seed, const PageSpec& page) {
  TableConfig no_text = config;
  no_text.words_per_cell = {0, 0};
  const RasterImage skeleton = render_skeleton(g, page, style);
  const RasterImage lines = render_scan(g, no_text, style, scan_seed, page);
  const RasterImage scan = render_scan(g, config, style, scan_seed, page);
  const auto sk = skeleton.pixels();
  const auto ln = lines.pixels();
  const auto sc = scan.pixels();
  for (std::size_t i = 0; i < sk.size(); ++i) {
    if (ln[i] == 0.0 && sk[i] != 0.0) return false;
    if (sk[i] == 0.0 && sc[i] != ln[i]) return false;
  }
  return true;
}

DatasetManifest generate_dataset(const std::vector<DatasetEntry>& entries, const std::filesystem::path& out_dir,
                                 std::uint64_t seed, const DatasetOptions& options) {
  validate(options.style);
  DatasetManifest m;
  m.seed = seed;
  m.split = options.split;
  m.page = options.page;
  m.style = options.style;
  m.configs = entries;

  struct Job {
    const TableConfig* config;
    int index;
  };
  std::vector<Job> jobs;
  for (const auto& e : entries) {
    if (e.count < 0) throw InfeasibleConfig("negative sample count for '" + e.config.name + "'");
    validate(e.config, options.page);
    for (int i = 0; i < e.count; ++i) jobs.push_back({&e.config, i});
  }
  m.samples.resize(jobs.size());

  std::filesystem::create_directories(out_dir);
  parallel_for(jobs.size(), options.jobs, [&](std::size_t k) {
    const Job& job = jobs[k];
    const std::string& name = job.config->name;
    const std::uint64_t s = sample_seed(seed, options.split, name, job.index);
    const TableGenotype g = sample_genotype(*job.config, derive_seed(s, {0}), options.page);
    const std::uint64_t scan_seed = derive_seed(s, {1});

    SampleRecord rec;
    rec.id = sample_id(job.index);
    rec.config = name;
    rec.seed = s;
    rec.scan = name + "/" + rec.id + ".scan.png";
    rec.skeleton = name + "/" + rec.id + ".skel.png";
    rec.genotype = name + "/" + rec.id + ".genotype.json";
    write_png_gray(out_dir / rec.scan, render_scan(g, *job.config, options.style, scan_seed, options.page));
    write_png_gray(out_dir / rec.skeleton, render_skeleton(g, options.page, options.style));
    write_json_atomic(out_dir / rec.genotype, genotype_to_json(g));
    if (options.verify_every > 0 && job.index % options.verify_every == 0 &&
        !scan_matches_skeleton(g, *job.config, options.style, scan_seed, options.page)) {
      throw Error("scan/skeleton divider geometry mismatch for " + rec.scan);
    }
    m.samples[k] = std::move(rec);
  });

  write_json_atomic(out_dir / "manifest.json", manifest_to_json(m));
  return m;
}

Json manifest_to_json(const DatasetManifest& m) {
  Json configs = Json::array();
  for (const auto& e : m.configs) {
    configs.push_back({{"name", e.config.name}, {"count", e.count}, {"config", config_to_json(e.config)}});
  }
  Json samples = Json::array();
  for (const auto& s : m.samples) {
    samples.push_back({{"id", s.id},
                       {"config", s.config},
                       {"seed", s.seed},
                       {"scan", s.scan},
                       {"skeleton", s.skeleton},
                       {"genotype", s.genotype}});
  }
  return Json{{"seed", m.seed},
              {"split", to_string(m.split)},
              {"page", {{"width", m.page.width}, {"height", m.page.height}, {"model_resolution", m.page.model_resolution}}},
              {"style", style_to_json(m.style)},
              {"configs", configs},
              {"samples", samples}};
}

DatasetManifest manifest_from_json(const Json& j) {
  try {
    DatasetManifest m;
    m.seed = j.at("seed").get<std::uint64_t>();
    m.split = parse_split(j.at("split").get<std::string>());
    const Json& page = j.at("page");
    m.page = {page.at("width").get<int>(), page.at("height").get<int>(), page.at("model_resolution").get<int>()};
    m.style = style_from_json(j.at("style"));
    for (const auto& c : j.at("configs")) {
      m.configs.push_back({config_from_json(c.at("config"), c.at("name").get<std::string>()), c.at("count").get<int>()});
    }
    for (const auto& s : j.at("samples")) {
      m.samples.push_back({s.at("id").get<std::string>(), s.at("config").get<std::string>(),
                           s.at("seed").get<std::uint64_t>(), s.at("scan").get<std::string>(),
                           s.at("skeleton").get<std::string>(), s.at("genotype").get<std::string>()});
    }
    return m;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
}

DatasetManifest load_manifest(const std::filesystem::path& dataset_dir) {
  return manifest_from_json(read_json_file(dataset_dir / "manifest.json"));
}

TableGenotype load_sample_genotype(const std::filesystem::path& dataset_dir, const SampleRecord& s) {
  return genotype_from_json(read_json_file(dataset_dir / s.genotype));
}

}  // namespace tabstruct
