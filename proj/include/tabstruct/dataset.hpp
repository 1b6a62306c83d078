#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tabstruct/genotype.hpp"
#include "tabstruct/json_io.hpp"
#include "tabstruct/render.hpp"
#include "tabstruct/table_config.hpp"

namespace tabstruct {

enum class Split { train, test };

std::string to_string(Split s);
Split parse_split(std::string_view s);

struct DatasetEntry {
  TableConfig config;
  int count = 0;
};

/// Paths are relative to the dataset root.
struct SampleRecord {
  std::string id;
  std::string config;
  std::uint64_t seed = 0;
  std::string scan;
  std::string skeleton;
  std::string genotype;
};

struct DatasetManifest {
  std::uint64_t seed = 0;
  Split split = Split::train;
  PageSpec page;
  RenderStyle style;
  std::vector<DatasetEntry> configs;
  std::vector<SampleRecord> samples;
};

struct DatasetOptions {
  Split split = Split::train;
  PageSpec page;
  RenderStyle style;
  int jobs = 1;
  /// Every n-th sample is re-rendered to check that scan separators lie on
  /// skeleton lines; 0 disables the check.
  int verify_every = 25;
};

/// Seed of sample `index` of `config_name`. The split is part of the
/// derivation, so train and test seeds never coincide for the same base seed.
std::uint64_t sample_seed(std::uint64_t seed, Split split, std::string_view config_name, int index);

/// Writes <out>/<config>/<id>.scan.png, <id>.skel.png, <id>.genotype.json
/// for every sample and <out>/manifest.json. Ids are zero-padded indices.
DatasetManifest generate_dataset(const std::vector<DatasetEntry>& entries, const std::filesystem::path& out_dir,
                                 std::uint64_t seed, const DatasetOptions& options = {});

/// True when every drawn scan separator pixel is black in the skeleton and
/// the scan agrees with its separator-only rendering on all skeleton pixels.
bool scan_matches_skeleton(const TableGenotype& g, const TableConfig& config, const RenderStyle& style,
                           std::uint64_t scan_seed, const PageSpec& page = {});

Json manifest_to_json(const DatasetManifest& m);
DatasetManifest manifest_from_json(const Json& j);
DatasetManifest load_manifest(const std::filesystem::path& dataset_dir);

/// Reads the sidecar genotype of a sample.
TableGenotype load_sample_genotype(const std::filesystem::path& dataset_dir, const SampleRecord& s);

}  // namespace tabstruct
