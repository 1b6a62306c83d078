#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "tabstruct/genotype.hpp"
#include "tabstruct/table_config.hpp"

namespace tabstruct {

using Json = nlohmann::json;

/// Flat genotype object {n, m, x0, y0, row_heights[], col_widths[]}.
Json genotype_to_json(const TableGenotype& g);
/// Throws FormatError on missing/unknown keys or n, m inconsistent with the
/// vector lengths.
TableGenotype genotype_from_json(const Json& j);

Json config_to_json(const TableConfig& c);
/// Every field is optional and defaults to the base preset; unknown keys are
/// rejected.
TableConfig config_from_json(const Json& j, const std::string& name);

/// Preset file: an object keyed by configuration name. Keys may use display
/// names ("larger font 2"); a value may set "extends" to start from a built-in
/// preset instead of base.
std::map<std::string, TableConfig> load_config_presets(const std::filesystem::path& path);

Json read_json_file(const std::filesystem::path& path);
/// Writes via a temporary file and rename, so readers never see partial output.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);
void write_json_atomic(const std::filesystem::path& path, const Json& j);

}  // namespace tabstruct
