#include "tabstruct/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tabstruct/errors.hpp"

namespace tabstruct {

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed, std::string_view what) {
  if (!j.is_object()) throw FormatError(std::string(what) + ": expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw FormatError(std::string(what) + ": unknown key '" + key + "'");
  }
}

Json range_to_json(const IntRange& r) { return Json::array({r.min, r.max}); }

IntRange range_from_json(const Json& j, std::string_view key) {
  if (j.is_number_integer()) return {j.get<int>(), j.get<int>()};
  if (!j.is_array() || j.size() != 2) {
    throw FormatError("range '" + std::string(key) + "' must be an integer or a [min, max] pair");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

Json genotype_to_json(const TableGenotype& g) {
  return Json{{"n", g.max_rows()},           {"m", g.max_cols()},
              {"x0", g.x0},                  {"y0", g.y0},
              {"row_heights", g.row_heights}, {"col_widths", g.col_widths}};
}

TableGenotype genotype_from_json(const Json& j) {
  reject_unknown(j, {"n", "m", "x0", "y0", "row_heights", "col_widths"}, "genotype");
  try {
    TableGenotype g;
    g.x0 = j.at("x0").get<int>();
    g.y0 = j.at("y0").get<int>();
    g.row_heights = j.at("row_heights").get<std::vector<int>>();
    g.col_widths = j.at("col_widths").get<std::vector<int>>();
    if (j.at("n").get<int>() != g.max_rows() || j.at("m").get<int>() != g.max_cols()) {
      throw FormatError("genotype: n/m disagree with row_heights/col_widths lengths");
    }
    for (int v : g.row_heights)
      if (v < 0) throw FormatError("genotype: negative row height");
    for (int v : g.col_widths)
      if (v < 0) throw FormatError("genotype: negative column width");
    return g;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("genotype: ") + e.what());
  }
}

Json config_to_json(const TableConfig& c) {
  return Json{{"rows", range_to_json(c.rows)},
              {"cols", range_to_json(c.cols)},
              {"x_offset", range_to_json(c.x_offset)},
              {"y_offset", range_to_json(c.y_offset)},
              {"row_height", range_to_json(c.row_height)},
              {"col_width", range_to_json(c.col_width)},
              {"word_len", range_to_json(c.word_len)},
              {"words_per_cell", range_to_json(c.words_per_cell)},
              {"font_size", c.font_size},
              {"font", to_string(c.font)},
              {"alignment", to_string(c.alignment)}};
}

TableConfig config_from_json(const Json& j, const std::string& name) {
  reject_unknown(j,
                 {"extends", "rows", "cols", "x_offset", "y_offset", "row_height", "col_width", "word_len",
                  "words_per_cell", "font_size", "font", "alignment"},
                 "config '" + name + "'");
  try {
    TableConfig c = j.contains("extends") ? preset(j.at("extends").get<std::string>()) : TableConfig{};
    c.name = name;
    auto range = [&](const char* key, IntRange& dst) {
      if (j.contains(key)) dst = range_from_json(j.at(key), key);
    };
    range("rows", c.rows);
    range("cols", c.cols);
    range("x_offset", c.x_offset);
    range("y_offset", c.y_offset);
    range("row_height", c.row_height);
    range("col_width", c.col_width);
    range("word_len", c.word_len);
    range("words_per_cell", c.words_per_cell);
    if (j.contains("font_size")) c.font_size = j.at("font_size").get<int>();
    if (j.contains("font")) c.font = parse_font_family(j.at("font").get<std::string>());
    if (j.contains("alignment")) c.alignment = parse_alignment(j.at("alignment").get<std::string>());
    return c;
  } catch (const Json::exception& e) {
    throw FormatError("config '" + name + "': " + e.what());
  }
}

std::map<std::string, TableConfig> load_config_presets(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  if (!j.is_object()) throw FormatError(path.string() + ": expected an object keyed by configuration name");
  std::map<std::string, TableConfig> out;
  for (const auto& [key, value] : j.items()) {
    std::string name = key;
    for (char& c : name) {
      if (c == ' ' || c == '-') c = '_';
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    Json v = value;
    // A bare built-in name inherits that preset.
    if (!v.contains("extends")) {
      try {
        preset(name);
        v["extends"] = name;
      } catch (const InfeasibleConfig&) {
      }
    }
    out.emplace(name, config_from_json(v, name));
  }
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp.string());
    out << text;
    if (!out) throw FormatError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_json_atomic(const std::filesystem::path& path, const Json& j) { write_text_atomic(path, j.dump(2) + "\n"); }

}  // namespace tabstruct
