#include "tabstruct/table_config.hpp"

#include <algorithm>
#include <cctype>

#include "tabstruct/errors.hpp"
#include "tabstruct/rng.hpp"

namespace tabstruct {

namespace {

std::string normalize_name(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == ' ' || c == '-') {
      out.push_back('_');
    } else {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

TableConfig make_base() { return TableConfig{}; }

std::vector<TableConfig> build_presets() {
  std::vector<TableConfig> out;
  auto add = [&](std::string name, auto&& tweak) {
    TableConfig c = make_base();
    c.name = std::move(name);
    tweak(c);
    out.push_back(c);
  };
  add("base", [](TableConfig&) {});
  add("font_1", [](TableConfig& c) { c.font = FontFamily::serif; });
  add("font_2", [](TableConfig& c) { c.font = FontFamily::mono; });
  add("larger_font_1", [](TableConfig& c) { c.font_size = 14; });
  add("larger_font_2", [](TableConfig& c) { c.font_size = 18; });
  add("smaller_font", [](TableConfig& c) { c.font_size = 6; });
  add("skinny_long_cells", [](TableConfig& c) {
    c.row_height = {20, 20};
    c.col_width = {120, 200};
    c.words_per_cell = {3, 7};
  });
  add("short_cells", [](TableConfig& c) {
    c.rows = {4, 10};
    c.cols = {4, 10};
    c.row_height = {20, 20};
    c.col_width = {40, 60};
    c.word_len = {1, 4};
    c.words_per_cell = {1, 1};
  });
  add("align_left", [](TableConfig& c) { c.alignment = Alignment::left; });
  add("align_right", [](TableConfig& c) { c.alignment = Alignment::right; });
  return out;
}

void check_range(const IntRange& r, std::string_view what, const std::string& config) {
  if (r.min < 0 || r.min > r.max) {
    throw InfeasibleConfig("config '" + config + "': range " + std::string(what) + " [" + std::to_string(r.min) +
                           ", " + std::to_string(r.max) + "] is empty or negative");
  }
}

struct AxisDraw {
  int origin = 0;
  std::vector<int> sizes;
};

// Redraws the whole axis (count, offset, sizes) until the closing border fits.
AxisDraw draw_axis(Rng& rng, const IntRange& count, const IntRange& offset, const IntRange& size, int slots,
                   int page_extent, const std::string& config, std::string_view axis) {
  for (int attempt = 0; attempt < kFitAttempts; ++attempt) {
    AxisDraw d;
    const int n = uniform_int(rng, count.min, count.max);
    d.origin = uniform_int(rng, offset.min, offset.max);
    d.sizes.assign(static_cast<std::size_t>(slots), 0);
    int extent = 0;
    for (int i = 0; i < n; ++i) {
      d.sizes[static_cast<std::size_t>(i)] = uniform_int(rng, size.min, size.max);
      extent += d.sizes[static_cast<std::size_t>(i)];
    }
    if (d.origin + extent <= page_extent - 1) return d;
  }
  throw InfeasibleConfig("config '" + config + "': no " + std::string(axis) + " draw fit the page in " +
                         std::to_string(kFitAttempts) + " attempts");
}

}  // namespace

const std::vector<TableConfig>& table_presets() {
  static const std::vector<TableConfig> presets = build_presets();
  return presets;
}

TableConfig preset(std::string_view name) {
  const std::string key = normalize_name(name);
  for (const auto& c : table_presets()) {
    if (c.name == key) return c;
  }
  throw InfeasibleConfig("unknown table configuration '" + std::string(name) + "'");
}

std::string display_name(std::string_view name) {
  std::string out(name);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::string to_string(Alignment a) {
  switch (a) {
    case Alignment::left: return "left";
    case Alignment::center: return "center";
    case Alignment::right: return "right";
  }
  return "center";
}

std::string to_string(FontFamily f) {
  switch (f) {
    case FontFamily::sans: return "sans";
    case FontFamily::serif: return "serif";
    case FontFamily::mono: return "mono";
  }
  return "sans";
}

Alignment parse_alignment(std::string_view s) {
  const std::string k = normalize_name(s);
  if (k == "left") return Alignment::left;
  if (k == "center" || k == "centre") return Alignment::center;
  if (k == "right") return Alignment::right;
  throw InfeasibleConfig("unknown alignment '" + std::string(s) + "'");
}

FontFamily parse_font_family(std::string_view s) {
  const std::string k = normalize_name(s);
  if (k == "sans" || k == "arial") return FontFamily::sans;
  if (k == "serif" || k == "new_roman" || k == "times_new_roman") return FontFamily::serif;
  if (k == "mono" || k == "courier") return FontFamily::mono;
  throw InfeasibleConfig("unknown font family '" + std::string(s) + "'");
}

void validate(const TableConfig& c, const PageSpec& page, int max_rows, int max_cols) {
  check_range(c.rows, "rows", c.name);
  check_range(c.cols, "cols", c.name);
  check_range(c.x_offset, "x_offset", c.name);
  check_range(c.y_offset, "y_offset", c.name);
  check_range(c.row_height, "row_height", c.name);
  check_range(c.col_width, "col_width", c.name);
  check_range(c.word_len, "word_len", c.name);
  check_range(c.words_per_cell, "words_per_cell", c.name);
  if (c.rows.min < 1 || c.cols.min < 1) throw InfeasibleConfig("config '" + c.name + "': tables need >= 1 row and column");
  if (c.row_height.min < 1 || c.col_width.min < 1) {
    throw InfeasibleConfig("config '" + c.name + "': row heights and column widths must be >= 1 px");
  }
  if (c.rows.max > max_rows || c.cols.max > max_cols) {
    throw InfeasibleConfig("config '" + c.name + "': cardinality exceeds the " + std::to_string(max_rows) + "x" +
                           std::to_string(max_cols) + " slot capacity");
  }
  if (c.font_size < 1) throw InfeasibleConfig("config '" + c.name + "': font size must be positive");
  const int min_w = c.x_offset.min + c.cols.min * c.col_width.min;
  const int min_h = c.y_offset.min + c.rows.min * c.row_height.min;
  if (min_w > page.width - 1 || min_h > page.height - 1) {
    throw InfeasibleConfig("config '" + c.name + "': smallest table (" + std::to_string(min_w) + "x" +
                           std::to_string(min_h) + " incl. offset) does not fit a " + std::to_string(page.width) +
                           "x" + std::to_string(page.height) + " page");
  }
}

TableGenotype sample_genotype(const TableConfig& config, std::uint64_t seed, const PageSpec& page, int max_rows,
                              int max_cols) {
  validate(config, page, max_rows, max_cols);
  Rng rng(seed);
  const AxisDraw rows =
      draw_axis(rng, config.rows, config.y_offset, config.row_height, max_rows, page.height, config.name, "row");
  const AxisDraw cols =
      draw_axis(rng, config.cols, config.x_offset, config.col_width, max_cols, page.width, config.name, "column");
  return {cols.origin, rows.origin, rows.sizes, cols.sizes};
}

}  // namespace tabstruct
