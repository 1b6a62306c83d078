#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tabstruct/genotype.hpp"

namespace tabstruct {

struct IntRange {
  int min = 0;
  int max = 0;

  bool contains(int v) const { return v >= min && v <= max; }
  bool operator==(const IntRange&) const = default;
};

enum class Alignment { left, center, right };

/// Font families of the generator presets. They map onto width/weight
/// variants of the embedded bitmap font.
enum class FontFamily { sans, serif, mono };

/// Random table generator parameter ranges. Offsets and sizes are page px.
struct TableConfig {
  std::string name = "base";
  IntRange rows{2, 6};
  IntRange cols{2, 6};
  IntRange x_offset{0, 70};
  IntRange y_offset{0, 70};
  IntRange row_height{40, 90};
  IntRange col_width{70, 100};
  IntRange word_len{5, 9};
  IntRange words_per_cell{2, 4};
  int font_size = 10;
  FontFamily font = FontFamily::sans;
  Alignment alignment = Alignment::center;

  bool operator==(const TableConfig&) const = default;
};

/// Slot capacity used when sampling genotypes.
inline constexpr int kMaxCardinality = 10;

/// Number of whole-axis redraws before a sample is declared unplaceable.
inline constexpr int kFitAttempts = 100;

/// The ten generator presets, in table order: base, font_1, font_2,
/// larger_font_1, larger_font_2, smaller_font, skinny_long_cells,
/// short_cells, align_left, align_right.
const std::vector<TableConfig>& table_presets();

/// Looks up a preset by name. Accepts the snake_case name or the display
/// form ("larger font 2", "Short cells"). Throws InfeasibleConfig if unknown.
TableConfig preset(std::string_view name);

/// Display label ("larger font 2") for a snake_case preset name.
std::string display_name(std::string_view name);

std::string to_string(Alignment a);
std::string to_string(FontFamily f);
Alignment parse_alignment(std::string_view s);
FontFamily parse_font_family(std::string_view s);

/// Throws InfeasibleConfig if a range is empty or negative, the row/column
/// maximum exceeds the slot capacity, or the smallest table cannot fit the page.
void validate(const TableConfig& config, const PageSpec& page = {}, int max_rows = kMaxCardinality,
              int max_cols = kMaxCardinality);

/// Draws a genotype uniformly over the feasible region of `config`.
///
/// Each axis is drawn independently: count, then offset, then one size per
/// row or column. An axis whose draw does not fit the page is redrawn in
/// full, up to kFitAttempts times. Slots past the drawn count are zero.
TableGenotype sample_genotype(const TableConfig& config, std::uint64_t seed, const PageSpec& page = {},
                              int max_rows = kMaxCardinality, int max_cols = kMaxCardinality);

}  // namespace tabstruct
