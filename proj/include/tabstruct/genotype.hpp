#pragma once

#include <cstddef>
#include <vector>

namespace tabstruct {

/// Page geometry. Genotypes live in page pixel coordinates; model images are
/// square at `model_resolution`.
struct PageSpec {
  int width = 595;
  int height = 842;
  int model_resolution = 256;

  bool operator==(const PageSpec&) const = default;
};

/// Latent table structure.
///
/// The slot counts (`max_rows()`, `max_cols()`) are the vector lengths. A
/// zero height or width marks an absent row or column, so a genotype sampled
/// with capacity 10x10 for a 3x4 table carries 7 and 6 trailing zeros.
struct TableGenotype {
  int x0 = 0;
  int y0 = 0;
  std::vector<int> row_heights;
  std::vector<int> col_widths;

  int max_rows() const { return static_cast<int>(row_heights.size()); }
  int max_cols() const { return static_cast<int>(col_widths.size()); }
  int effective_rows() const;
  int effective_cols() const;
  /// Sum of positive column widths.
  int table_width() const;
  /// Sum of positive row heights.
  int table_height() const;
  bool is_blank() const { return effective_rows() == 0 || effective_cols() == 0; }

  bool operator==(const TableGenotype&) const = default;
};

/// Absolute divider coordinates in page pixels. A divider at `x` is drawn
/// as the pixel columns [x, x + line_width).
struct Dividers {
  std::vector<int> x;
  std::vector<int> y;

  bool operator==(const Dividers&) const = default;
};

/// Prefix sums of the positive widths/heights starting at the origin.
/// Lengths are effective_cols()+1 and effective_rows()+1.
Dividers divider_positions(const TableGenotype& g);

/// Drops zero-size rows and columns. Divider positions are unchanged.
TableGenotype canonicalize(const TableGenotype& g);

/// Two genotypes describe the same table.
bool structurally_equal(const TableGenotype& a, const TableGenotype& b);

/// Page-fit rule: the origin is on the page and the closing border line
/// (drawn at x0 + table_width) still lies inside it, i.e.
/// x0 + table_width <= width - 1, and analogously for rows.
bool fits_page(const TableGenotype& g, const PageSpec& page);

/// Non-negative entries and page fit; throws InvalidGenotype otherwise.
void validate(const TableGenotype& g, const PageSpec& page);

}  // namespace tabstruct
