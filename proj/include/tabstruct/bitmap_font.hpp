#pragma once

#include "tabstruct/table_config.hpp"

namespace tabstruct {

/// Pixel metrics of a scaled glyph from the embedded 5x7 lowercase font.
struct GlyphMetrics {
  int width = 0;
  int height = 0;
  /// Horizontal distance between the left edges of consecutive glyphs.
  int advance = 0;
  /// Extra horizontal stroke thickening (0 = hairline).
  int weight = 0;
  int line_gap = 0;
};

/// Metrics for a font family at a pixel size (glyph height == size).
GlyphMetrics glyph_metrics(FontFamily family, int font_size);

/// True if pixel (px, py) of glyph `c` scaled to `m` is ink. Characters
/// outside 'a'..'z' have no ink.
bool glyph_ink(char c, const GlyphMetrics& m, int px, int py);

}  // namespace tabstruct
