#include "tabstruct/bitmap_font.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

namespace tabstruct {

namespace {

constexpr int kSrcW = 5;
constexpr int kSrcH = 7;

// One byte per row, bit 4 = leftmost column.
constexpr std::array<std::array<std::uint8_t, kSrcH>, 26> kGlyphs{{
    {0x00, 0x00, 0x0E, 0x01, 0x0F, 0x11, 0x0F},  // a
    {0x10, 0x10, 0x16, 0x19, 0x11, 0x11, 0x1E},  // b
    {0x00, 0x00, 0x0E, 0x10, 0x10, 0x11, 0x0E},  // c
    {0x01, 0x01, 0x0D, 0x13, 0x11, 0x11, 0x0F},  // d
    {0x00, 0x00, 0x0E, 0x11, 0x1F, 0x10, 0x0E},  // e
    {0x06, 0x09, 0x08, 0x1C, 0x08, 0x08, 0x08},  // f
    {0x00, 0x0F, 0x11, 0x11, 0x0F, 0x01, 0x0E},  // g
    {0x10, 0x10, 0x16, 0x19, 0x11, 0x11, 0x11},  // h
    {0x04, 0x00, 0x0C, 0x04, 0x04, 0x04, 0x0E},  // i
    {0x02, 0x00, 0x06, 0x02, 0x02, 0x12, 0x0C},  // j
    {0x10, 0x10, 0x12, 0x14, 0x18, 0x14, 0x12},  // k
    {0x0C, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E},  // l
    {0x00, 0x00, 0x1A, 0x15, 0x15, 0x11, 0x11},  // m
    {0x00, 0x00, 0x16, 0x19, 0x11, 0x11, 0x11},  // n
    {0x00, 0x00, 0x0E, 0x11, 0x11, 0x11, 0x0E},  // o
    {0x00, 0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10},  // p
    {0x00, 0x0F, 0x11, 0x11, 0x0F, 0x01, 0x01},  // q
    {0x00, 0x00, 0x16, 0x19, 0x10, 0x10, 0x10},  // r
    {0x00, 0x00, 0x0E, 0x10, 0x0E, 0x01, 0x1E},  // s
    {0x08, 0x08, 0x1C, 0x08, 0x08, 0x09, 0x06},  // t
    {0x00, 0x00, 0x11, 0x11, 0x11, 0x13, 0x0D},  // u
    {0x00, 0x00, 0x11, 0x11, 0x11, 0x0A, 0x04},  // v
    {0x00, 0x00, 0x11, 0x11, 0x15, 0x15, 0x0A},  // w
    {0x00, 0x00, 0x11, 0x0A, 0x04, 0x0A, 0x11},  // x
    {0x00, 0x11, 0x11, 0x11, 0x0F, 0x01, 0x0E},  // y
    {0x00, 0x00, 0x1F, 0x02, 0x04, 0x08, 0x1F},  // z
}};

bool src_bit(char c, int sx, int sy) {
  if (c < 'a' || c > 'z' || sx < 0 || sx >= kSrcW || sy < 0 || sy >= kSrcH) return false;
  return (kGlyphs[static_cast<std::size_t>(c - 'a')][static_cast<std::size_t>(sy)] >> (kSrcW - 1 - sx)) & 1U;
}

}  // namespace

GlyphMetrics glyph_metrics(FontFamily family, int font_size) {
  const int size = std::max(1, font_size);
  GlyphMetrics m;
  m.height = size;
  m.line_gap = std::max(1, size / 4);
  switch (family) {
    case FontFamily::sans:
      m.width = std::max(1, static_cast<int>(std::lround(0.6 * size)));
      m.advance = m.width + std::max(1, size / 8);
      break;
    case FontFamily::serif:
      // Narrow and heavier.
      m.width = std::max(1, static_cast<int>(std::lround(0.5 * size)));
      m.advance = m.width + std::max(1, size / 10);
      m.weight = size >= 10 ? 1 : 0;
      break;
    case FontFamily::mono:
      // Fixed wide cells with loose tracking.
      m.width = std::max(1, static_cast<int>(std::lround(0.6 * size)));
      m.advance = std::max(m.width + 1, static_cast<int>(std::lround(0.85 * size)));
      break;
  }
  return m;
}

bool glyph_ink(char c, const GlyphMetrics& m, int px, int py) {
  if (px < 0 || py < 0 || px >= m.width + m.weight || py >= m.height) return false;
  const int sy = py * kSrcH / m.height;
  for (int dx = 0; dx <= m.weight; ++dx) {
    const int x = px - dx;
    if (x < 0 || x >= m.width) continue;
    if (src_bit(c, x * kSrcW / m.width, sy)) return true;
  }
  return false;
}

}  // namespace tabstruct
