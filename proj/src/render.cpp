#include "tabstruct/render.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "tabstruct/bitmap_font.hpp"
#include "tabstruct/rng.hpp"

namespace tabstruct {

namespace {

// Integer overlap weights between `target` output bins and source pixels of
// a padded axis of length `square`; only the first `extent` source pixels
// exist (the rest is white padding). In units where a source pixel spans
// `target` and an output pixel spans `square`, so a full output pixel
// accumulates square * square.
struct AxisWeights {
  struct Tap {
    int source;
    std::int64_t weight;
  };
  std::vector<std::vector<Tap>> taps;
};

AxisWeights axis_weights(int square, int target, int extent) {
  AxisWeights w;
  w.taps.resize(static_cast<std::size_t>(target));
  for (int i = 0; i < target; ++i) {
    const std::int64_t lo = static_cast<std::int64_t>(i) * square;
    const std::int64_t hi = lo + square;
    const int k_begin = static_cast<int>(lo / target);
    const int k_end = static_cast<int>((hi + target - 1) / target);
    for (int k = k_begin; k < k_end && k < extent; ++k) {
      const std::int64_t s_lo = static_cast<std::int64_t>(k) * target;
      const std::int64_t s_hi = s_lo + target;
      const std::int64_t overlap = std::min(hi, s_hi) - std::max(lo, s_lo);
      if (overlap > 0) w.taps[static_cast<std::size_t>(i)].push_back({k, overlap});
    }
  }
  return w;
}

// Coverage of a 0/1 mask per output bin, in AxisWeights units.
std::vector<std::int64_t> bin_mask(const AxisWeights& w, const std::vector<std::uint8_t>& mask) {
  std::vector<std::int64_t> out(w.taps.size(), 0);
  for (std::size_t i = 0; i < w.taps.size(); ++i) {
    for (const auto& tap : w.taps[i]) {
      if (mask[static_cast<std::size_t>(tap.source)]) out[i] += tap.weight;
    }
  }
  return out;
}

double to_intensity(double accumulated_darkness, double full) {
  return std::clamp(1.0 - accumulated_darkness / full, 0.0, 1.0);
}

void mark(std::vector<std::uint8_t>& mask, int begin, int end) {
  const int lo = std::max(begin, 0);
  const int hi = std::min(end, static_cast<int>(mask.size()));
  for (int i = lo; i < hi; ++i) mask[static_cast<std::size_t>(i)] = 1;
}

struct TextLine {
  std::vector<std::string> words;
  int width = 0;
};

int word_width(const std::string& word, const GlyphMetrics& m) {
  if (word.empty()) return 0;
  return static_cast<int>(word.size() - 1) * m.advance + m.width + m.weight;
}

std::vector<TextLine> wrap_words(const std::vector<std::string>& words, const GlyphMetrics& m, int gap,
                                 int available) {
  std::vector<TextLine> lines;
  for (const auto& w : words) {
    const int ww = word_width(w, m);
    if (lines.empty() || (lines.back().width + gap + ww > available && !lines.back().words.empty())) {
      lines.push_back({});
    }
    TextLine& line = lines.back();
    line.width += (line.words.empty() ? 0 : gap) + ww;
    line.words.push_back(w);
  }
  return lines;
}

struct Rect {
  int x0, y0, x1, y1;  // half-open
};

void draw_cell_text(RasterImage& img, const std::vector<std::string>& words, const GlyphMetrics& m,
                    Alignment align, int gap, const Rect& layout, const Rect& clip) {
  const int avail_w = layout.x1 - layout.x0;
  const int avail_h = layout.y1 - layout.y0;
  const auto lines = wrap_words(words, m, gap, avail_w);
  if (lines.empty()) return;
  const int block_h = static_cast<int>(lines.size()) * m.height + static_cast<int>(lines.size() - 1) * m.line_gap;
  int y = layout.y0 + std::max(0, (avail_h - block_h) / 2);
  for (const auto& line : lines) {
    int x = layout.x0;
    if (align == Alignment::center) x = layout.x0 + (avail_w - line.width) / 2;
    if (align == Alignment::right) x = layout.x1 - line.width;
    for (const auto& word : line.words) {
      for (std::size_t ci = 0; ci < word.size(); ++ci) {
        const int gx = x + static_cast<int>(ci) * m.advance;
        for (int py = 0; py < m.height; ++py) {
          const int yy = y + py;
          if (yy < clip.y0 || yy >= clip.y1) continue;
          for (int px = 0; px < m.width + m.weight; ++px) {
            const int xx = gx + px;
            if (xx < clip.x0 || xx >= clip.x1) continue;
            if (glyph_ink(word[ci], m, px, py)) img.at(xx, yy) = 0.0;
          }
        }
      }
      x += word_width(word, m) + gap;
    }
    y += m.height + m.line_gap;
  }
}

}  // namespace

void validate(const RenderStyle& style) {
  if (style.line_width < 1) throw std::invalid_argument("line_width must be >= 1");
  if (!(style.separator_visibility_prob >= 0.0 && style.separator_visibility_prob <= 1.0)) {
    throw std::invalid_argument("separator_visibility_prob must be in [0, 1]");
  }
  if (style.word_gap < 0 || style.cell_padding < 0) throw std::invalid_argument("spacings must be non-negative");
}

std::vector<LineSegment> grid_lines(const Dividers& d, int line_width) {
  std::vector<LineSegment> out;
  if (d.x.size() < 2 || d.y.size() < 2) return out;
  const int x_begin = d.x.front();
  const int x_end = d.x.back() + line_width;
  const int y_begin = d.y.front();
  const int y_end = d.y.back() + line_width;
  for (int y : d.y) out.push_back({true, y, x_begin, x_end});
  for (int x : d.x) out.push_back({false, x, y_begin, y_end});
  return out;
}

RasterImage rasterize_segments(const std::vector<LineSegment>& segments, const PageSpec& page, int line_width) {
  RasterImage img(page.width, page.height, 1.0);
  for (const auto& s : segments) {
    if (s.horizontal) {
      img.fill_rect(s.begin, s.position, s.end - s.begin, line_width, 0.0);
    } else {
      img.fill_rect(s.position, s.begin, line_width, s.end - s.begin, 0.0);
    }
  }
  return img;
}

RasterImage render_skeleton(const TableGenotype& g, const PageSpec& page, const RenderStyle& style) {
  return rasterize_segments(grid_lines(divider_positions(g), style.line_width), page, style.line_width);
}

RasterImage render_scan(const TableGenotype& g, const TableConfig& config, const RenderStyle& style,
                        std::uint64_t seed, const PageSpec& page) {
  validate(style);
  Rng rng(seed);
  const Dividers d = divider_positions(g);
  const int lw = style.line_width;
  RasterImage img(page.width, page.height, 1.0);
  if (d.x.size() < 2 || d.y.size() < 2) return img;

  std::vector<LineSegment> visible;
  for (const auto& line : grid_lines(d, lw)) {
    if (chance(rng, style.separator_visibility_prob)) visible.push_back(line);
  }
  for (const auto& s : visible) {
    if (s.horizontal) {
      img.fill_rect(s.begin, s.position, s.end - s.begin, lw, 0.0);
    } else {
      img.fill_rect(s.position, s.begin, lw, s.end - s.begin, 0.0);
    }
  }

  const GlyphMetrics m = glyph_metrics(config.font, config.font_size);
  std::uniform_int_distribution<int> letter('a', 'z');
  for (std::size_t r = 0; r + 1 < d.y.size(); ++r) {
    for (std::size_t c = 0; c + 1 < d.x.size(); ++c) {
      const int n_words = uniform_int(rng, config.words_per_cell.min, config.words_per_cell.max);
      std::vector<std::string> words;
      for (int w = 0; w < n_words; ++w) {
        const int len = uniform_int(rng, config.word_len.min, config.word_len.max);
        std::string word;
        for (int k = 0; k < len; ++k) word.push_back(static_cast<char>(letter(rng)));
        words.push_back(std::move(word));
      }
      const Rect clip{d.x[c] + lw, d.y[r] + lw, d.x[c + 1], d.y[r + 1]};
      const Rect layout{clip.x0 + style.cell_padding, clip.y0 + style.cell_padding, clip.x1 - style.cell_padding,
                        clip.y1 - style.cell_padding};
      if (layout.x1 - layout.x0 < m.width || layout.y1 - layout.y0 < m.height) continue;
      draw_cell_text(img, words, m, config.alignment, style.word_gap, layout, clip);
    }
  }
  return img;
}

RasterImage resize(const RasterImage& img, int target) {
  const int square = std::max(img.width(), img.height());
  const AxisWeights wx = axis_weights(square, target, img.width());
  const AxisWeights wy = axis_weights(square, target, img.height());
  const double full = static_cast<double>(square) * static_cast<double>(square);

  // Horizontal pass on darkness, then vertical.
  std::vector<double> tmp(static_cast<std::size_t>(img.height()) * static_cast<std::size_t>(target), 0.0);
  for (int y = 0; y < img.height(); ++y) {
    for (int c = 0; c < target; ++c) {
      double acc = 0.0;
      for (const auto& tap : wx.taps[static_cast<std::size_t>(c)]) {
        acc += static_cast<double>(tap.weight) * (1.0 - img.at(tap.source, y));
      }
      tmp[static_cast<std::size_t>(y) * static_cast<std::size_t>(target) + static_cast<std::size_t>(c)] = acc;
    }
  }
  RasterImage out(target, target, 1.0);
  for (int r = 0; r < target; ++r) {
    for (int c = 0; c < target; ++c) {
      double acc = 0.0;
      for (const auto& tap : wy.taps[static_cast<std::size_t>(r)]) {
        acc += static_cast<double>(tap.weight) *
               tmp[static_cast<std::size_t>(tap.source) * static_cast<std::size_t>(target) + static_cast<std::size_t>(c)];
      }
      out.at(c, r) = to_intensity(acc, full);
    }
  }
  return out;
}

RasterImage render_skeleton_resized(const TableGenotype& g, const PageSpec& page, const RenderStyle& style) {
  const ModelTransform tf = ModelTransform::for_page(page);
  const int target = tf.target;
  RasterImage out(target, target, 1.0);
  const Dividers d = divider_positions(g);
  if (d.x.size() < 2 || d.y.size() < 2) return out;
  const int lw = style.line_width;

  // Separable masks: horizontal-line rows, vertical-line columns, and the
  // table's extent along each axis.
  std::vector<std::uint8_t> h_rows(static_cast<std::size_t>(page.height), 0);
  std::vector<std::uint8_t> t_rows(static_cast<std::size_t>(page.height), 0);
  std::vector<std::uint8_t> v_cols(static_cast<std::size_t>(page.width), 0);
  std::vector<std::uint8_t> t_cols(static_cast<std::size_t>(page.width), 0);
  for (int y : d.y) mark(h_rows, y, y + lw);
  for (int x : d.x) mark(v_cols, x, x + lw);
  mark(t_rows, d.y.front(), d.y.back() + lw);
  mark(t_cols, d.x.front(), d.x.back() + lw);

  const AxisWeights wx = axis_weights(tf.square, target, page.width);
  const AxisWeights wy = axis_weights(tf.square, target, page.height);
  const auto hy = bin_mask(wy, h_rows);
  const auto ty = bin_mask(wy, t_rows);
  const auto vx = bin_mask(wx, v_cols);
  const auto tx = bin_mask(wx, t_cols);
  const double full = static_cast<double>(tf.square) * static_cast<double>(tf.square);

  // Union of (h_rows x t_cols) and (t_rows x v_cols); their intersection is
  // h_rows x v_cols because lines lie inside the table extent.
  for (int r = 0; r < target; ++r) {
    const std::int64_t h = hy[static_cast<std::size_t>(r)];
    const std::int64_t t = ty[static_cast<std::size_t>(r)];
    if (t == 0) continue;
    for (int c = 0; c < target; ++c) {
      const std::int64_t v = vx[static_cast<std::size_t>(c)];
      const std::int64_t num = h * tx[static_cast<std::size_t>(c)] + t * v - h * v;
      if (num != 0) out.at(c, r) = to_intensity(static_cast<double>(num), full);
    }
  }
  return out;
}

}  // namespace tabstruct
