#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "tabstruct/errors.hpp"
#include "tabstruct/png_io.hpp"
#include "tabstruct/render.hpp"
#include "tabstruct/table_config.hpp"

using namespace tabstruct;

namespace {

std::set<std::pair<int, int>> black_pixels(const RasterImage& img) {
  std::set<std::pair<int, int>> out;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      if (img.at(x, y) < 0.5) out.insert({x, y});
  return out;
}

// Area average computed with real-valued interval overlaps.
RasterImage reference_resize(const RasterImage& img, int target) {
  const int s = std::max(img.width(), img.height());
  const double scale = static_cast<double>(s) / target;
  RasterImage out(target, target, 1.0);
  for (int oy = 0; oy < target; ++oy) {
    for (int ox = 0; ox < target; ++ox) {
      double dark = 0.0;
      for (int y = 0; y < img.height(); ++y) {
        const double wy = std::max(0.0, std::min((oy + 1) * scale, y + 1.0) - std::max(oy * scale, double(y)));
        if (wy <= 0) continue;
        for (int x = 0; x < img.width(); ++x) {
          const double wx = std::max(0.0, std::min((ox + 1) * scale, x + 1.0) - std::max(ox * scale, double(x)));
          dark += wx * wy * (1.0 - img.at(x, y));
        }
      }
      out.at(ox, oy) = 1.0 - dark / (scale * scale);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("a 1x1 table renders as its four border lines") {
  const TableGenotype g{10, 20, {30}, {40}};
  const auto img = render_skeleton(g);
  CHECK(img.width() == 595);
  CHECK(img.height() == 842);
  CHECK(img.is_binary());
  CHECK(black_pixels(img) == testing::skeleton_pixels(g, 1));
  CHECK(black_pixels(img).size() == 2 * 41 + 2 * 31 - 4);
}

TEST_CASE("skeleton ink matches the analytic line-area count on random tables") {
  std::mt19937_64 rng(5);
  for (int lw : {1, 2, 3}) {
    RenderStyle style;
    style.line_width = lw;
    for (int t = 0; t < 100; ++t) {
      const auto g = testing::random_table(rng);
      const auto img = render_skeleton(g, {}, style);
      const auto px = black_pixels(img);
      REQUIRE(img.is_binary());
      CHECK(px == testing::skeleton_pixels(g, lw));
      const long n = g.effective_rows(), m = g.effective_cols();
      const long w = g.table_width() + lw, h = g.table_height() + lw;
      const long expected = (n + 1) * w * lw + (m + 1) * h * lw - (n + 1) * (m + 1) * lw * lw;
      CHECK(static_cast<long>(px.size()) == expected);
    }
  }
}

TEST_CASE("unused slots do not change the rendering") {
  const TableGenotype padded{5, 6, {0, 20, 0, 30}, {40, 0}};
  CHECK(render_skeleton(padded) == render_skeleton(canonicalize(padded)));
  CHECK(render_skeleton(TableGenotype{5, 6, {0, 0}, {10}}).all_white());
}

TEST_CASE("grid lines count n+1 horizontal and m+1 vertical") {
  const TableGenotype g{0, 0, {10, 10, 10}, {20, 20}};
  const auto lines = grid_lines(divider_positions(g), 1);
  int h = 0, v = 0;
  for (const auto& l : lines) (l.horizontal ? h : v)++;
  CHECK(h == 4);
  CHECK(v == 3);
}

TEST_CASE("scan degenerates to the skeleton without text and with every separator shown") {
  TableConfig c = preset("base");
  c.words_per_cell = {0, 0};
  RenderStyle style;
  style.separator_visibility_prob = 1.0;
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    const auto g = testing::random_table(rng);
    CHECK(render_scan(g, c, style, 99, {}) == render_skeleton(g));
  }
}

TEST_CASE("scan with hidden separators carries text only, inside cells") {
  const auto c = preset("base");
  RenderStyle style;
  style.separator_visibility_prob = 0.0;
  const TableGenotype g{30, 40, {60, 60}, {100, 100}};
  const auto scan = render_scan(g, c, style, 3);
  const auto lines = testing::skeleton_pixels(g, 1);
  const auto ink = black_pixels(scan);
  CHECK_FALSE(ink.empty());
  for (const auto& p : ink) CHECK_FALSE(lines.contains(p));
  for (const auto& [x, y] : ink) {
    CHECK(x > g.x0);
    CHECK(x < g.x0 + 200);
    CHECK(y > g.y0);
    CHECK(y < g.y0 + 120);
  }
}

TEST_CASE("scan rendering is deterministic and agrees with the skeleton on line pixels") {
  std::mt19937_64 rng(21);
  for (const auto& c : table_presets()) {
    CAPTURE(c.name);
    const auto g = testing::random_table(rng);
    const auto a = render_scan(g, c, {}, 1234);
    CHECK(a == render_scan(g, c, {}, 1234));
    CHECK_FALSE(a == render_scan(g, c, {}, 1235));
    const auto skeleton = black_pixels(render_skeleton(g));
    const auto d = divider_positions(g);
    // Anything dark on a divider row/column must be skeleton ink.
    for (const auto& [x, y] : black_pixels(a)) {
      const bool on_line = std::find(d.x.begin(), d.x.end(), x) != d.x.end() ||
                           std::find(d.y.begin(), d.y.end(), y) != d.y.end();
      if (on_line) CHECK(skeleton.contains({x, y}));
    }
  }
}

TEST_CASE("cells too small for a glyph stay empty") {
  auto c = preset("larger_font_2");
  RenderStyle style;
  style.separator_visibility_prob = 0.0;
  const TableGenotype g{10, 10, {8, 8}, {8, 8}};
  CHECK(render_scan(g, c, style, 1).all_white());
}

TEST_CASE("resize: white stays white, a centred 2x2 block becomes one dark pixel") {
  CHECK(resize(RasterImage(595, 842, 1.0)).all_white());
  RasterImage img(512, 512, 1.0);
  img.fill_rect(256, 256, 2, 2, 0.0);
  const auto r = resize(img, 256);
  REQUIRE(r.width() == 256);
  for (int y = 0; y < 256; ++y)
    for (int x = 0; x < 256; ++x) CHECK(r.at(x, y) == (x == 128 && y == 128 ? 0.0 : 1.0));
}

TEST_CASE("resize preserves mean intensity for padding-free power-of-two scales") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RasterImage img(512, 512);
  for (double& v : img.pixels()) v = u(rng);
  const auto r = resize(img, 256);
  double a = 0, b = 0;
  for (double v : img.pixels()) a += v;
  for (double v : r.pixels()) b += v;
  CHECK(std::abs(a / img.size() - b / r.size()) < 1e-6);
}

TEST_CASE("resize matches a real-valued area-average reference, including padding") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto [w, h, t] : {std::tuple{7, 5, 3}, std::tuple{59, 84, 25}, std::tuple{30, 30, 7}}) {
    RasterImage img(w, h);
    for (double& v : img.pixels()) v = u(rng);
    const auto a = resize(img, t);
    const auto b = reference_resize(img, t);
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.pixels()[i] - b.pixels()[i]));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("analytic resized skeleton is bit-identical to resizing the page rendering") {
  std::mt19937_64 rng(9);
  for (int lw : {1, 2, 4}) {
    RenderStyle style;
    style.line_width = lw;
    for (int t = 0; t < 40; ++t) {
      const auto g = testing::random_table(rng);
      CHECK(render_skeleton_resized(g, {}, style) == resize(render_skeleton(g, {}, style), 256));
    }
  }
  CHECK(render_skeleton_resized(TableGenotype{}).all_white());
}

TEST_CASE("model-to-page transform inverts the resize for a one-pixel line") {
  const ModelTransform tf = ModelTransform::for_page(PageSpec{});
  CHECK(tf.square == 842);
  for (int p = 0; p < 590; p += 7) {
    RasterImage img(595, 842, 1.0);
    img.fill_rect(p, 0, 1, 842, 0.0);
    const auto r = resize(img, 256);
    double mass = 0, moment = 0;
    for (int x = 0; x < 256; ++x) {
      const double d = 1.0 - r.at(x, 0);
      mass += d;
      moment += d * x;
    }
    CHECK(std::abs(tf.to_page(moment / mass, 1) - p) <= 0.5 * tf.scale());
  }
}

TEST_CASE("PNG round trip of 8-bit intensities") {
  testing::TempDir dir("png");
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> u(0, 255);
  RasterImage img(37, 23);
  for (double& v : img.pixels()) v = u(rng) / 255.0;
  write_png_gray(dir / "a.png", img);
  const auto back = read_png_gray(dir / "a.png");
  REQUIRE(back.width() == 37);
  REQUIRE(back.height() == 23);
  for (std::size_t i = 0; i < img.size(); ++i) CHECK(back.pixels()[i] == doctest::Approx(img.pixels()[i]).epsilon(1e-12));
}

TEST_CASE("PNG reader rejects missing, corrupt and colour files") {
  testing::TempDir dir("pngbad");
  CHECK_THROWS_AS(read_png_gray(dir / "missing.png"), FormatError);
  std::ofstream(dir / "junk.png") << "definitely not a png";
  CHECK_THROWS_AS(read_png_gray(dir / "junk.png"), FormatError);
  RasterImage img(16, 16, 1.0);
  write_png_gray(dir / "ok.png", img);
  auto bytes = testing::slurp(dir / "ok.png");
  bytes.resize(bytes.size() / 2);
  std::ofstream(dir / "trunc.png", std::ios::binary) << bytes;
  CHECK_THROWS_AS(read_png_gray(dir / "trunc.png"), FormatError);
  write_png_overlay(dir / "rgb.png", img, img);
  CHECK_THROWS_AS(read_png_gray(dir / "rgb.png"), FormatError);
}
