#include <doctest.h>

#include <fstream>
#include <map>

#include "support.hpp"
#include "tabstruct/errors.hpp"
#include "tabstruct/json_io.hpp"
#include "tabstruct/table_config.hpp"

using namespace tabstruct;

TEST_CASE("preset table covers the ten table configurations") {
  const std::vector<std::string> names{"base",         "font_1",        "font_2",          "larger_font_1",
                                       "larger_font_2", "smaller_font", "skinny_long_cells", "short_cells",
                                       "align_left",   "align_right"};
  REQUIRE(table_presets().size() == names.size());
  for (std::size_t i = 0; i < names.size(); ++i) CHECK(table_presets()[i].name == names[i]);

  const auto base = preset("base");
  CHECK(base.rows == IntRange{2, 6});
  CHECK(base.cols == IntRange{2, 6});
  CHECK(base.row_height == IntRange{40, 90});
  CHECK(base.col_width == IntRange{70, 100});
  CHECK(base.font_size == 10);
  CHECK(base.alignment == Alignment::center);

  const auto sc = preset("Short cells");
  CHECK(sc.name == "short_cells");
  CHECK(sc.rows.max == 10);
  CHECK(sc.words_per_cell == IntRange{1, 1});
  CHECK(preset("larger-font-2").font_size == 18);
  CHECK(preset("smaller_font").font_size == 6);
  CHECK(preset("align_right").alignment == Alignment::right);
  CHECK(display_name("skinny_long_cells") == "skinny long cells");
  CHECK_THROWS_AS(preset("huge"), InfeasibleConfig);
}

TEST_CASE("10,000 draws per preset stay within every configured range") {
  const PageSpec page;
  for (const auto& c : table_presets()) {
    CAPTURE(c.name);
    int failures = 0;
    for (std::uint64_t s = 0; s < 10000; ++s) {
      const auto g = sample_genotype(c, s, page);
      bool ok = g.max_rows() == kMaxCardinality && g.max_cols() == kMaxCardinality;
      ok = ok && c.rows.contains(g.effective_rows()) && c.cols.contains(g.effective_cols());
      ok = ok && c.x_offset.contains(g.x0) && c.y_offset.contains(g.y0) && fits_page(g, page);
      // Used slots come first and carry sizes from the configured range.
      for (int i = 0; i < g.max_rows(); ++i) {
        const int h = g.row_heights[static_cast<std::size_t>(i)];
        ok = ok && (i < g.effective_rows() ? c.row_height.contains(h) : h == 0);
      }
      for (int j = 0; j < g.max_cols(); ++j) {
        const int w = g.col_widths[static_cast<std::size_t>(j)];
        ok = ok && (j < g.effective_cols() ? c.col_width.contains(w) : w == 0);
      }
      failures += !ok;
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("sampling is a pure function of the seed") {
  const auto c = preset("base");
  CHECK(sample_genotype(c, 42) == sample_genotype(c, 42));
  int differing = 0;
  for (std::uint64_t s = 0; s < 50; ++s) differing += !(sample_genotype(c, s) == sample_genotype(c, s + 1000));
  CHECK(differing >= 45);
}

TEST_CASE("draws reach both ends of the count ranges") {
  const auto c = preset("base");
  std::map<int, int> rows;
  for (std::uint64_t s = 0; s < 2000; ++s) rows[sample_genotype(c, s).effective_rows()]++;
  CHECK(rows.size() == 5);
  CHECK(rows.begin()->first == 2);
  CHECK(rows.rbegin()->first == 6);
}

TEST_CASE("configurations that cannot fit the page are rejected") {
  TableConfig c = preset("base");
  c.rows = {12, 12};
  CHECK_THROWS_AS(sample_genotype(c, 1), InfeasibleConfig);
  c = preset("base");
  c.col_width = {300, 300};
  CHECK_THROWS_AS(sample_genotype(c, 1), InfeasibleConfig);
  c = preset("base");
  c.row_height = {90, 50};
  CHECK_THROWS_AS(sample_genotype(c, 1), InfeasibleConfig);
  // Feasible only for a small share of draws: rejection sampling still lands.
  c = preset("base");
  c.cols = {2, 6};
  c.col_width = {95, 140};
  for (std::uint64_t s = 0; s < 200; ++s) CHECK(fits_page(sample_genotype(c, s), PageSpec{}));
}

TEST_CASE("genotype and configuration JSON round trip") {
  const TableGenotype g{7, 8, {10, 20, 0}, {30}};
  const auto j = genotype_to_json(g);
  CHECK(j.at("n").get<int>() == 3);
  CHECK(j.at("m").get<int>() == 1);
  CHECK(genotype_from_json(j) == g);
  auto bad = j;
  bad["extra"] = 1;
  CHECK_THROWS_AS(genotype_from_json(bad), FormatError);
  bad = j;
  bad["n"] = 2;
  CHECK_THROWS_AS(genotype_from_json(bad), FormatError);

  for (const auto& c : table_presets()) CHECK(config_from_json(config_to_json(c), c.name) == c);
}

TEST_CASE("presets file entries extend built-in presets") {
  testing::TempDir dir("presets");
  std::ofstream(dir / "p.json") << R"({"tall": {"extends": "short_cells", "rows": [3, 5], "font_size": 12},
                                      "plain": {"cols": 3}})";
  const auto m = load_config_presets(dir / "p.json");
  REQUIRE(m.size() == 2);
  const auto& tall = m.at("tall");
  CHECK(tall.name == "tall");
  CHECK(tall.rows == IntRange{3, 5});
  CHECK(tall.col_width == preset("short_cells").col_width);
  CHECK(tall.font_size == 12);
  CHECK(m.at("plain").cols == IntRange{3, 3});
  CHECK(m.at("plain").row_height == preset("base").row_height);

  std::ofstream(dir / "bad.json") << R"({"x": {"rowz": 3}})";
  CHECK_THROWS_AS(load_config_presets(dir / "bad.json"), FormatError);
}
