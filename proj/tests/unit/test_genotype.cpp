#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tabstruct/errors.hpp"
#include "tabstruct/genotype.hpp"

using namespace tabstruct;

TEST_CASE("divider positions are prefix sums from the origin") {
  const TableGenotype g{10, 20, {30, 40}, {5, 6, 7}};
  const auto d = divider_positions(g);
  CHECK(d.x == std::vector<int>{10, 15, 21, 28});
  CHECK(d.y == std::vector<int>{20, 50, 90});
}

TEST_CASE("zero-size slots are unused and canonicalize strips them") {
  const TableGenotype g{3, 4, {0, 12, 0, 8, 0}, {9, 0, 0}};
  CHECK(g.max_rows() == 5);
  CHECK(g.effective_rows() == 2);
  CHECK(g.effective_cols() == 1);
  CHECK(g.table_height() == 20);
  const auto c = canonicalize(g);
  CHECK(c.row_heights == std::vector<int>{12, 8});
  CHECK(c.col_widths == std::vector<int>{9});
  CHECK(structurally_equal(g, c));
  CHECK_FALSE(structurally_equal(g, TableGenotype{3, 4, {8, 12}, {9}}));
}

TEST_CASE("canonicalize is idempotent and keeps dividers on random padded genotypes") {
  std::mt19937_64 rng(11);
  std::bernoulli_distribution zero(0.3);
  for (int t = 0; t < 500; ++t) {
    TableGenotype g = testing::random_table(rng);
    for (auto& h : g.row_heights)
      if (zero(rng)) h = 0;
    g.col_widths.insert(g.col_widths.begin() + 1, 0);
    const auto c = canonicalize(g);
    CHECK(canonicalize(c) == c);
    CHECK(divider_positions(c) == divider_positions(g));
    CHECK(c.effective_rows() == g.effective_rows());
  }
}

TEST_CASE("a blank genotype has no rows or no columns") {
  CHECK(TableGenotype{}.is_blank());
  CHECK(TableGenotype{0, 0, {0, 0}, {5}}.is_blank());
  CHECK_FALSE(TableGenotype{0, 0, {1}, {1}}.is_blank());
}

TEST_CASE("the closing border must lie on the page") {
  const PageSpec page;
  TableGenotype g{0, 0, {841}, {594}};
  CHECK(fits_page(g, page));
  g.col_widths = {595};
  CHECK_FALSE(fits_page(g, page));
  g = {10, 0, {841}, {584}};
  CHECK(fits_page(g, page));
  g.x0 = 11;
  CHECK_FALSE(fits_page(g, page));
  CHECK_FALSE(fits_page(TableGenotype{-1, 0, {5}, {5}}, page));
  CHECK_FALSE(fits_page(TableGenotype{0, 0, {5, -2}, {5}}, page));
  CHECK_THROWS_AS(validate(TableGenotype{0, 0, {900}, {5}}, page), InvalidGenotype);
  CHECK_NOTHROW(validate(TableGenotype{0, 0, {5}, {5}}, page));
}
