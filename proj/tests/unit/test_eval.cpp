#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tabstruct/eval.hpp"

using namespace tabstruct;

TEST_CASE("identical genotypes have zero errors") {
  const TableGenotype g{10, 20, {30, 40}, {50, 60, 70}};
  const auto e = compare(g, g);
  CHECK(e.row_count_error == 0);
  CHECK(e.col_count_error == 0);
  CHECK(e.x0_abs_error == 0);
  CHECK(e.col_width_abs_errors == std::vector<int>{0, 0, 0});
  CHECK(e.divider_abs_errors == std::vector<int>(7, 0));
}

TEST_CASE("count errors are true minus predicted") {
  const TableGenotype truth{0, 0, {10, 10, 10, 10}, {20}};
  const TableGenotype pred{3, 5, {10, 10, 20}, {20}};
  const auto e = compare(truth, pred);
  CHECK(e.row_count_error == 1);
  CHECK(e.x0_abs_error == 3);
  CHECK(e.y0_abs_error == 5);
  CHECK(e.row_height_abs_errors == std::vector<int>{0, 0, 10});
}

TEST_CASE("splitting a column gives -1 and prefix-aligned width errors") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto truth = canonicalize(testing::random_table(rng));
    auto pred = truth;
    const std::size_t j = static_cast<std::size_t>(t) % pred.col_widths.size();
    const int w = pred.col_widths[j];
    pred.col_widths[j] = w / 2;
    pred.col_widths.insert(pred.col_widths.begin() + static_cast<std::ptrdiff_t>(j) + 1, w - w / 2);
    const auto e = compare(truth, pred);
    CHECK(e.col_count_error == -1);
    REQUIRE(e.col_width_abs_errors.size() == truth.col_widths.size());
    for (std::size_t i = 0; i < j; ++i) CHECK(e.col_width_abs_errors[i] == 0);
    CHECK(e.col_width_abs_errors[j] == w - w / 2);
  }
}

TEST_CASE("swapping truth and prediction negates counts and keeps origin errors") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto a = testing::random_table(rng), b = testing::random_table(rng);
    const auto ab = compare(a, b), ba = compare(b, a);
    CHECK(ab.row_count_error == -ba.row_count_error);
    CHECK(ab.col_count_error == -ba.col_count_error);
    CHECK(ab.x0_abs_error == ba.x0_abs_error);
    CHECK(ab.y0_abs_error == ba.y0_abs_error);
  }
}

TEST_CASE("aggregate: perfect runs and hand-computed statistics") {
  std::vector<StructureErrors> zero(5);
  const auto r = aggregate(zero, "base", "ga");
  CHECK(r.pct_correct_row_count == 100.0);
  CHECK(r.pct_correct_col_count == 100.0);
  CHECK(r.row_count_error.mean == 0.0);
  CHECK(r.row_count_error.std == 0.0);
  CHECK(r.n_samples == 5);

  std::vector<StructureErrors> two(2);
  two[0].row_count_error = 1;
  two[1].row_count_error = -1;
  two[0].x0_abs_error = 4;
  const auto s = aggregate(two);
  CHECK(s.row_count_error.mean == 0.0);
  CHECK(s.row_count_error.std == 1.0);
  CHECK(s.pct_correct_row_count == 0.0);
  CHECK(s.x0_error.mean == 2.0);
  CHECK(s.x0_error.std == 2.0);

  CHECK_THROWS(aggregate(std::vector<StructureErrors>{}));
}

TEST_CASE("aggregate mean of count errors is the exact arithmetic mean") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(-3, 3);
  std::vector<StructureErrors> errs(1000);
  long sum = 0;
  int zeros = 0;
  for (auto& e : errs) {
    e.col_count_error = u(rng);
    sum += e.col_count_error;
    zeros += e.col_count_error == 0;
  }
  const auto r = aggregate(errs);
  CHECK(r.col_count_error.mean == static_cast<double>(sum) / 1000.0);
  CHECK(r.pct_correct_col_count == doctest::Approx(zeros / 10.0));
}

TEST_CASE("histograms bin counts by 1 and geometry by 2 px") {
  std::vector<StructureErrors> errs(3);
  errs[0].row_count_error = -1;
  errs[1].x0_abs_error = 3;
  errs[2].x0_abs_error = 2;
  const auto r = aggregate(errs);
  const Histogram* rows = nullptr;
  const Histogram* x0 = nullptr;
  for (const auto& h : r.histograms) {
    if (h.metric == "row_count_error") rows = &h;
    if (h.metric == "x0_error") x0 = &h;
  }
  REQUIRE(rows);
  REQUIRE(x0);
  CHECK(rows->bin_width == 1.0);
  CHECK(rows->counts.at(-1) == 1);
  CHECK(rows->counts.at(0) == 2);
  CHECK(x0->bin_width == 2.0);
  CHECK(x0->counts.at(1) == 2);
  CHECK(x0->counts.at(0) == 1);
}

TEST_CASE("reports serialise to JSON, CSV and a summary table") {
  std::vector<StructureErrors> errs(4);
  errs[0].row_count_error = 1;
  std::vector<EvalReport> reports{aggregate(errs, "base", "ga"), aggregate(errs, "short_cells", "initial")};
  const auto j = report_to_json(reports[0]);
  CHECK(j.at("pct_correct_row_count") == 75.0);
  CHECK(j.at("n_samples") == 4);
  CHECK(j.at("histograms").contains("row_count_error"));

  const auto csv = reports_to_csv(reports);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.find("short_cells,initial,4,") != std::string::npos);
  const auto hist = histograms_to_csv(reports);
  CHECK(hist.find("base,ga,row_count_error") != std::string::npos);
  const auto summary = format_summary(reports);
  CHECK(summary.find("% correct row count") != std::string::npos);
  CHECK(summary.find("75.0") != std::string::npos);
}
