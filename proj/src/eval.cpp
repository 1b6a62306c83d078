#include "tabstruct/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tabstruct {

namespace {

std::vector<int> prefix_abs_diff(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::abs(a[i] - b[i]));
  return out;
}

Histogram histogram(std::string metric, double bin_width, const std::vector<double>& values) {
  Histogram h{std::move(metric), bin_width, {}};
  for (double v : values) ++h.counts[static_cast<long>(std::floor(v / bin_width))];
  return h;
}

Json mean_std_json(const MeanStd& m) { return Json{{"mean", m.mean}, {"std", m.std}, {"count", m.count}}; }

std::string fmt(double v, int precision = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

}  // namespace

StructureErrors compare(const TableGenotype& truth, const TableGenotype& pred) {
  const TableGenotype t = canonicalize(truth);
  const TableGenotype p = canonicalize(pred);
  StructureErrors e;
  e.row_count_error = t.effective_rows() - p.effective_rows();
  e.col_count_error = t.effective_cols() - p.effective_cols();
  e.x0_abs_error = std::abs(t.x0 - p.x0);
  e.y0_abs_error = std::abs(t.y0 - p.y0);
  e.col_width_abs_errors = prefix_abs_diff(t.col_widths, p.col_widths);
  e.row_height_abs_errors = prefix_abs_diff(t.row_heights, p.row_heights);
  const Dividers dt = divider_positions(t);
  const Dividers dp = divider_positions(p);
  e.divider_abs_errors = prefix_abs_diff(dt.x, dp.x);
  const auto dy = prefix_abs_diff(dt.y, dp.y);
  e.divider_abs_errors.insert(e.divider_abs_errors.end(), dy.begin(), dy.end());
  return e;
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd m;
  m.count = static_cast<long>(values.size());
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - m.mean) * (v - m.mean);
  m.std = std::sqrt(ss / static_cast<double>(values.size()));
  return m;
}

EvalReport aggregate(std::span<const StructureErrors> errors, std::string config, std::string stage) {
  if (errors.empty()) throw std::invalid_argument("aggregate needs at least one sample");
  std::vector<double> rows, cols, x0, y0, widths, heights, dividers;
  long correct_rows = 0;
  long correct_cols = 0;
  for (const auto& e : errors) {
    rows.push_back(e.row_count_error);
    cols.push_back(e.col_count_error);
    x0.push_back(e.x0_abs_error);
    y0.push_back(e.y0_abs_error);
    widths.insert(widths.end(), e.col_width_abs_errors.begin(), e.col_width_abs_errors.end());
    heights.insert(heights.end(), e.row_height_abs_errors.begin(), e.row_height_abs_errors.end());
    dividers.insert(dividers.end(), e.divider_abs_errors.begin(), e.divider_abs_errors.end());
    correct_rows += e.row_count_error == 0;
    correct_cols += e.col_count_error == 0;
  }
  EvalReport r;
  r.config = std::move(config);
  r.stage = std::move(stage);
  r.n_samples = static_cast<long>(errors.size());
  r.pct_correct_row_count = 100.0 * static_cast<double>(correct_rows) / static_cast<double>(r.n_samples);
  r.pct_correct_col_count = 100.0 * static_cast<double>(correct_cols) / static_cast<double>(r.n_samples);
  r.row_count_error = mean_std(rows);
  r.col_count_error = mean_std(cols);
  r.x0_error = mean_std(x0);
  r.y0_error = mean_std(y0);
  r.col_width_error = mean_std(widths);
  r.row_height_error = mean_std(heights);
  r.divider_position_error = mean_std(dividers);
  r.histograms = {histogram("row_count_error", 1.0, rows),  histogram("col_count_error", 1.0, cols),
                  histogram("x0_error", 2.0, x0),           histogram("y0_error", 2.0, y0),
                  histogram("col_width_error", 2.0, widths), histogram("row_height_error", 2.0, heights)};
  return r;
}

Json report_to_json(const EvalReport& r) {
  Json hist = Json::object();
  for (const auto& h : r.histograms) {
    Json bins = Json::array();
    for (const auto& [bin, count] : h.counts) {
      bins.push_back({{"lo", static_cast<double>(bin) * h.bin_width}, {"hi", static_cast<double>(bin + 1) * h.bin_width}, {"count", count}});
    }
    hist[h.metric] = {{"bin_width", h.bin_width}, {"bins", bins}};
  }
  return Json{{"config", r.config},
              {"stage", r.stage},
              {"n_samples", r.n_samples},
              {"pct_correct_row_count", r.pct_correct_row_count},
              {"pct_correct_col_count", r.pct_correct_col_count},
              {"row_count_error", mean_std_json(r.row_count_error)},
              {"col_count_error", mean_std_json(r.col_count_error)},
              {"x0_error", mean_std_json(r.x0_error)},
              {"y0_error", mean_std_json(r.y0_error)},
              {"col_width_error", mean_std_json(r.col_width_error)},
              {"row_height_error", mean_std_json(r.row_height_error)},
              {"divider_position_error", mean_std_json(r.divider_position_error)},
              {"width_height_alignment", "index-aligned prefix of canonical sequences"},
              {"histograms", hist}};
}

std::string reports_to_csv(std::span<const EvalReport> reports) {
  std::ostringstream out;
  out.precision(10);
  out << "config,stage,n_samples,pct_correct_row_count,pct_correct_col_count,"
         "row_count_error_mean,row_count_error_std,col_count_error_mean,col_count_error_std,"
         "x0_error_mean,x0_error_std,y0_error_mean,y0_error_std,col_width_error_mean,col_width_error_std,"
         "row_height_error_mean,row_height_error_std,divider_position_error_mean,divider_position_error_std\n";
  for (const auto& r : reports) {
    out << r.config << ',' << r.stage << ',' << r.n_samples << ',' << r.pct_correct_row_count << ','
        << r.pct_correct_col_count;
    for (const MeanStd* m : {&r.row_count_error, &r.col_count_error, &r.x0_error, &r.y0_error, &r.col_width_error,
                             &r.row_height_error, &r.divider_position_error}) {
      out << ',' << m->mean << ',' << m->std;
    }
    out << '\n';
  }
  return out.str();
}

std::string histograms_to_csv(std::span<const EvalReport> reports) {
  std::ostringstream out;
  out << "config,stage,metric,bin_lo,bin_hi,count\n";
  for (const auto& r : reports) {
    for (const auto& h : r.histograms) {
      for (const auto& [bin, count] : h.counts) {
        out << r.config << ',' << r.stage << ',' << h.metric << ',' << static_cast<double>(bin) * h.bin_width << ','
            << static_cast<double>(bin + 1) * h.bin_width << ',' << count << '\n';
      }
    }
  }
  return out.str();
}

std::string format_summary(std::span<const EvalReport> reports) {
  using Cell = std::function<std::string(const EvalReport&)>;
  auto ms = [](const MeanStd& m) { return fmt(m.mean, 1) + " (" + fmt(m.std, 1) + ")"; };
  const std::vector<std::pair<std::string, Cell>> rows = {
      {"% correct row count", [](const EvalReport& r) { return fmt(r.pct_correct_row_count, 1); }},
      {"% correct column count", [](const EvalReport& r) { return fmt(r.pct_correct_col_count, 1); }},
      {"Error in row number", [&](const EvalReport& r) { return ms(r.row_count_error); }},
      {"Error in column number", [&](const EvalReport& r) { return ms(r.col_count_error); }},
      {"Error in x0, px", [&](const EvalReport& r) { return ms(r.x0_error); }},
      {"Error in y0, px", [&](const EvalReport& r) { return ms(r.y0_error); }},
      {"Error in col. width, px", [&](const EvalReport& r) { return ms(r.col_width_error); }},
      {"Error in row height, px", [&](const EvalReport& r) { return ms(r.row_height_error); }},
      {"Samples", [](const EvalReport& r) { return std::to_string(r.n_samples); }},
  };
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-26s", "Metric");
  out << buf;
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, " | %-20s", (r.stage.empty() ? r.config : r.stage + ":" + r.config).c_str());
    out << buf;
  }
  out << '\n';
  for (const auto& [label, cell] : rows) {
    std::snprintf(buf, sizeof buf, "%-26s", label.c_str());
    out << buf;
    for (const auto& r : reports) {
      std::snprintf(buf, sizeof buf, " | %-20s", cell(r).c_str());
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace tabstruct
