#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tabstruct/genotype.hpp"
#include "tabstruct/json_io.hpp"

namespace tabstruct {

/// Differences between a true and a predicted genotype. Count errors are
/// signed (true - predicted); the rest are absolute pixel differences.
/// Width, height and divider lists compare index-aligned prefixes of the
/// canonical forms, up to the shorter length.
struct StructureErrors {
  int row_count_error = 0;
  int col_count_error = 0;
  int x0_abs_error = 0;
  int y0_abs_error = 0;
  std::vector<int> col_width_abs_errors;
  std::vector<int> row_height_abs_errors;
  /// x dividers followed by y dividers.
  std::vector<int> divider_abs_errors;
};

StructureErrors compare(const TableGenotype& truth, const TableGenotype& pred);

struct MeanStd {
  double mean = 0.0;
  /// Population standard deviation.
  double std = 0.0;
  long count = 0;
};

MeanStd mean_std(std::span<const double> values);

struct Histogram {
  std::string metric;
  double bin_width = 1.0;
  /// Bin index -> count; bin k covers [k * bin_width, (k + 1) * bin_width).
  std::map<long, long> counts;
};

struct EvalReport {
  std::string config;
  std::string stage;
  long n_samples = 0;
  double pct_correct_row_count = 0.0;
  double pct_correct_col_count = 0.0;
  MeanStd row_count_error;
  MeanStd col_count_error;
  MeanStd x0_error;
  MeanStd y0_error;
  /// Pooled over every aligned column / row / divider of every sample.
  MeanStd col_width_error;
  MeanStd row_height_error;
  MeanStd divider_position_error;
  std::vector<Histogram> histograms;
};

/// Throws std::invalid_argument for an empty list.
EvalReport aggregate(std::span<const StructureErrors> errors, std::string config = "", std::string stage = "");

Json report_to_json(const EvalReport& r);
/// One row per report: config, stage, sample count, then mean/std columns.
std::string reports_to_csv(std::span<const EvalReport> reports);
/// Long format: config, stage, metric, bin_lo, bin_hi, count.
std::string histograms_to_csv(std::span<const EvalReport> reports);
/// Fixed-width text table, one column per report and one row per metric.
std::string format_summary(std::span<const EvalReport> reports);

}  // namespace tabstruct
