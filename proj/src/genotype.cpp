#include "tabstruct/genotype.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "tabstruct/errors.hpp"

namespace tabstruct {

namespace {

int count_positive(const std::vector<int>& v) {
  return static_cast<int>(std::count_if(v.begin(), v.end(), [](int x) { return x > 0; }));
}

int sum_positive(const std::vector<int>& v) {
  return std::accumulate(v.begin(), v.end(), 0, [](int acc, int x) { return x > 0 ? acc + x : acc; });
}

std::vector<int> prefix_dividers(int origin, const std::vector<int>& sizes) {
  std::vector<int> out{origin};
  for (int s : sizes) {
    if (s > 0) out.push_back(out.back() + s);
  }
  return out;
}

std::vector<int> strip_zeros(const std::vector<int>& v) {
  std::vector<int> out;
  std::copy_if(v.begin(), v.end(), std::back_inserter(out), [](int x) { return x > 0; });
  return out;
}

}  // namespace

int TableGenotype::effective_rows() const { return count_positive(row_heights); }
int TableGenotype::effective_cols() const { return count_positive(col_widths); }
int TableGenotype::table_width() const { return sum_positive(col_widths); }
int TableGenotype::table_height() const { return sum_positive(row_heights); }

Dividers divider_positions(const TableGenotype& g) {
  return {prefix_dividers(g.x0, g.col_widths), prefix_dividers(g.y0, g.row_heights)};
}

TableGenotype canonicalize(const TableGenotype& g) {
  return {g.x0, g.y0, strip_zeros(g.row_heights), strip_zeros(g.col_widths)};
}

bool structurally_equal(const TableGenotype& a, const TableGenotype& b) {
  return canonicalize(a) == canonicalize(b);
}

bool fits_page(const TableGenotype& g, const PageSpec& page) {
  if (g.x0 < 0 || g.y0 < 0) return false;
  for (int h : g.row_heights)
    if (h < 0) return false;
  for (int w : g.col_widths)
    if (w < 0) return false;
  return g.x0 + g.table_width() <= page.width - 1 && g.y0 + g.table_height() <= page.height - 1;
}

void validate(const TableGenotype& g, const PageSpec& page) {
  if (!fits_page(g, page)) {
    throw InvalidGenotype("genotype does not fit a " + std::to_string(page.width) + "x" +
                          std::to_string(page.height) + " page (origin " + std::to_string(g.x0) + "," +
                          std::to_string(g.y0) + ", extent " + std::to_string(g.table_width()) + "x" +
                          std::to_string(g.table_height()) + ")");
  }
}

}  // namespace tabstruct
