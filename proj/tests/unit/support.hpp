#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include <unistd.h>

#include "tabstruct/genotype.hpp"
#include "tabstruct/raster_image.hpp"

namespace testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("tabstruct_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Black pixels of a skeleton computed straight from its divider lists: the
/// union of every line rectangle, each line spanning the table box.
inline std::set<std::pair<int, int>> skeleton_pixels(const tabstruct::TableGenotype& g, int lw) {
  const auto d = tabstruct::divider_positions(g);
  std::set<std::pair<int, int>> px;
  if (d.x.size() < 2 || d.y.size() < 2) return px;
  const int x_lo = d.x.front(), x_hi = d.x.back() + lw;
  const int y_lo = d.y.front(), y_hi = d.y.back() + lw;
  for (int y : d.y)
    for (int yy = y; yy < y + lw; ++yy)
      for (int x = x_lo; x < x_hi; ++x) px.insert({x, yy});
  for (int x : d.x)
    for (int xx = x; xx < x + lw; ++xx)
      for (int y = y_lo; y < y_hi; ++y) px.insert({xx, y});
  return px;
}

/// Random small table that fits the default page.
inline tabstruct::TableGenotype random_table(std::mt19937_64& rng, int max_n = 6, int max_m = 6) {
  std::uniform_int_distribution<int> n_dist(1, max_n), m_dist(1, max_m), off(0, 60), rh(15, 100), cw(20, 80);
  tabstruct::TableGenotype g;
  g.x0 = off(rng);
  g.y0 = off(rng);
  const int n = n_dist(rng), m = m_dist(rng);
  for (int i = 0; i < n; ++i) g.row_heights.push_back(rh(rng));
  for (int j = 0; j < m; ++j) g.col_widths.push_back(cw(rng));
  return g;
}

}  // namespace testing
