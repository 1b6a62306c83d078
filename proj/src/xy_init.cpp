#include "tabstruct/xy_init.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tabstruct/errors.hpp"
#include "tabstruct/rng.hpp"

namespace tabstruct {

namespace {

struct Peak {
  double position;
  double mass;
};

double value_or_zero(const std::vector<double>& v, long i) {
  return (i >= 0 && i < static_cast<long>(v.size())) ? v[static_cast<std::size_t>(i)] : 0.0;
}

Peak group_centroid(const std::vector<double>& v, long first, long last) {
  const double floor_left = std::min(value_or_zero(v, first - 2), value_or_zero(v, first - 1));
  const double floor_right = std::min(value_or_zero(v, last + 1), value_or_zero(v, last + 2));
  const double floor = std::max(floor_left, floor_right);
  double mass = 0.0;
  double moment = 0.0;
  for (long i = first - 1; i <= last + 1; ++i) {
    const double w = std::max(0.0, value_or_zero(v, i) - floor);
    mass += w;
    moment += w * static_cast<double>(i);
  }
  if (mass <= 0.0) return {0.5 * static_cast<double>(first + last), 0.0};
  return {moment / mass, mass};
}

std::vector<int> to_page_dividers(const std::vector<double>& model_positions, const ModelTransform& tf, int lw,
                                  int page_extent) {
  std::vector<int> out;
  for (double p : model_positions) {
    const int v = std::clamp(static_cast<int>(std::lround(tf.to_page(p, lw))), 0, page_extent - 1);
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  return out;
}

}  // namespace

ProjectionProfile project(const RasterImage& img, Axis axis) {
  ProjectionProfile p{axis, std::vector<double>(static_cast<std::size_t>(axis == Axis::x ? img.width() : img.height()), 0.0)};
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double dark = 1.0 - img.at(x, y);
      p.values[static_cast<std::size_t>(axis == Axis::x ? x : y)] += dark;
    }
  }
  return p;
}

RasterImage line_filter(const RasterImage& img, Axis axis, int radius) {
  if (radius < 0) throw std::invalid_argument("line_filter radius must be >= 0");
  if (radius == 0) return img;
  RasterImage out(img.width(), img.height(), 1.0);
  std::vector<double> window(static_cast<std::size_t>(2 * radius + 1));
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int k = -radius; k <= radius; ++k) {
        const int xx = axis == Axis::x ? x : x + k;
        const int yy = axis == Axis::x ? y + k : y;
        const bool inside = xx >= 0 && yy >= 0 && xx < img.width() && yy < img.height();
        window[static_cast<std::size_t>(k + radius)] = inside ? img.at(xx, yy) : 1.0;
      }
      std::nth_element(window.begin(), window.begin() + radius, window.end());
      out.at(x, y) = window[static_cast<std::size_t>(radius)];
    }
  }
  return out;
}

std::vector<double> detect_dividers(const ProjectionProfile& profile, const PeakThresholds& t) {
  if (!(t.peak_threshold_frac > 0.0 && t.peak_threshold_frac <= 1.0)) {
    throw std::invalid_argument("peak_threshold_frac must be in (0, 1]");
  }
  const auto& v = profile.values;
  const double vmax = v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  if (vmax <= 0.0) return {};
  const double threshold = t.peak_threshold_frac * vmax;

  // Local maxima; a plateau contributes its last bin.
  std::vector<long> maxima;
  const long n = static_cast<long>(v.size());
  for (long i = 0; i < n; ++i) {
    const double here = v[static_cast<std::size_t>(i)];
    if (here < threshold || here <= 0.0) continue;
    if (here >= value_or_zero(v, i - 1) && here > value_or_zero(v, i + 1)) maxima.push_back(i);
  }

  std::vector<Peak> peaks;
  for (std::size_t a = 0; a < maxima.size();) {
    std::size_t b = a;
    while (b + 1 < maxima.size() && static_cast<double>(maxima[b + 1] - maxima[b]) < t.min_gap_px) ++b;
    peaks.push_back(group_centroid(v, maxima[a], maxima[b]));
    a = b + 1;
  }

  // Centroids of separate groups can still land closer than the gap.
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i + 1 < peaks.size(); ++i) {
      if (peaks[i + 1].position - peaks[i].position < t.min_gap_px) {
        const double mass = peaks[i].mass + peaks[i + 1].mass;
        const double pos = mass > 0.0
                               ? (peaks[i].position * peaks[i].mass + peaks[i + 1].position * peaks[i + 1].mass) / mass
                               : 0.5 * (peaks[i].position + peaks[i + 1].position);
        peaks[i] = {pos, mass};
        peaks.erase(peaks.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        merged = true;
        break;
      }
    }
  }

  std::vector<double> out;
  out.reserve(peaks.size());
  for (const auto& p : peaks) out.push_back(p.position);
  return out;
}

TableGenotype initial_genotype(const SkeletonTarget& target, const PeakThresholds& thresholds, const PageSpec& page,
                               const RenderStyle& style) {
  const ModelTransform tf{std::max(page.width, page.height), target.image.width()};
  auto dividers = [&](Axis axis, int extent) {
    const auto profile = project(line_filter(target.image, axis, thresholds.line_filter_radius), axis);
    return to_page_dividers(detect_dividers(profile, thresholds), tf, style.line_width, extent);
  };
  const auto xs = dividers(Axis::x, page.width);
  const auto ys = dividers(Axis::y, page.height);
  if (xs.size() < 2 || ys.size() < 2) {
    throw InsufficientStructure("found " + std::to_string(xs.size()) + " column and " + std::to_string(ys.size()) +
                                " row dividers; need at least 2 of each");
  }
  TableGenotype g;
  g.x0 = xs.front();
  g.y0 = ys.front();
  for (std::size_t i = 1; i < xs.size(); ++i) g.col_widths.push_back(xs[i] - xs[i - 1]);
  for (std::size_t i = 1; i < ys.size(); ++i) g.row_heights.push_back(ys[i] - ys[i - 1]);
  return g;
}

std::vector<TableGenotype> random_initial_population(const TableConfig& config, int size, std::uint64_t seed,
                                                     const PageSpec& page) {
  if (size < 1) throw std::invalid_argument("population size must be >= 1");
  std::vector<TableGenotype> out;
  out.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    out.push_back(sample_genotype(config, derive_seed(seed, {static_cast<std::uint64_t>(i)}), page));
  }
  return out;
}

}  // namespace tabstruct
