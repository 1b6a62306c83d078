#include "tabstruct/skeleton_source.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tabstruct/errors.hpp"
#include "tabstruct/json_io.hpp"
#include "tabstruct/png_io.hpp"

namespace tabstruct {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

class PatchSimilarityDiscriminator final : public Discriminator {
 public:
  PatchScores scores(const RasterImage& scan, const RasterImage& candidate) const override {
    if (scan.width() != candidate.width() || scan.height() != candidate.height()) {
      throw ObjectiveError("discriminator inputs differ in size");
    }
    const int pw = std::min(kPatchSize, scan.width());
    const int ph = std::min(kPatchSize, scan.height());
    // Column-wise prefix sums of |scan - candidate| make each patch O(pw).
    const int w = scan.width();
    const int h = scan.height();
    std::vector<double> cum(static_cast<std::size_t>(w) * static_cast<std::size_t>(h + 1), 0.0);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        cum[static_cast<std::size_t>(y + 1) * w + x] =
            cum[static_cast<std::size_t>(y) * w + x] + std::abs(scan.at(x, y) - candidate.at(x, y));
      }
    }
    PatchScores out{kPatchGrid, std::vector<double>(static_cast<std::size_t>(kPatchGrid * kPatchGrid))};
    for (int py = 0; py < kPatchGrid; ++py) {
      const int y0 = patch_origin(py, h);
      for (int px = 0; px < kPatchGrid; ++px) {
        const int x0 = patch_origin(px, w);
        double sum = 0.0;
        for (int x = x0; x < x0 + pw; ++x) {
          sum += cum[static_cast<std::size_t>(y0 + ph) * w + x] - cum[static_cast<std::size_t>(y0) * w + x];
        }
        out.values[static_cast<std::size_t>(py * kPatchGrid + px)] =
            std::clamp(1.0 - sum / (static_cast<double>(pw) * ph), 0.0, 1.0);
      }
    }
    return out;
  }
};

class ScoreDirectoryDiscriminator final : public Discriminator {
 public:
  explicit ScoreDirectoryDiscriminator(std::filesystem::path dir) : dir_(std::move(dir)) {}

  PatchScores scores(const RasterImage&, const RasterImage& candidate) const override {
    return read_patch_scores_csv(dir_ / (candidate_key(candidate) + ".csv"));
  }

 private:
  std::filesystem::path dir_;
};

std::vector<LineSegment> split_segments(const Dividers& d, int lw) {
  // Each line is cut at the perpendicular dividers; pieces keep the far
  // line's thickness so the union equals the full line.
  std::vector<LineSegment> out;
  if (d.x.size() < 2 || d.y.size() < 2) return out;
  for (int y : d.y) {
    for (std::size_t k = 0; k + 1 < d.x.size(); ++k) out.push_back({true, y, d.x[k], d.x[k + 1] + lw});
  }
  for (int x : d.x) {
    for (std::size_t k = 0; k + 1 < d.y.size(); ++k) out.push_back({false, x, d.y[k], d.y[k + 1] + lw});
  }
  return out;
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::oracle: return "oracle";
    case Provenance::degraded: return "degraded";
    case Provenance::external: return "external";
  }
  return "oracle";
}

void validate(const DegradationParams& p) {
  if (p.divider_jitter_px < 0 || p.blur_radius < 0) throw std::invalid_argument("jitter and blur must be >= 0");
  if (!is_probability(p.segment_dropout_prob) || !is_probability(p.speckle_prob)) {
    throw std::invalid_argument("degradation probabilities must be in [0, 1]");
  }
}

SkeletonTarget oracle_skeleton(const TableGenotype& g, const PageSpec& page, const RenderStyle& style) {
  return {resize(render_skeleton(g, page, style), page.model_resolution), Provenance::oracle};
}

RasterImage degraded_page(const TableGenotype& g, const DegradationParams& params, Rng& rng, const PageSpec& page,
                          const RenderStyle& style) {
  validate(params);
  Dividers d = divider_positions(g);
  const int lw = style.line_width;
  auto jitter = [&](std::vector<int>& positions, int extent) {
    for (int& p : positions) {
      const int shift = params.divider_jitter_px > 0 ? uniform_int(rng, -params.divider_jitter_px, params.divider_jitter_px) : 0;
      p = std::clamp(p + shift, 0, extent - lw);
    }
  };
  jitter(d.x, page.width);
  jitter(d.y, page.height);
  // Jitter may reorder neighbouring dividers; segment spans need ascending order.
  std::sort(d.x.begin(), d.x.end());
  std::sort(d.y.begin(), d.y.end());
  std::vector<LineSegment> kept;
  for (const auto& s : split_segments(d, lw)) {
    if (!chance(rng, params.segment_dropout_prob)) kept.push_back(s);
  }
  RasterImage img = rasterize_segments(kept, page, lw);
  if (params.blur_radius > 0) img = box_blur(img, params.blur_radius);
  if (params.speckle_prob > 0.0) {
    for (double& v : img.pixels()) {
      if (chance(rng, params.speckle_prob)) v = 1.0 - v;
    }
  }
  for (double& v : img.pixels()) v = std::clamp(v, 0.0, 1.0);
  return img;
}

SkeletonTarget degraded_skeleton(const TableGenotype& g, const DegradationParams& params, std::uint64_t seed,
                                 const PageSpec& page, const RenderStyle& style) {
  Rng rng(seed);
  return {resize(degraded_page(g, params, rng, page, style), page.model_resolution), Provenance::degraded};
}

RasterImage box_blur(const RasterImage& img, int radius) {
  if (radius <= 0) return img;
  const int w = img.width();
  const int h = img.height();
  RasterImage horiz(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double sum = 0.0;
      int n = 0;
      for (int k = std::max(0, x - radius); k <= std::min(w - 1, x + radius); ++k, ++n) sum += img.at(k, y);
      horiz.at(x, y) = sum / n;
    }
  }
  RasterImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double sum = 0.0;
      int n = 0;
      for (int k = std::max(0, y - radius); k <= std::min(h - 1, y + radius); ++k, ++n) sum += horiz.at(x, k);
      out.at(x, y) = sum / n;
    }
  }
  return out;
}

SkeletonTarget load_external_skeleton(const std::filesystem::path& path, int model_resolution) {
  RasterImage img = read_png_gray(path);
  if (img.width() != model_resolution || img.height() != model_resolution) img = resize(img, model_resolution);
  return {std::move(img), Provenance::external};
}

std::vector<ExternalSkeleton> load_external_skeletons(const std::filesystem::path& dir, int model_resolution) {
  if (!std::filesystem::is_directory(dir)) throw FormatError(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<ExternalSkeleton> out;
  for (const auto& f : files) {
    std::string id = f.stem().string();
    if (id.size() > 5 && id.ends_with(".skel")) id.resize(id.size() - 5);
    out.push_back({id, load_external_skeleton(f, model_resolution)});
  }
  return out;
}

int patch_origin(int i, int extent) {
  const int patch = std::min(kPatchSize, extent);
  return static_cast<int>(std::lround(static_cast<double>(i) * (extent - patch) / (kPatchGrid - 1)));
}

std::shared_ptr<const Discriminator> stub_discriminator() {
  return std::make_shared<PatchSimilarityDiscriminator>();
}

std::shared_ptr<const Discriminator> score_directory_discriminator(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw FormatError(dir.string() + " is not a directory");
  return std::make_shared<ScoreDirectoryDiscriminator>(dir);
}

std::string candidate_key(const RasterImage& candidate) {
  // FNV-1a over dimensions and 8-bit pixels.
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&](std::uint8_t b) {
    hash ^= b;
    hash *= 0x100000001b3ULL;
  };
  for (int v : {candidate.width(), candidate.height()}) {
    for (int s = 0; s < 32; s += 8) feed(static_cast<std::uint8_t>(v >> s));
  }
  for (double v : candidate.pixels()) feed(static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

PatchScores read_patch_scores_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open patch scores " + path.string());
  PatchScores out{kPatchGrid, {}};
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string cell;
    int cols = 0;
    while (std::getline(ss, cell, ',')) {
      double v = 0.0;
      try {
        v = std::stod(cell);
      } catch (const std::exception&) {
        throw FormatError(path.string() + ": non-numeric score '" + cell + "'");
      }
      if (!(v >= 0.0 && v <= 1.0)) throw FormatError(path.string() + ": score outside [0, 1]");
      out.values.push_back(v);
      ++cols;
    }
    if (cols != kPatchGrid) throw FormatError(path.string() + ": expected 30 values per row");
    ++rows;
  }
  if (rows != kPatchGrid) throw FormatError(path.string() + ": expected 30 rows");
  return out;
}

void write_patch_scores_csv(const std::filesystem::path& path, const PatchScores& scores) {
  std::ostringstream out;
  out.precision(17);
  for (int r = 0; r < scores.size; ++r) {
    for (int c = 0; c < scores.size; ++c) out << (c ? "," : "") << scores.at(c, r);
    out << "\n";
  }
  write_text_atomic(path, out.str());
}

}  // namespace tabstruct
