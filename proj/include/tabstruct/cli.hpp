#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tabstruct/ga.hpp"
#include "tabstruct/json_io.hpp"
#include "tabstruct/render.hpp"
#include "tabstruct/skeleton_source.hpp"
#include "tabstruct/xy_init.hpp"

namespace tabstruct {

struct GenerateOptions {
  std::vector<std::string> configs{"base"};
  /// Optional JSON preset file; its names take precedence over built-ins.
  std::string presets_file;
  int count = 1000;
  std::uint64_t seed = 1;
  std::string split = "train";
  std::string out;
  int jobs = 1;
  RenderStyle style;
};

struct FitOptions {
  /// oracle | degraded | external
  std::string source = "oracle";
  /// Dataset root (manifest.json); required for oracle and degraded.
  std::string dataset;
  /// Directory of external skeleton PNGs, flat or one subdirectory per config.
  std::string skeletons;
  std::string out;
  bool no_ga = false;
  std::string objective = "nonoverlap";
  double lambda = 100.0;
  /// Precomputed discriminator scores; the stub discriminator otherwise.
  std::string scores_dir;
  /// Config used for random initialisation when a skeleton has too little
  /// structure and no dataset config is known.
  std::string fallback_config = "base";
  DegradationParams degradation;
  PeakThresholds thresholds;
  GaParams ga;
  std::uint64_t seed = 1;
  bool overlays = false;
  int jobs = 1;
  RenderStyle style;
};

struct EvalOptions {
  std::string fits;
  std::string truth;
  std::string out;
};

Json options_to_json(const GenerateOptions& o);
Json options_to_json(const FitOptions& o);
Json options_to_json(const EvalOptions& o);

/// Each returns the process exit status; diagnostics go to `err`.
int cmd_generate(const GenerateOptions& o, std::ostream& out, std::ostream& err);
int cmd_fit(const FitOptions& o, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err);

/// Full command line (including argv[0]) with generate | fit | eval
/// subcommands and an optional --config-file.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tabstruct
