#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hpq/cli/toml.hpp"
#include "hpq/nikishin.hpp"

namespace hpq::cli {

struct Tolerances {
  double equilibrium = 5e-3;  // pointwise equilibrium residual on the support
  double route_hausdorff = 1e-12;
  double energy = 1e-6;
  double solver_gap = 1e-10;
  double weak_distance = 0.05;
};

struct RunConfig {
  NikishinSystem system = NikishinSystem::uniform({{"1.5", "2.5"}});
  std::vector<int> n_list{5, 10, 20, 40};
  int cells = 400;
  /// Fixed working precision in bits; 0 selects the per-n default.
  Precision precision = 0;
  std::string output_dir = "out";
  uint64_t seed = 20240611;
  int probes = 100;
  int figure_n = 200;
  Tolerances tol;

  /// Throws ConfigError.
  void validate() const;
  /// Precision used for order n.
  Precision precision_for(int n) const;
};

/// Sections [system], [run], [tolerances]; unknown keys are rejected.
RunConfig config_from_document(const toml::Document& doc);
RunConfig load_config(const std::string& path);

struct Overrides {
  std::optional<int> n;
  std::optional<int> cells;
  std::optional<long> precision;
  std::optional<std::string> out;
  std::optional<uint64_t> seed;
};

/// Applies command-line overrides, then HPQ_PRECISION_BITS (`env_precision`,
/// may be null) when neither the flag nor the file fixed a precision.
void apply_overrides(RunConfig& cfg, const Overrides& o, const char* env_precision);

}  // namespace hpq::cli
