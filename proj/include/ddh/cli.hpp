#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddh/field.hpp"

namespace ddh::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvalidField = 3;
inline constexpr int kExitIo = 4;

inline constexpr const char* kToolVersion = "ddh 1.0.0";

/// Settings for a `growth` sweep. Loaded from a JSON config; individual
/// command-line flags override single fields.
struct RunConfig {
  std::vector<int> resolutions{2, 3, 4};
  std::vector<double> p_values{2.0};
  int trials = 1;
  std::uint64_t seed = 0;
  FieldMode field_mode = RandomMode{0.5, kMaxResolution};
  std::string output_path;

  // Estimator knobs.
  int maxiter = 500;
  double tol = 1e-8;
  int budget = 4;
  int jobs = 1;
  std::string format = "csv";  // "csv" or "json"
};

/// Parse/serialize round-trip is the identity.
RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& config);

/// Entry point shared by the binary and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args);

}  // namespace ddh::cli
