#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ppprelay/errors.hpp"
#include "ppprelay/geometry.hpp"
#include "ppprelay/quadrature.hpp"

namespace ppprelay::cli {

enum class Mode { simulate, analytic, asymptotic, ratio, diversity, optimize_k, figure };
enum class SchemeChoice { bulk, per_subcarrier, both };

std::string_view mode_name(Mode mode) noexcept;
std::string_view scheme_choice_name(SchemeChoice scheme) noexcept;

struct ExperimentConfig {
  Mode mode = Mode::analytic;
  /// What actually runs; differs from `mode` only for figure presets.
  Mode run_mode = Mode::analytic;
  std::string preset;

  SchemeChoice scheme = SchemeChoice::bulk;
  RegionKind region = RegionKind::disc;
  double sigma = 5.0;
  std::optional<double> rmax;

  std::vector<double> lambda{1.0};
  std::vector<double> snr{100.0};
  std::vector<int> subcarriers{4};
  std::vector<double> alpha{2.0};
  double threshold = 1.0;
  double r_sd = 5.0;

  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;

  std::vector<double> psi;
  std::vector<double> epsilon;

  std::string output;
  QuadratureSettings quadrature;
  bool connection = false;
  bool verify = false;
};

/// Every problem found while reading a configuration, not just the first.
class ConfigErrors : public ConfigurationError {
 public:
  explicit ConfigErrors(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const noexcept { return messages_; }

 private:
  std::vector<std::string> messages_;
};

/// Thrown for --help; what() is the usage text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "1,2,3", "lin:lo:hi:n" or "log:lo:hi:n" (n points, both ends included).
std::vector<double> parse_sweep(std::string_view text);

/// Parses command-line arguments (without the program name). A `--config`
/// file of `key = value` lines supplies values for keys the command line
/// does not set. Throws ConfigErrors or HelpRequested.
ExperimentConfig parse_config(const std::vector<std::string>& args);

/// Resolved configuration as `key = value` lines, readable by --config.
std::string render_config(const ExperimentConfig& config);

}  // namespace ppprelay::cli
