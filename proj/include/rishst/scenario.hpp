// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rishst {

inline constexpr double kSpeedOfLight = 299'792'458.0;
inline constexpr double kThermalNoiseDbmPerHz = -174.0;

/// Raised for malformed configuration text or invariant violations.
/// `key` names the offending field; `line` is 0 when the error is not tied
/// to a line of input (e.g. a --set override or a cross-field check).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, std::size_t line, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)), line_(line) {}

  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string key_;
  std::size_t line_;
};

struct RfConfig {
  double carrier_frequency_hz = 2.35e9;
  double bandwidth_hz = 20e6;
  double noise_figure_db = 10.0;
  double tx_power_dbm = 30.0;
  double snr_threshold_db = 10.0;
  double coverage_threshold = 0.95;
};

struct GeometryConfig {
  double h_bs_m = 10.0;
  double h_ris_m = 2.0;
  double h_mr_m = 2.5;
  double d_bs_v_m = 50.0;
  double d_ris_v_m = 20.0;
  double k_m = 7000.0;
  double v_mps = 100.0;  // 360 km/h
  double slot_s = 0.01;
  std::int64_t total_slots = 14000;
};

struct LinkFading {
  double k_factor_db = 10.0;  // +inf for a pure line-of-sight link
  double los_exponent = 3.0;
  double nlos_exponent = 3.6;
};

struct FadingConfig {
  LinkFading bm;  // BS -> MR
  LinkFading br;  // BS -> RIS
  LinkFading rm;  // RIS -> MR
};

struct RisConfig {
  int n_elements = 60;  // 0 encodes the without-RIS deployment
  int quant_bits = 2;
  double d_ris_l_m = 0.0;  // placement used when a run does not search it
  double placement_min_m = -1000.0;
  double placement_max_m = 1000.0;
  double placement_step_m = 50.0;
};

enum class RateMode { mean_channel, instantaneous, mc_average };

struct RunConfig {
  std::uint64_t seed = 1;
  std::int64_t mc_trials = 100000;
  std::int64_t rate_trials = 1000;
  int search_passes = 1;  // 0: sweep until no element changes
  bool warm_start = false;
  RateMode rate_mode = RateMode::mean_channel;
  bool rate_log10 = false;
  int threads = 0;  // 0: hardware concurrency
};

/// Linear-scale quantities precomputed from the raw fields.
struct LinkDerived {
  double kappa = 0.0;
  double los_weight = 0.0;   // sqrt(kappa / (kappa + 1))
  double nlos_weight = 0.0;  // sqrt(1 / (kappa + 1))
};

struct DerivedQuantities {
  double wavelength_m = 0.0;
  double noise_power_dbm = 0.0;
  double noise_power_mw = 0.0;
  double tx_power_mw = 0.0;
  double snr_threshold = 0.0;
  double mean_snr = 0.0;      // P / sigma^2
  double slot_travel_m = 0.0; // v * tau
  int phase_levels = 0;       // M = 2^b
  double phase_step = 0.0;    // 2 pi / M
  LinkDerived bm, br, rm;
};

struct ScenarioConfig {
  RfConfig rf;
  GeometryConfig geometry;
  FadingConfig fading;
  RisConfig ris;
  RunConfig run;
  DerivedQuantities derived;

  /// Checks every field invariant; throws ConfigError naming the field.
  void validate() const;
  /// Recomputes `derived` from the raw fields.
  void finalize();

  /// Discrete phase set {0, d, ..., d (M-1)} with d = 2 pi / M.
  std::vector<double> phase_set() const;
  /// Candidate placements min, min + step, ... <= max.
  std::vector<double> placement_grid() const;
};

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

/// Parses `key = value` lines ('#' starts a comment, blank lines ignored),
/// applies `overrides` ("key=value") on top, validates and finalizes.
/// Omitted keys keep their defaults.
ScenarioConfig load_scenario(std::string_view text,
                             const std::vector<std::string>& overrides = {});
/// Throws std::runtime_error naming the path when the file cannot be read.
ScenarioConfig load_scenario_file(const std::string& path,
                                  const std::vector<std::string>& overrides = {});

/// Default configuration, validated and finalized.
ScenarioConfig default_scenario();

/// Applies one "key=value" override to the raw fields. Does not re-finalize.
void apply_override(ScenarioConfig& cfg, std::string_view assignment);
void set_field(ScenarioConfig& cfg, std::string_view key, std::string_view value,
               std::size_t line = 0);

/// Canonical text form; load_scenario(serialize(c)) == c.
std::string serialize(const ScenarioConfig& cfg);

/// FNV-1a of the canonical serialization, as 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

std::string_view to_string(RateMode mode);

double db_to_linear(double db);

}  // namespace rishst
