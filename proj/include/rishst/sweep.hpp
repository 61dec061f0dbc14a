// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rishst/optimizer.hpp"

namespace rishst {

inline constexpr std::string_view kCsvSchema = "rishst-sweep/1";

enum class FigureFamily {
  coverage_vs_slot,
  coverage_vs_power,
  coverage_vs_snr_threshold,
  coverage_vs_placement,
  coverage_vs_speed,
  distance_vs_power,
  distance_vs_snr_threshold,
  distance_vs_placement,
  distance_vs_speed,
  rate_vs_power,
  rate_vs_snr_threshold,
  rate_vs_placement,
};

std::string_view to_string(FigureFamily family);
FigureFamily parse_family(std::string_view name);

/// Parameter varied along the x axis of a family: slot, tx_power_dbm,
/// snr_threshold_db, d_ris_l_m or v_kmh.
std::string_view swept_param(FigureFamily family);

/// Raised for malformed or inconsistent sweep spec files.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SeriesParam { none, n_elements, quant_bits };

struct SweepSpec {
  FigureFamily family = FigureFamily::coverage_vs_slot;
  std::vector<double> swept_values;
  std::vector<Scheme> schemes;
  SeriesParam series = SeriesParam::none;
  std::vector<int> series_levels;
  std::uint64_t seed = 1;
  /// Coverage-vs-slot only: also emit a Monte Carlo estimate per slot.
  std::optional<std::int64_t> mc_trials;
  /// Distance, rate and mean-coverage families: search the placement grid
  /// for every cell instead of using the configured placement.
  bool optimize_placement = false;
  /// "key=value" assignments applied to the scenario before the sweep.
  std::vector<std::string> overrides;
};

/// Parses the JSON form. swept_values is either an array or
/// {"start": a, "stop": b, "step": s} (stop included when reached).
SweepSpec parse_sweep_spec(std::string_view json_text);
SweepSpec load_sweep_spec(const std::string& path);

/// Structural checks plus consistency with `cfg`; throws SpecError.
void validate_spec(const ScenarioConfig& cfg, const SweepSpec& spec);

struct CsvRow {
  std::string figure_family;
  std::string scheme;
  std::string series_param;
  std::string series_level;
  std::string swept_param;
  double swept_value = 0.0;
  std::optional<std::int64_t> slot;
  std::string metric_name;
  double value = 0.0;
  std::optional<double> std_error;
  std::uint64_t seed = 0;
  std::string config_hash;
};

std::string_view csv_header();
std::string format_csv_row(const CsvRow& row);

struct SweepOutput {
  std::vector<CsvRow> rows;
  std::string base_config_hash;
};

/// Evaluates every (scheme, series level, swept value) cell. Rows come out
/// in scheme, level, value order whatever the thread count.
SweepOutput run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec, int threads = 1);

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);

/// Writes <dir>/<family>.csv and <dir>/<family>.summary.json. Throws
/// std::runtime_error naming the path when it cannot be written.
void write_sweep(const std::filesystem::path& dir, const SweepSpec& spec, const SweepOutput& output);

struct AuditRow {
  std::int64_t t = 0;
  double analytic = 0.0;
  double monte_carlo = 0.0;
  double std_error = 0.0;
  double delta = 0.0;  // |analytic - monte_carlo|
  double bound = 0.0;  // 3 sigma binomial bound plus one trial of slack
  bool pass = false;
};

struct AuditReport {
  std::vector<AuditRow> rows;
  double max_abs_delta = 0.0;
  bool all_pass = true;
};

/// Analytic vs Monte Carlo coverage at `slots` distinct slots drawn
/// uniformly from 1..T, using optimized discrete phases. Requires at least
/// 10^4 trials and slots in 1..T.
AuditReport validate_run(const ScenarioConfig& cfg, std::int64_t slots, std::int64_t trials,
                         std::uint64_t seed, int threads = 1);

}  // namespace rishst
