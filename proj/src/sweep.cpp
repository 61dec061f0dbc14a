// SPDX-License-Identifier: Apache-2.0
#include "rishst/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rishst/montecarlo.hpp"
#include "rishst/parallel.hpp"
#include "rishst/rng.hpp"

namespace rishst {

namespace {

using json = nlohmann::json;

constexpr FigureFamily kFamilies[] = {
    FigureFamily::coverage_vs_slot,          FigureFamily::coverage_vs_power,
    FigureFamily::coverage_vs_snr_threshold, FigureFamily::coverage_vs_placement,
    FigureFamily::coverage_vs_speed,         FigureFamily::distance_vs_power,
    FigureFamily::distance_vs_snr_threshold, FigureFamily::distance_vs_placement,
    FigureFamily::distance_vs_speed,         FigureFamily::rate_vs_power,
    FigureFamily::rate_vs_snr_threshold,     FigureFamily::rate_vs_placement,
};

enum class Metric { slot_coverage, mean_coverage, travel_distance, mean_rate };

Metric family_metric(FigureFamily f) {
  switch (f) {
    case FigureFamily::coverage_vs_slot: return Metric::slot_coverage;
    case FigureFamily::coverage_vs_power:
    case FigureFamily::coverage_vs_snr_threshold:
    case FigureFamily::coverage_vs_placement:
    case FigureFamily::coverage_vs_speed: return Metric::mean_coverage;
    case FigureFamily::distance_vs_power:
    case FigureFamily::distance_vs_snr_threshold:
    case FigureFamily::distance_vs_placement:
    case FigureFamily::distance_vs_speed: return Metric::travel_distance;
    case FigureFamily::rate_vs_power:
    case FigureFamily::rate_vs_snr_threshold:
    case FigureFamily::rate_vs_placement: return Metric::mean_rate;
  }
  return Metric::mean_coverage;
}

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::slot_coverage: return "coverage";
    case Metric::mean_coverage: return "mean_coverage";
    case Metric::travel_distance: return "travel_distance_m";
    case Metric::mean_rate: return "mean_rate_bps";
  }
  return "";
}

std::string_view series_name(SeriesParam p) {
  switch (p) {
    case SeriesParam::none: return "";
    case SeriesParam::n_elements: return "N";
    case SeriesParam::quant_bits: return "b";
  }
  return "";
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<double> parse_values(const json& j) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number()) throw SpecError("swept_values entries must be numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }
  if (j.is_object()) {
    const double start = j.at("start").get<double>();
    const double stop = j.at("stop").get<double>();
    const double step = j.at("step").get<double>();
    if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop)) {
      throw SpecError("swept_values range needs finite start/stop and step > 0");
    }
    const double span = (stop - start) / step;
    if (span < 0.0) throw SpecError("swept_values range has stop < start");
    if (span > 1e7) throw SpecError("swept_values range is too long");
    const auto count = static_cast<std::int64_t>(std::floor(span + 1e-9)) + 1;
    for (std::int64_t i = 0; i < count; ++i) out.push_back(start + step * static_cast<double>(i));
    return out;
  }
  throw SpecError("swept_values must be an array or a {start, stop, step} object");
}

bool is_slot_family(FigureFamily f) { return f == FigureFamily::coverage_vs_slot; }

bool is_placement_family(FigureFamily f) {
  return f == FigureFamily::coverage_vs_placement || f == FigureFamily::distance_vs_placement ||
         f == FigureFamily::rate_vs_placement;
}

ScenarioConfig apply_overrides(const ScenarioConfig& cfg, const std::vector<std::string>& overrides) {
  ScenarioConfig out = cfg;
  for (const auto& o : overrides) apply_override(out, o);
  out.validate();
  out.finalize();
  return out;
}

void apply_series(ScenarioConfig& cfg, SeriesParam p, int level) {
  if (p == SeriesParam::n_elements) cfg.ris.n_elements = level;
  if (p == SeriesParam::quant_bits) cfg.ris.quant_bits = level;
}

void apply_swept(ScenarioConfig& cfg, FigureFamily f, double value) {
  const auto name = swept_param(f);
  if (name == "tx_power_dbm") cfg.rf.tx_power_dbm = value;
  else if (name == "snr_threshold_db") cfg.rf.snr_threshold_db = value;
  else if (name == "d_ris_l_m") cfg.ris.d_ris_l_m = value;
  else if (name == "v_kmh") cfg.geometry.v_mps = value / 3.6;
}

struct Unit {
  std::size_t scheme = 0;
  std::size_t level = 0;
  std::size_t value = 0;  // unused for the slot family
};

}  // namespace

std::string_view to_string(FigureFamily family) {
  switch (family) {
    case FigureFamily::coverage_vs_slot: return "coverage_vs_slot";
    case FigureFamily::coverage_vs_power: return "coverage_vs_power";
    case FigureFamily::coverage_vs_snr_threshold: return "coverage_vs_snr_threshold";
    case FigureFamily::coverage_vs_placement: return "coverage_vs_placement";
    case FigureFamily::coverage_vs_speed: return "coverage_vs_speed";
    case FigureFamily::distance_vs_power: return "distance_vs_power";
    case FigureFamily::distance_vs_snr_threshold: return "distance_vs_snr_threshold";
    case FigureFamily::distance_vs_placement: return "distance_vs_placement";
    case FigureFamily::distance_vs_speed: return "distance_vs_speed";
    case FigureFamily::rate_vs_power: return "rate_vs_power";
    case FigureFamily::rate_vs_snr_threshold: return "rate_vs_snr_threshold";
    case FigureFamily::rate_vs_placement: return "rate_vs_placement";
  }
  return "unknown";
}

FigureFamily parse_family(std::string_view name) {
  for (const auto f : kFamilies) {
    if (to_string(f) == name) return f;
  }
  throw SpecError("unknown figure_family '" + std::string(name) + "'");
}

std::string_view swept_param(FigureFamily family) {
  switch (family) {
    case FigureFamily::coverage_vs_slot: return "slot";
    case FigureFamily::coverage_vs_power:
    case FigureFamily::distance_vs_power:
    case FigureFamily::rate_vs_power: return "tx_power_dbm";
    case FigureFamily::coverage_vs_snr_threshold:
    case FigureFamily::distance_vs_snr_threshold:
    case FigureFamily::rate_vs_snr_threshold: return "snr_threshold_db";
    case FigureFamily::coverage_vs_placement:
    case FigureFamily::distance_vs_placement:
    case FigureFamily::rate_vs_placement: return "d_ris_l_m";
    case FigureFamily::coverage_vs_speed:
    case FigureFamily::distance_vs_speed: return "v_kmh";
  }
  return "";
}

SweepSpec parse_sweep_spec(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("sweep spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SpecError("sweep spec must be a JSON object");

  static const std::set<std::string> known = {"figure_family", "swept_values", "schemes",
                                              "series_param",  "series_levels", "seed",
                                              "mc_trials",     "optimize_placement", "overrides"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw SpecError("unknown sweep spec key '" + key + "'");
  }

  SweepSpec spec;
  try {
    spec.family = parse_family(j.at("figure_family").get<std::string>());
    spec.swept_values = parse_values(j.at("swept_values"));
    for (const auto& s : j.at("schemes")) {
      try {
        spec.schemes.push_back(parse_scheme(s.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
      }
    }
    if (j.contains("series_param")) {
      const auto p = j.at("series_param").get<std::string>();
      if (p == "N") spec.series = SeriesParam::n_elements;
      else if (p == "b") spec.series = SeriesParam::quant_bits;
      else if (!p.empty()) throw SpecError("series_param must be \"N\" or \"b\"");
    }
    if (j.contains("series_levels")) spec.series_levels = j.at("series_levels").get<std::vector<int>>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("mc_trials")) spec.mc_trials = j.at("mc_trials").get<std::int64_t>();
    if (j.contains("optimize_placement")) spec.optimize_placement = j.at("optimize_placement").get<bool>();
    if (j.contains("overrides")) spec.overrides = j.at("overrides").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed sweep spec: ") + e.what());
  }
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read sweep spec '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sweep_spec(ss.str());
}

void validate_spec(const ScenarioConfig& cfg, const SweepSpec& spec) {
  if (spec.swept_values.empty()) throw SpecError("swept_values is empty");
  for (double v : spec.swept_values) {
    if (!std::isfinite(v)) throw SpecError("swept_values must be finite");
  }
  if (spec.swept_values.size() > 1) {
    const bool up = spec.swept_values[1] > spec.swept_values[0];
    for (std::size_t i = 1; i < spec.swept_values.size(); ++i) {
      const double a = spec.swept_values[i - 1], b = spec.swept_values[i];
      if (up ? !(b > a) : !(b < a)) throw SpecError("swept_values must be strictly ordered");
    }
  }
  if (spec.schemes.empty()) throw SpecError("schemes is empty");
  std::set<Scheme> seen(spec.schemes.begin(), spec.schemes.end());
  if (seen.size() != spec.schemes.size()) throw SpecError("schemes contains duplicates");

  if (spec.series == SeriesParam::none) {
    if (!spec.series_levels.empty()) throw SpecError("series_levels given without series_param");
  } else {
    if (spec.series_levels.empty()) throw SpecError("series_param needs a nonempty series_levels");
    if (spec.series == SeriesParam::n_elements && seen.contains(Scheme::without_ris)) {
      throw SpecError("without_ris cannot be combined with series_param N");
    }
  }

  const ScenarioConfig base = apply_overrides(cfg, spec.overrides);
  if (is_slot_family(spec.family)) {
    for (double v : spec.swept_values) {
      if (v != std::floor(v) || v < 1.0 || v > static_cast<double>(base.geometry.total_slots)) {
        throw SpecError("slot values must be integers in 1..T");
      }
    }
    if (spec.optimize_placement) throw SpecError("optimize_placement does not apply to coverage_vs_slot");
  } else if (spec.mc_trials) {
    throw SpecError("mc_trials only applies to coverage_vs_slot");
  }
  if (is_placement_family(spec.family) && spec.optimize_placement) {
    throw SpecError("optimize_placement conflicts with a placement sweep");
  }
  if (spec.mc_trials && *spec.mc_trials < 100) throw SpecError("mc_trials must be at least 100");
  if (swept_param(spec.family) == "v_kmh") {
    for (double v : spec.swept_values) {
      if (!(v > 0.0)) throw SpecError("speed values must be positive");
    }
  }

  // Every cell configuration must itself be valid.
  const std::vector<int> levels =
      spec.series == SeriesParam::none ? std::vector<int>{0} : spec.series_levels;
  for (int level : levels) {
    for (double v : is_slot_family(spec.family) ? std::vector<double>{spec.swept_values.front()}
                                                : spec.swept_values) {
      ScenarioConfig c = base;
      apply_series(c, spec.series, level);
      if (!is_slot_family(spec.family)) apply_swept(c, spec.family, v);
      try {
        c.validate();
      } catch (const ConfigError& e) {
        throw SpecError(std::string("sweep cell is invalid: ") + e.what());
      }
      if (c.ris.n_elements == 0 && seen.contains(Scheme::ideal_phase)) {
        throw SpecError("ideal_phase needs N >= 1");
      }
    }
  }
}

std::string_view csv_header() {
  return "figure_family,scheme,series_param,series_level,swept_param,swept_value,slot,"
         "metric_name,value,stderr,seed,config_hash";
}

std::string format_csv_row(const CsvRow& r) {
  std::string s;
  s.reserve(160);
  s += r.figure_family;
  s += ',';
  s += r.scheme;
  s += ',';
  s += r.series_param;
  s += ',';
  s += r.series_level;
  s += ',';
  s += r.swept_param;
  s += ',';
  s += format_double(r.swept_value);
  s += ',';
  if (r.slot) s += std::to_string(*r.slot);
  s += ',';
  s += r.metric_name;
  s += ',';
  s += format_double(r.value);
  s += ',';
  if (r.std_error) s += format_double(*r.std_error);
  s += ',';
  s += std::to_string(r.seed);
  s += ',';
  s += r.config_hash;
  return s;
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& r : rows) out << format_csv_row(r) << '\n';
}

SweepOutput run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec, int threads) {
  validate_spec(cfg, spec);
  const ScenarioConfig base = apply_overrides(cfg, spec.overrides);
  const bool slot_family = is_slot_family(spec.family);
  const Metric metric = family_metric(spec.family);
  const std::vector<int> levels =
      spec.series == SeriesParam::none ? std::vector<int>{0} : spec.series_levels;

  std::vector<Unit> units;
  for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
    for (std::size_t l = 0; l < levels.size(); ++l) {
      if (slot_family) {
        units.push_back({s, l, 0});
      } else {
        for (std::size_t v = 0; v < spec.swept_values.size(); ++v) units.push_back({s, l, v});
      }
    }
  }

  std::vector<std::vector<CsvRow>> buffers(units.size());
  parallel_for(units.size(), resolve_threads(threads), [&](std::size_t u) {
    const Unit unit = units[u];
    const Scheme scheme = spec.schemes[unit.scheme];
    ScenarioConfig c = base;
    apply_series(c, spec.series, levels[unit.level]);
    const double swept = slot_family ? 0.0 : spec.swept_values[unit.value];
    if (!slot_family) apply_swept(c, spec.family, swept);
    c.validate();
    c.finalize();
    const ScenarioConfig effective = scheme_config(c, scheme);

    CsvRow proto;
    proto.figure_family = std::string(to_string(spec.family));
    proto.scheme = std::string(to_string(scheme));
    proto.series_param = std::string(series_name(spec.series));
    if (spec.series != SeriesParam::none) proto.series_level = std::to_string(levels[unit.level]);
    proto.swept_param = std::string(swept_param(spec.family));
    proto.seed = spec.seed;
    proto.config_hash = config_hash(effective);

    auto& rows = buffers[u];
    if (slot_family) {
      const auto result = episode(c, c.ris.d_ris_l_m, scheme, spec.seed);
      for (double v : spec.swept_values) {
        const auto t = static_cast<std::int64_t>(v);
        const auto& rec = result.records[static_cast<std::size_t>(t - 1)];
        CsvRow row = proto;
        row.swept_value = v;
        row.slot = t;
        row.metric_name = std::string(metric_name(metric));
        row.value = rec.coverage;
        rows.push_back(row);
        if (spec.mc_trials) {
          const auto geom = slot_geometry(effective, t, rec.d_ris_l);
          const auto mc = estimate_coverage(effective, geom, rec.phases, *spec.mc_trials, spec.seed);
          row.metric_name = "coverage_mc";
          row.value = mc.mean;
          row.std_error = mc.std_error;
          rows.push_back(row);
        }
      }
      return;
    }

    const SweepResult result = spec.optimize_placement
                                   ? placement_search(c, scheme, spec.seed, 1)
                                   : episode(c, c.ris.d_ris_l_m, scheme, spec.seed);
    double value = result.travel_distance_m;
    if (metric == Metric::mean_coverage || metric == Metric::mean_rate) {
      double sum = 0.0;
      for (const auto& r : result.records) sum += metric == Metric::mean_coverage ? r.coverage : r.rate;
      value = result.records.empty() ? 0.0 : sum / static_cast<double>(result.records.size());
    }
    CsvRow row = proto;
    row.swept_value = swept;
    row.metric_name = std::string(metric_name(metric));
    row.value = value;
    rows.push_back(row);
    if (spec.optimize_placement) {
      row.metric_name = "d_ris_l_star_m";
      row.value = result.d_ris_l_star;
      rows.push_back(row);
    }
  });

  SweepOutput out;
  out.base_config_hash = config_hash(base);
  for (auto& b : buffers) {
    for (auto& r : b) out.rows.push_back(std::move(r));
  }
  return out;
}

void write_sweep(const std::filesystem::path& dir, const SweepSpec& spec, const SweepOutput& output) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());

  const std::string family(to_string(spec.family));
  const auto csv_path = dir / (family + ".csv");
  {
    std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + csv_path.string() + "'");
    write_csv(out, output.rows);
    if (!out) throw std::runtime_error("write failed for '" + csv_path.string() + "'");
  }

  json summary;
  summary["csv_schema"] = kCsvSchema;
  summary["figure_family"] = family;
  summary["swept_param"] = swept_param(spec.family);
  summary["csv"] = csv_path.filename().string();
  summary["rows"] = output.rows.size();
  summary["seed"] = spec.seed;
  summary["base_config_hash"] = output.base_config_hash;
  json schemes = json::array();
  for (auto s : spec.schemes) schemes.push_back(to_string(s));
  summary["schemes"] = schemes;
  summary["series_param"] = series_name(spec.series);
  summary["series_levels"] = spec.series_levels;

  const auto json_path = dir / (family + ".summary.json");
  std::ofstream out(json_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + json_path.string() + "'");
  out << summary.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + json_path.string() + "'");
}

AuditReport validate_run(const ScenarioConfig& cfg, std::int64_t slots, std::int64_t trials,
                         std::uint64_t seed, int threads) {
  if (trials < 10'000) throw std::invalid_argument("validation needs at least 10^4 trials");
  const std::int64_t total = cfg.geometry.total_slots;
  if (slots < 1 || slots > total) throw std::invalid_argument("slot sample must be in 1..T");

  std::vector<std::int64_t> picked;
  std::set<std::int64_t> used;
  CounterStream stream(seed, StreamPurpose::slot_sample, 0);
  while (static_cast<std::int64_t>(picked.size()) < slots) {
    const auto t = static_cast<std::int64_t>(stream.below(static_cast<std::uint64_t>(total))) + 1;
    if (used.insert(t).second) picked.push_back(t);
  }
  std::sort(picked.begin(), picked.end());

  const ScenarioConfig c = scheme_config(cfg, Scheme::optimized_discrete);
  AuditReport report;
  report.rows.resize(picked.size());
  const int workers = resolve_threads(threads);
  for (std::size_t i = 0; i < picked.size(); ++i) {
    EpisodeState state = make_episode_state(c, seed);
    const auto geom = slot_geometry(c, picked[i], c.ris.d_ris_l_m);
    const auto phases = scheme_phases(c, geom, Scheme::optimized_discrete, state);
    const double p = coverage_probability(c, geom, phases);
    const auto mc = estimate_coverage(c, geom, phases, trials, seed, workers);
    AuditRow row;
    row.t = picked[i];
    row.analytic = p;
    row.monte_carlo = mc.mean;
    row.std_error = mc.std_error;
    row.delta = std::abs(p - mc.mean);
    const double n = static_cast<double>(trials);
    row.bound = 3.0 * std::sqrt(p * (1.0 - p) / n) + 1.0 / n;
    row.pass = row.delta <= row.bound;
    report.max_abs_delta = std::max(report.max_abs_delta, row.delta);
    report.all_pass = report.all_pass && row.pass;
    report.rows[i] = row;
  }
  return report;
}

}  // namespace rishst
