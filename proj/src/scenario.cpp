// SPDX-License-Identifier: Apache-2.0
#include "rishst/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

namespace rishst {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view value, std::size_t line) {
  // std::from_chars accepts "inf"; used for pure line-of-sight K-factors.
  double out = 0.0;
  const auto* begin = value.data();
  const auto* end = value.data() + value.size();
  if (!value.empty() && value.front() == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end || std::isnan(out)) {
    throw ConfigError(std::string(key), line,
                      "invalid number '" + std::string(value) + "' for key '" +
                          std::string(key) + "'");
  }
  return out;
}

std::int64_t parse_integer(std::string_view key, std::string_view value, std::size_t line) {
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError(std::string(key), line,
                      "invalid integer '" + std::string(value) + "' for key '" +
                          std::string(key) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value, std::size_t line) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(std::string(key), line,
                    "invalid boolean '" + std::string(value) + "' for key '" +
                        std::string(key) + "'");
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

struct Field {
  std::string name;
  std::function<void(ScenarioConfig&, std::string_view, std::size_t)> set;
  std::function<std::string(const ScenarioConfig&)> get;  // empty: write-only alias
};

template <class Section, class T>
Field real_field(std::string name, Section ScenarioConfig::*section, T Section::*member) {
  return {name,
          [=](ScenarioConfig& c, std::string_view v, std::size_t line) {
            (c.*section).*member = parse_real(name, v, line);
          },
          [=](const ScenarioConfig& c) { return format_real((c.*section).*member); }};
}

template <class Section, class T>
Field int_field(std::string name, Section ScenarioConfig::*section, T Section::*member) {
  return {name,
          [=](ScenarioConfig& c, std::string_view v, std::size_t line) {
            (c.*section).*member = static_cast<T>(parse_integer(name, v, line));
          },
          [=](const ScenarioConfig& c) { return std::to_string((c.*section).*member); }};
}

Field link_field(std::string name, LinkFading FadingConfig::*link, double LinkFading::*member) {
  return {name,
          [=](ScenarioConfig& c, std::string_view v, std::size_t line) {
            (c.fading.*link).*member = parse_real(name, v, line);
          },
          [=](const ScenarioConfig& c) { return format_real((c.fading.*link).*member); }};
}

Field all_links_alias(std::string name, double LinkFading::*member) {
  return {name,
          [=](ScenarioConfig& c, std::string_view v, std::size_t line) {
            const double x = parse_real(name, v, line);
            c.fading.bm.*member = x;
            c.fading.br.*member = x;
            c.fading.rm.*member = x;
          },
          {}};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    using S = ScenarioConfig;
    std::vector<Field> f;
    f.push_back(real_field("carrier_frequency_hz", &S::rf, &RfConfig::carrier_frequency_hz));
    f.push_back(real_field("bandwidth_hz", &S::rf, &RfConfig::bandwidth_hz));
    f.push_back(real_field("noise_figure_db", &S::rf, &RfConfig::noise_figure_db));
    f.push_back(real_field("tx_power_dbm", &S::rf, &RfConfig::tx_power_dbm));
    f.push_back(real_field("snr_threshold_db", &S::rf, &RfConfig::snr_threshold_db));
    f.push_back(real_field("coverage_threshold", &S::rf, &RfConfig::coverage_threshold));

    f.push_back(real_field("h_bs_m", &S::geometry, &GeometryConfig::h_bs_m));
    f.push_back(real_field("h_ris_m", &S::geometry, &GeometryConfig::h_ris_m));
    f.push_back(real_field("h_mr_m", &S::geometry, &GeometryConfig::h_mr_m));
    f.push_back(real_field("d_bs_v_m", &S::geometry, &GeometryConfig::d_bs_v_m));
    f.push_back(real_field("d_ris_v_m", &S::geometry, &GeometryConfig::d_ris_v_m));
    f.push_back(real_field("k_m", &S::geometry, &GeometryConfig::k_m));
    f.push_back(real_field("v_mps", &S::geometry, &GeometryConfig::v_mps));
    f.push_back(real_field("slot_s", &S::geometry, &GeometryConfig::slot_s));
    f.push_back(int_field("total_slots", &S::geometry, &GeometryConfig::total_slots));
    f.push_back({"v_kmh",
                 [](S& c, std::string_view v, std::size_t line) {
                   c.geometry.v_mps = parse_real("v_kmh", v, line) / 3.6;
                 },
                 {}});

    const std::pair<std::string_view, LinkFading FadingConfig::*> links[] = {
        {"bm", &FadingConfig::bm}, {"br", &FadingConfig::br}, {"rm", &FadingConfig::rm}};
    for (const auto& [suffix, link] : links) {
      const std::string s(suffix);
      f.push_back(link_field("k_factor_db_" + s, link, &LinkFading::k_factor_db));
      f.push_back(link_field("los_exponent_" + s, link, &LinkFading::los_exponent));
      f.push_back(link_field("nlos_exponent_" + s, link, &LinkFading::nlos_exponent));
    }
    f.push_back(all_links_alias("k_factor_db", &LinkFading::k_factor_db));
    f.push_back(all_links_alias("los_exponent", &LinkFading::los_exponent));
    f.push_back(all_links_alias("nlos_exponent", &LinkFading::nlos_exponent));

    f.push_back(int_field("n_elements", &S::ris, &RisConfig::n_elements));
    f.push_back(int_field("quant_bits", &S::ris, &RisConfig::quant_bits));
    f.push_back(real_field("d_ris_l_m", &S::ris, &RisConfig::d_ris_l_m));
    f.push_back(real_field("placement_min_m", &S::ris, &RisConfig::placement_min_m));
    f.push_back(real_field("placement_max_m", &S::ris, &RisConfig::placement_max_m));
    f.push_back(real_field("placement_step_m", &S::ris, &RisConfig::placement_step_m));

    f.push_back({"seed",
                 [](S& c, std::string_view v, std::size_t line) {
                   std::uint64_t out = 0;
                   const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
                   if (ec != std::errc{} || ptr != v.data() + v.size()) {
                     throw ConfigError("seed", line, "invalid seed '" + std::string(v) + "'");
                   }
                   c.run.seed = out;
                 },
                 [](const S& c) { return std::to_string(c.run.seed); }});
    f.push_back(int_field("mc_trials", &S::run, &RunConfig::mc_trials));
    f.push_back(int_field("rate_trials", &S::run, &RunConfig::rate_trials));
    f.push_back(int_field("search_passes", &S::run, &RunConfig::search_passes));
    f.push_back({"warm_start",
                 [](S& c, std::string_view v, std::size_t line) {
                   c.run.warm_start = parse_bool("warm_start", v, line);
                 },
                 [](const S& c) { return std::string(c.run.warm_start ? "true" : "false"); }});
    f.push_back({"rate_mode",
                 [](S& c, std::string_view v, std::size_t line) {
                   if (v == "mean_channel") {
                     c.run.rate_mode = RateMode::mean_channel;
                   } else if (v == "instantaneous") {
                     c.run.rate_mode = RateMode::instantaneous;
                   } else if (v == "mc_average") {
                     c.run.rate_mode = RateMode::mc_average;
                   } else {
                     throw ConfigError("rate_mode", line,
                                       "rate_mode must be mean_channel, instantaneous or "
                                       "mc_average, got '" + std::string(v) + "'");
                   }
                 },
                 [](const S& c) { return std::string(to_string(c.run.rate_mode)); }});
    f.push_back({"rate_log10",
                 [](S& c, std::string_view v, std::size_t line) {
                   c.run.rate_log10 = parse_bool("rate_log10", v, line);
                 },
                 [](const S& c) { return std::string(c.run.rate_log10 ? "true" : "false"); }});
    f.push_back(int_field("threads", &S::run, &RunConfig::threads));
    return f;
  }();
  return table;
}

[[noreturn]] void invalid(std::string_view key, const std::string& why) {
  throw ConfigError(std::string(key), 0, std::string(key) + ": " + why);
}

void require_positive(std::string_view key, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) invalid(key, "must be finite and > 0");
}

void require_finite(std::string_view key, double v) {
  if (!std::isfinite(v)) invalid(key, "must be finite");
}

void validate_link(std::string_view suffix, const LinkFading& link) {
  const std::string s(suffix);
  // +inf dB is allowed (pure LoS); -inf dB means kappa = 0, also allowed.
  if (std::isnan(link.k_factor_db)) invalid("k_factor_db_" + s, "must be a number");
  require_positive("los_exponent_" + s, link.los_exponent);
  require_positive("nlos_exponent_" + s, link.nlos_exponent);
}

LinkDerived derive_link(const LinkFading& link) {
  LinkDerived d;
  if (std::isinf(link.k_factor_db) && link.k_factor_db > 0) {
    d.kappa = std::numeric_limits<double>::infinity();
    d.los_weight = 1.0;
    d.nlos_weight = 0.0;
    return d;
  }
  d.kappa = db_to_linear(link.k_factor_db);
  d.los_weight = std::sqrt(d.kappa / (d.kappa + 1.0));
  d.nlos_weight = std::sqrt(1.0 / (d.kappa + 1.0));
  return d;
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string_view to_string(RateMode mode) {
  switch (mode) {
    case RateMode::mean_channel: return "mean_channel";
    case RateMode::instantaneous: return "instantaneous";
    case RateMode::mc_average: return "mc_average";
  }
  return "mean_channel";
}

void ScenarioConfig::validate() const {
  require_positive("carrier_frequency_hz", rf.carrier_frequency_hz);
  require_positive("bandwidth_hz", rf.bandwidth_hz);
  require_finite("noise_figure_db", rf.noise_figure_db);
  require_finite("tx_power_dbm", rf.tx_power_dbm);
  require_finite("snr_threshold_db", rf.snr_threshold_db);
  if (!(rf.coverage_threshold > 0.0 && rf.coverage_threshold < 1.0)) {
    invalid("coverage_threshold", "must lie in (0, 1)");
  }

  require_positive("h_bs_m", geometry.h_bs_m);
  require_positive("h_ris_m", geometry.h_ris_m);
  require_positive("h_mr_m", geometry.h_mr_m);
  require_positive("d_bs_v_m", geometry.d_bs_v_m);
  require_positive("d_ris_v_m", geometry.d_ris_v_m);
  require_positive("k_m", geometry.k_m);
  require_positive("v_mps", geometry.v_mps);
  require_positive("slot_s", geometry.slot_s);
  if (geometry.total_slots < 1) invalid("total_slots", "must be >= 1");

  validate_link("bm", fading.bm);
  validate_link("br", fading.br);
  validate_link("rm", fading.rm);

  if (ris.n_elements < 0) invalid("n_elements", "must be >= 0");
  if (ris.quant_bits < 1 || ris.quant_bits > 16) invalid("quant_bits", "must be in [1, 16]");
  require_finite("d_ris_l_m", ris.d_ris_l_m);
  require_finite("placement_min_m", ris.placement_min_m);
  require_finite("placement_max_m", ris.placement_max_m);
  require_positive("placement_step_m", ris.placement_step_m);
  if (ris.placement_min_m > ris.placement_max_m) {
    invalid("placement_min_m", "must not exceed placement_max_m");
  }

  if (run.mc_trials < 100) invalid("mc_trials", "must be >= 100");
  if (run.rate_trials < 1) invalid("rate_trials", "must be >= 1");
  if (run.search_passes < 0) invalid("search_passes", "must be >= 0");
  if (run.threads < 0) invalid("threads", "must be >= 0");
}

void ScenarioConfig::finalize() {
  DerivedQuantities d;
  d.wavelength_m = kSpeedOfLight / rf.carrier_frequency_hz;
  d.noise_power_dbm = kThermalNoiseDbmPerHz + 10.0 * std::log10(rf.bandwidth_hz) + rf.noise_figure_db;
  d.noise_power_mw = db_to_linear(d.noise_power_dbm);
  d.tx_power_mw = db_to_linear(rf.tx_power_dbm);
  d.snr_threshold = db_to_linear(rf.snr_threshold_db);
  d.mean_snr = d.tx_power_mw / d.noise_power_mw;
  d.slot_travel_m = geometry.v_mps * geometry.slot_s;
  d.phase_levels = 1 << ris.quant_bits;
  d.phase_step = 2.0 * std::numbers::pi / d.phase_levels;
  d.bm = derive_link(fading.bm);
  d.br = derive_link(fading.br);
  d.rm = derive_link(fading.rm);
  derived = d;
}

std::vector<double> ScenarioConfig::phase_set() const {
  const int m = 1 << ris.quant_bits;
  const double step = 2.0 * std::numbers::pi / m;
  std::vector<double> out(static_cast<std::size_t>(m));
  for (int l = 0; l < m; ++l) out[static_cast<std::size_t>(l)] = step * l;
  return out;
}

std::vector<double> ScenarioConfig::placement_grid() const {
  std::vector<double> out;
  const double span = ris.placement_max_m - ris.placement_min_m;
  // Integer stepping avoids accumulating rounding; 1e-9 guards the endpoint.
  const auto count = static_cast<std::int64_t>(std::floor(span / ris.placement_step_m + 1e-9));
  for (std::int64_t i = 0; i <= count; ++i) {
    out.push_back(ris.placement_min_m + static_cast<double>(i) * ris.placement_step_m);
  }
  return out;
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
  for (const auto& f : fields()) {
    if (f.get && f.get(a) != f.get(b)) return false;
  }
  return true;
}

void set_field(ScenarioConfig& cfg, std::string_view key, std::string_view value,
               std::size_t line) {
  for (const auto& f : fields()) {
    if (f.name == key) {
      f.set(cfg, value, line);
      return;
    }
  }
  throw ConfigError(std::string(key), line, "unknown key '" + std::string(key) + "'");
}

void apply_override(ScenarioConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(std::string(assignment), 0,
                      "override '" + std::string(assignment) + "' is not key=value");
  }
  set_field(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

ScenarioConfig load_scenario(std::string_view text, const std::vector<std::string>& overrides) {
  ScenarioConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    // Section headers such as "[rf]" are accepted for readability; keys stay flat.
    if (line.front() == '[' && line.back() == ']') continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(line), line_no,
                        "line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("", line_no, "line " + std::to_string(line_no) + ": empty key");
    }
    try {
      set_field(cfg, key, value, line_no);
    } catch (const ConfigError& e) {
      throw ConfigError(e.key(), line_no, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  for (const auto& o : overrides) apply_override(cfg, o);
  cfg.validate();
  cfg.finalize();
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str(), overrides);
}

ScenarioConfig default_scenario() { return load_scenario(""); }

std::string serialize(const ScenarioConfig& cfg) {
  std::string out;
  for (const auto& f : fields()) {
    if (!f.get) continue;
    out.append(f.name);
    out.append(" = ");
    out.append(f.get(cfg));
    out.push_back('\n');
  }
  return out;
}

std::string config_hash(const ScenarioConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : serialize(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rishst
