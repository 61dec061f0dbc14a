// SPDX-License-Identifier: Apache-2.0
#include "rishst/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rishst/rng.hpp"
#include "rishst/specfun.hpp"

namespace rishst {

double path_loss(double d, double exponent) {
  if (!(d > 0.0)) throw DomainError("path_loss: distance must be > 0");
  return std::pow(d, -exponent);
}

double phase_of_distance(double d, double wavelength) {
  if (!(d > 0.0) || !(wavelength > 0.0)) {
    throw DomainError("phase_of_distance: distance and wavelength must be > 0");
  }
  // Reduce in cycles first; 2 pi d / lambda itself is thousands of radians.
  const double cycles = d / wavelength;
  const double frac = cycles - std::floor(cycles);
  return wrap_phase(2.0 * std::numbers::pi * frac);
}

namespace {

cplx los_term(double weight, double d, double exponent, double wavelength) {
  return weight * std::sqrt(path_loss(d, exponent)) * std::polar(1.0, -phase_of_distance(d, wavelength));
}

}  // namespace

SlotChannel slot_channel(const ScenarioConfig& cfg, const SlotGeometry& geom) {
  const auto& d = cfg.derived;
  const auto& f = cfg.fading;
  SlotChannel c;
  c.direct_los = los_term(d.bm.los_weight, geom.d_bm_m, f.bm.los_exponent, d.wavelength_m);
  c.direct_nlos = d.bm.nlos_weight * std::sqrt(path_loss(geom.d_bm_m, f.bm.nlos_exponent));
  c.br_los = los_term(d.br.los_weight, geom.d_br_m, f.br.los_exponent, d.wavelength_m);
  c.br_nlos = d.br.nlos_weight * std::sqrt(path_loss(geom.d_br_m, f.br.nlos_exponent));
  c.rm_los = los_term(d.rm.los_weight, geom.d_rm_m, f.rm.los_exponent, d.wavelength_m);
  c.rm_nlos = d.rm.nlos_weight * std::sqrt(path_loss(geom.d_rm_m, f.rm.nlos_exponent));
  c.elements = static_cast<std::size_t>(cfg.ris.n_elements);
  return c;
}

LosComponents los_components(const ScenarioConfig& cfg, const SlotGeometry& geom) {
  const auto c = slot_channel(cfg, geom);
  LosComponents out;
  out.los_bm = c.direct_los;
  out.los_cascade.assign(c.elements, c.rm_los * c.br_los);
  return out;
}

void check_phase_length(const ScenarioConfig& cfg, const PhaseVector& phases) {
  if (phases.size() != static_cast<std::size_t>(cfg.ris.n_elements)) {
    throw std::invalid_argument("phase vector has " + std::to_string(phases.size()) +
                                " entries, configuration has N = " +
                                std::to_string(cfg.ris.n_elements));
  }
}

kernels::ChannelTerms channel_terms(const SlotChannel& c, const PhaseVector& phases) {
  if (phases.size() != c.elements) {
    throw std::invalid_argument("channel_terms: phase vector length does not match N");
  }
  kernels::ChannelTerms t;
  t.direct_los_re = c.direct_los.real();
  t.direct_los_im = c.direct_los.imag();
  t.direct_nlos = c.direct_nlos;
  const std::size_t n = c.elements;
  t.steer_re.resize(n);
  t.steer_im.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = phases.radians(i);
    t.steer_re[i] = std::cos(theta);
    t.steer_im[i] = std::sin(theta);
  }
  t.rm_los_re.assign(n, c.rm_los.real());
  t.rm_los_im.assign(n, c.rm_los.imag());
  t.rm_nlos.assign(n, c.rm_nlos);
  t.br_los_re.assign(n, c.br_los.real());
  t.br_los_im.assign(n, c.br_los.imag());
  t.br_nlos.assign(n, c.br_nlos);
  return t;
}

namespace {

cplx link_gaussian(CounterStream& stream, std::uint64_t link) {
  stream.seek(2 * link);
  return stream.complex_gaussian();
}

}  // namespace

void fill_gaussians(kernels::GaussianBlock& block, std::uint64_t seed, std::uint64_t slot,
                    std::uint64_t first_trial, std::size_t count, std::size_t elements) {
  block.resize(count, elements);
  for (std::size_t i = 0; i < count; ++i) {
    CounterStream stream(seed, StreamPurpose::channel, slot, first_trial + i);
    const cplx g_bm = link_gaussian(stream, link_id_bm());
    block.bm_re[i] = g_bm.real();
    block.bm_im[i] = g_bm.imag();
    for (std::size_t n = 0; n < elements; ++n) {
      const cplx g_br = link_gaussian(stream, link_id_br(n));
      const cplx g_rm = link_gaussian(stream, link_id_rm(n));
      block.br_re[n * count + i] = g_br.real();
      block.br_im[n * count + i] = g_br.imag();
      block.rm_re[n * count + i] = g_rm.real();
      block.rm_im[n * count + i] = g_rm.imag();
    }
  }
}

ChannelRealization draw_channel(const ScenarioConfig& cfg, const SlotGeometry& geom,
                                const PhaseVector& phases, const DrawKey& key,
                                bool with_components) {
  check_phase_length(cfg, phases);
  const auto c = slot_channel(cfg, geom);
  CounterStream stream(key.seed, StreamPurpose::channel, static_cast<std::uint64_t>(geom.t), key.trial);

  const cplx g_bm = link_gaussian(stream, link_id_bm());
  // Same operation order as kernels::synthesize so both paths agree exactly.
  double h_re = c.direct_los.real() + c.direct_nlos * g_bm.real();
  double h_im = c.direct_los.imag() + c.direct_nlos * g_bm.imag();

  std::array<cplx, 6> parts{};
  parts[0] = c.direct_los;
  parts[1] = c.direct_nlos * g_bm;

  for (std::size_t n = 0; n < c.elements; ++n) {
    const cplx g_br = link_gaussian(stream, link_id_br(n));
    const cplx g_rm = link_gaussian(stream, link_id_rm(n));
    const double theta = phases.radians(n);
    const double sr = std::cos(theta), si = std::sin(theta);

    const double xr = c.rm_los.real() + c.rm_nlos * g_rm.real();
    const double xi = c.rm_los.imag() + c.rm_nlos * g_rm.imag();
    const double yr = c.br_los.real() + c.br_nlos * g_br.real();
    const double yi = c.br_los.imag() + c.br_nlos * g_br.imag();
    const double pr = xr * yr - xi * yi;
    const double pi = xr * yi + xi * yr;
    h_re += sr * pr - si * pi;
    h_im += sr * pi + si * pr;

    if (with_components) {
      const cplx steer(sr, si);
      const cplx rm_nlos = c.rm_nlos * g_rm;
      const cplx br_nlos = c.br_nlos * g_br;
      parts[2] += steer * (c.rm_los * c.br_los);
      parts[3] += steer * (c.rm_los * br_nlos);
      parts[4] += steer * (rm_nlos * c.br_los);
      parts[5] += steer * (rm_nlos * br_nlos);
    }
  }

  ChannelRealization out;
  out.h = {h_re, h_im};
  if (with_components) out.components = parts;
  return out;
}

}  // namespace rishst
