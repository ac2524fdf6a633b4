#pragma once

// Shared test fixtures: random lossless scenarios and closed-form oracles that
// do not touch the transfer-matrix code.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "chiral_tmm/constants.hpp"
#include "chiral_tmm/tmm.hpp"

namespace chiral_tmm::testing {

struct RandomScenario {
  Stack stack = Stack::air_only();
  double freq_hz = 1e12;
  double theta_deg = 0.0;
};

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline MaterialParams random_material(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> kappa(-0.5, 0.5);
  MaterialParams m;
  m.eps_r = log_uniform(rng, 1e-5, 10.0);
  m.mu_r = log_uniform(rng, 1e-5, 5.0);
  m.kappa = kappa(rng);
  return m;
}

// Slab thickness range for randomized stacks, meters.
inline constexpr double kRandomThicknessMin = 1e-6;
inline constexpr double kRandomThicknessMax = 20e-6;

/// Lossless scenario: 1-7 slabs, eps_r in [1e-5, 10] and mu_r in [1e-5, 5]
/// (log-uniform), kappa in [-0.5, 0.5], f in [0.1, 4] THz, theta in [0, 85] deg.
inline RandomScenario random_scenario(std::mt19937_64& rng, int max_slabs = 7) {
  std::uniform_int_distribution<int> count(1, max_slabs);
  std::uniform_real_distribution<double> thick(kRandomThicknessMin, kRandomThicknessMax);
  std::uniform_real_distribution<double> freq(0.1e12, 4e12);
  std::uniform_real_distribution<double> theta(0.0, 85.0);
  std::vector<Layer> layers;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) layers.push_back({random_material(rng), thick(rng)});
  RandomScenario s;
  s.stack = Stack(std::move(layers));
  s.freq_hz = freq(rng);
  s.theta_deg = theta(rng);
  return s;
}

/// Normal-incidence Airy formulas for one achiral slab (index n_slab,
/// relative impedance z_slab) in air. Returns {r, t} with t referenced to
/// the exit face.
inline std::pair<cplx, cplx> airy_slab(cplx n_slab, cplx z_slab, double thickness,
                                       double freq_hz) {
  const cplx z_air = 1.0;
  const cplx r12 = (z_slab - z_air) / (z_slab + z_air);
  const cplx t12 = 2.0 * z_slab / (z_slab + z_air);
  const cplx r23 = (z_air - z_slab) / (z_air + z_slab);
  const cplx t23 = 2.0 * z_air / (z_air + z_slab);
  const cplx j(0.0, 1.0);
  const cplx delta = free_space_wavenumber(freq_hz) * n_slab * thickness;
  const cplx round_trip = std::exp(-2.0 * j * delta);
  const cplx denom = 1.0 + r12 * r23 * round_trip;
  return {(r12 + r23 * round_trip) / denom, t12 * t23 * std::exp(-j * delta) / denom};
}

}  // namespace chiral_tmm::testing
