#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Core>

#include "chiral_tmm/constants.hpp"

namespace chiral_tmm {

using Vec3c = Eigen::Matrix<cplx, 3, 1>;

/// Isotropic reciprocal chiral medium. Permittivity and permeability are
/// relative to vacuum; kappa is the dimensionless chirality (Pasteur)
/// parameter entering D = eps E - j kappa sqrt(eps0 mu0) H and
/// B = mu H + j kappa sqrt(eps0 mu0) E.
///
/// Chiral nihility is modelled with small but finite eps_r, mu_r; exact zeros
/// are rejected by validate().
struct MaterialParams {
  cplx eps_r{1.0, 0.0};
  cplx mu_r{1.0, 0.0};
  double kappa = 0.0;

  static MaterialParams air() { return {}; }
  static MaterialParams dielectric(double refractive_index) {
    return {cplx(refractive_index * refractive_index, 0.0), cplx(1.0, 0.0), 0.0};
  }

  bool lossless() const { return eps_r.imag() == 0.0 && mu_r.imag() == 0.0; }

  /// Average refractive index sqrt(eps_r mu_r), principal branch.
  cplx refractive_index() const;

  /// Throws Error(InvalidInput) for zero or non-finite parameters.
  void validate() const;

  friend bool operator==(const MaterialParams&, const MaterialParams&) = default;
};

/// Principal square root: non-negative real part; on the imaginary axis the
/// root with non-positive imaginary part is returned.
cplx principal_sqrt(cplx z);

struct CircularWavenumbers {
  cplx k_left;
  cplx k_right;
};

/// k_L = k0 (sqrt(eps_r mu_r) - kappa), k_R = k0 (sqrt(eps_r mu_r) + kappa).
/// For chiral nihility k_L is negative (backward wave).
CircularWavenumbers circular_wavenumbers(const MaterialParams& mat, double freq_hz);

/// Per-medium wavevector bookkeeping at one frequency and incidence angle.
///
/// Every wave carries the phase factor exp[-j(+-k_z z - k_x x)], so k_x is the
/// shared tangential wavenumber k0 sin(theta_i). Angles inside the medium are
/// never formed; the longitudinal components are chosen with Im(k_z) <= 0
/// (and Re(k_z) >= 0 when k_z is real).
struct EigenwaveKinematics {
  double freq_hz = 0.0;
  cplx k_left;
  cplx k_right;
  double k_x = 0.0;
  cplx kz_left;
  cplx kz_right;
  cplx eta;  // wave impedance sqrt(mu/eps), ohm
};

/// Longitudinal wavenumber sqrt(k^2 - k_x^2) on the decaying branch.
cplx longitudinal_wavenumber(cplx k, double k_x);

/// theta_i is the incidence angle in air, radians, in [0, pi/2).
EigenwaveKinematics kinematics(const MaterialParams& mat, double freq_hz, double theta_i);

/// Global eigenwave ordering for slab amplitudes: forward LCP, forward RCP,
/// backward LCP, backward RCP.
enum class Eigenwave : std::size_t { LeftForward = 0, RightForward = 1, LeftBackward = 2, RightBackward = 3 };

inline constexpr std::array<Eigenwave, 4> kEigenwaves = {
    Eigenwave::LeftForward, Eigenwave::RightForward, Eigenwave::LeftBackward,
    Eigenwave::RightBackward};

/// Unit-amplitude field polarizations of the four eigenwaves of one medium.
///
/// Electric vectors follow the circular forms
///   L+ : x k_z/k + z k_x/k + j y        R+ : x k_z/k + z k_x/k - j y
///   L- : -x k_z/k + z k_x/k + j y       R- : -x k_z/k + z k_x/k - j y
/// and magnetic vectors are H = -jE/eta for LCP and H = +jE/eta for RCP.
struct EigenwaveTemplate {
  std::array<Vec3c, 4> electric;
  std::array<Vec3c, 4> magnetic;  // A/m per V/m, i.e. 1/ohm
  std::array<Vec3c, 4> wavevector;

  const Vec3c& e(Eigenwave w) const { return electric[static_cast<std::size_t>(w)]; }
  const Vec3c& h(Eigenwave w) const { return magnetic[static_cast<std::size_t>(w)]; }
  const Vec3c& k(Eigenwave w) const { return wavevector[static_cast<std::size_t>(w)]; }
};

EigenwaveTemplate eigenwave_templates(const MaterialParams& mat, const EigenwaveKinematics& kin);

}  // namespace chiral_tmm
