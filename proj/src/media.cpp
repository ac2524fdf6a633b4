#include "chiral_tmm/media.hpp"

#include <cmath>
#include <sstream>

#include "chiral_tmm/errors.hpp"

namespace chiral_tmm {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::SingularInterface: return "singular-interface";
    case ErrorKind::EvanescentOverflow: return "evanescent-overflow";
    case ErrorKind::ResonanceSingularity: return "resonance-singularity";
    case ErrorKind::NegligibleTransmission: return "negligible-transmission";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

cplx principal_sqrt(cplx z) {
  cplx s = std::sqrt(z);
  if (s.real() == 0.0 && s.imag() > 0.0) s = -s;
  return s;
}

cplx MaterialParams::refractive_index() const { return principal_sqrt(eps_r * mu_r); }

void MaterialParams::validate() const {
  if (!finite(eps_r) || !finite(mu_r) || !std::isfinite(kappa)) {
    throw Error(ErrorKind::InvalidInput, "material parameters must be finite");
  }
  if (eps_r == cplx(0.0)) {
    throw Error(ErrorKind::InvalidInput,
                "eps_r must be nonzero (model nihility with a small finite value)");
  }
  if (mu_r == cplx(0.0)) {
    throw Error(ErrorKind::InvalidInput,
                "mu_r must be nonzero (model nihility with a small finite value)");
  }
}

CircularWavenumbers circular_wavenumbers(const MaterialParams& mat, double freq_hz) {
  if (!(freq_hz > 0.0) || !std::isfinite(freq_hz)) {
    std::ostringstream os;
    os << "frequency must be positive and finite, got " << freq_hz;
    throw Error(ErrorKind::InvalidInput, os.str());
  }
  mat.validate();
  const double k0 = free_space_wavenumber(freq_hz);
  const cplx n = mat.refractive_index();
  return {k0 * (n - mat.kappa), k0 * (n + mat.kappa)};
}

cplx longitudinal_wavenumber(cplx k, double k_x) {
  cplx kz = principal_sqrt(k * k - k_x * k_x);
  if (kz.imag() > 0.0 || (kz.imag() == 0.0 && kz.real() < 0.0)) kz = -kz;
  return kz;
}

EigenwaveKinematics kinematics(const MaterialParams& mat, double freq_hz, double theta_i) {
  if (!(theta_i >= 0.0) || !(theta_i < kPi / 2.0)) {
    std::ostringstream os;
    os << "incidence angle must lie in [0, pi/2), got " << theta_i << " rad";
    throw Error(ErrorKind::InvalidInput, os.str());
  }
  const auto [k_left, k_right] = circular_wavenumbers(mat, freq_hz);

  EigenwaveKinematics kin;
  kin.freq_hz = freq_hz;
  kin.k_left = k_left;
  kin.k_right = k_right;
  kin.k_x = free_space_wavenumber(freq_hz) * std::sin(theta_i);
  kin.kz_left = longitudinal_wavenumber(k_left, kin.k_x);
  kin.kz_right = longitudinal_wavenumber(k_right, kin.k_x);
  kin.eta = kEta0 * principal_sqrt(mat.mu_r / mat.eps_r);
  return kin;
}

EigenwaveTemplate eigenwave_templates(const MaterialParams& /*mat*/,
                                      const EigenwaveKinematics& kin) {
  if (kin.k_left == cplx(0.0) || kin.k_right == cplx(0.0)) {
    throw Error(ErrorKind::InvalidInput,
                "null eigenwave (kappa equals sqrt(eps_r mu_r)); circular basis undefined");
  }
  constexpr cplx j(0.0, 1.0);
  EigenwaveTemplate tpl;

  struct Spec {
    cplx k;
    cplx kz;
    double handedness;  // +1 for LCP (+j y), -1 for RCP (-j y)
    double direction;   // +1 forward, -1 backward
  };
  const std::array<Spec, 4> specs = {{
      {kin.k_left, kin.kz_left, +1.0, +1.0},
      {kin.k_right, kin.kz_right, -1.0, +1.0},
      {kin.k_left, kin.kz_left, +1.0, -1.0},
      {kin.k_right, kin.kz_right, -1.0, -1.0},
  }};

  for (std::size_t w = 0; w < specs.size(); ++w) {
    const Spec& s = specs[w];
    Vec3c e;
    e << s.direction * s.kz / s.k, s.handedness * j, kin.k_x / s.k;
    tpl.electric[w] = e;
    // Eigenvector condition K x E = -j k_L E (LCP) or +j k_R E (RCP) fixes
    // the sign of the admittance.
    tpl.magnetic[w] = (-s.handedness * j / kin.eta) * e;
    Vec3c kv;
    kv << -kin.k_x, 0.0, s.direction * s.kz;
    tpl.wavevector[w] = kv;
  }
  return tpl;
}

}  // namespace chiral_tmm
