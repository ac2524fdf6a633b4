#include "chiral_tmm/direct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/LU>

#include "chiral_tmm/errors.hpp"

namespace chiral_tmm::direct {

namespace {

using Index = Eigen::Index;

// Tangential field (E_x, E_y, eta0 H_x, eta0 H_y) of each wave of one medium,
// together with the per-wave phase factor across the slab.
struct SlabWaves {
  Eigen::Matrix4cd columns;
  Eigen::Vector4cd decay;  // e^{-j k_z d} for every wave (forward and backward alike)
};

SlabWaves slab_waves(const Layer& layer, double freq_hz, double theta_i) {
  layer.validate();
  const EigenwaveKinematics kin = kinematics(layer.material, freq_hz, theta_i);
  const EigenwaveTemplate tpl = eigenwave_templates(layer.material, kin);
  SlabWaves s;
  for (Index w = 0; w < 4; ++w) {
    const auto& e = tpl.electric[static_cast<std::size_t>(w)];
    const auto& h = tpl.magnetic[static_cast<std::size_t>(w)];
    s.columns(0, w) = e(0);
    s.columns(1, w) = e(1);
    s.columns(2, w) = kEta0 * h(0);
    s.columns(3, w) = kEta0 * h(1);
  }
  const cplx j(0.0, 1.0);
  const cplx phase_l = std::exp(-j * kin.kz_left * layer.thickness);
  const cplx phase_r = std::exp(-j * kin.kz_right * layer.thickness);
  s.decay << phase_l, phase_r, phase_l, phase_r;
  return s;
}

// Air waves written out explicitly for TM (par) and TE (perp) plane waves;
// H follows from eta0 H = k_hat x E.
struct AirWaves {
  Eigen::Matrix<cplx, 4, 2> forward;   // (par, perp), propagating toward +z
  Eigen::Matrix<cplx, 4, 2> backward;  // (par, perp), propagating toward -z
};

AirWaves air_waves(double theta_i) {
  const double c = std::cos(theta_i);
  AirWaves a;
  // forward par: E = (c, 0, s), eta0 H = (0, 1, 0)
  // forward perp: E = (0, 1, 0), eta0 H = (-c, 0, -s)
  a.forward << c, 0.0,
               0.0, 1.0,
               0.0, -c,
               1.0, 0.0;
  // backward par: E = (c, 0, -s), eta0 H = (0, -1, 0)
  // backward perp: E = (0, 1, 0), eta0 H = (c, 0, -s)
  a.backward << c, 0.0,
                0.0, 1.0,
                0.0, c,
                -1.0, 0.0;
  return a;
}

Index slab_offset(std::size_t m) { return 2 + 4 * static_cast<Index>(m); }

// Field of slab m at its left (at_left = true) or right face.
Eigen::Vector4cd slab_field(const SlabWaves& w, const Eigen::VectorXcd& x, std::size_t m,
                            bool at_left) {
  Eigen::Vector4cd amps = x.segment<4>(slab_offset(m));
  if (at_left) {
    amps(2) *= w.decay(2);
    amps(3) *= w.decay(3);
  } else {
    amps(0) *= w.decay(0);
    amps(1) *= w.decay(1);
  }
  return w.columns * amps;
}

}  // namespace

GlobalSystem assemble_global_system(const Stack& stack, double freq_hz, double theta_i,
                                    const Vector2c& incident) {
  if (!(theta_i >= 0.0) || !(theta_i < kPi / 2.0)) {
    throw Error(ErrorKind::InvalidInput, "incidence angle must lie in [0, pi/2)");
  }
  const std::size_t n = stack.size();
  const Index dim = 4 * static_cast<Index>(n) + 4;
  const AirWaves air = air_waves(theta_i);

  std::vector<SlabWaves> waves;
  waves.reserve(n);
  for (const Layer& l : stack.layers()) waves.push_back(slab_waves(l, freq_hz, theta_i));

  GlobalSystem sys;
  sys.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  sys.rhs = Eigen::VectorXcd::Zero(dim);
  const Index t_col = dim - 2;

  // Interface q sits between medium q-1 (air for q = 0) and medium q (exit air
  // for q = n). Rows 4q..4q+3: fields on the left minus fields on the right.
  for (std::size_t q = 0; q <= n; ++q) {
    const Index row = 4 * static_cast<Index>(q);

    if (q == 0) {
      sys.matrix.block<4, 2>(row, 0) = air.backward;
      sys.rhs.segment<4>(row) = -air.forward * incident;
    } else {
      const SlabWaves& w = waves[q - 1];
      const Index col = slab_offset(q - 1);
      for (Index k = 0; k < 4; ++k) {
        const cplx factor = k < 2 ? w.decay(k) : cplx(1.0);
        sys.matrix.block<4, 1>(row, col + k) = factor * w.columns.col(k);
      }
    }

    if (q == n) {
      sys.matrix.block<4, 2>(row, t_col) = -air.forward;
    } else {
      const SlabWaves& w = waves[q];
      const Index col = slab_offset(q);
      for (Index k = 0; k < 4; ++k) {
        const cplx factor = k < 2 ? cplx(1.0) : w.decay(k);
        sys.matrix.block<4, 1>(row, col + k) = -factor * w.columns.col(k);
      }
    }
  }
  return sys;
}

DirectSolution solve_direct(const Stack& stack, double freq_hz, double theta_i,
                            const Vector2c& incident) {
  if (!(incident.norm() > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "incident amplitude must be nonzero");
  }
  const GlobalSystem sys = assemble_global_system(stack, freq_hz, theta_i, incident);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.matrix);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    std::ostringstream os;
    os << "resonance singularity: global system reciprocal condition " << rcond;
    throw Error(ErrorKind::ResonanceSingularity, os.str());
  }
  DirectSolution sol;
  sol.unknowns = lu.solve(sys.rhs);
  if (!sol.unknowns.allFinite()) {
    throw Error(ErrorKind::ResonanceSingularity, "global system produced non-finite amplitudes");
  }
  const Index dim = sol.unknowns.size();
  const Vector2c r = sol.unknowns.head<2>();
  const Vector2c t = sol.unknowns.segment<2>(dim - 2);
  sol.response = make_response(incident, r, t);
  return sol;
}

double field_residual(const Stack& stack, double freq_hz, double theta_i,
                      const DirectSolution& solution) {
  const std::size_t n = stack.size();
  const Eigen::VectorXcd& x = solution.unknowns;
  const AirWaves air = air_waves(theta_i);
  std::vector<SlabWaves> waves;
  waves.reserve(n);
  for (const Layer& l : stack.layers()) waves.push_back(slab_waves(l, freq_hz, theta_i));

  const Eigen::Vector4cd incident_field = air.forward * solution.response.incident;
  const double incident_scale = incident_field.cwiseAbs().maxCoeff();

  double worst = 0.0;
  for (std::size_t q = 0; q <= n; ++q) {
    const Eigen::Vector4cd left =
        q == 0 ? Eigen::Vector4cd(incident_field + air.backward * x.head<2>())
               : slab_field(waves[q - 1], x, q - 1, false);
    const Eigen::Vector4cd right =
        q == n ? Eigen::Vector4cd(air.forward * x.tail<2>()) : slab_field(waves[q], x, q, true);
    const double scale = std::max({left.cwiseAbs().maxCoeff(), right.cwiseAbs().maxCoeff(),
                                   incident_scale});
    worst = std::max(worst, (left - right).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

}  // namespace chiral_tmm::direct
