#include "chiral_tmm/tmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "chiral_tmm/errors.hpp"

namespace chiral_tmm {

void Layer::validate() const {
  material.validate();
  if (!(thickness > 0.0) || !std::isfinite(thickness)) {
    std::ostringstream os;
    os << "layer thickness must be positive and finite, got " << thickness << " m";
    throw Error(ErrorKind::InvalidInput, os.str());
  }
}

Stack::Stack(std::vector<Layer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) {
    throw Error(ErrorKind::InvalidInput, "stack needs at least one layer (use Stack::air_only)");
  }
  for (const Layer& l : layers_) l.validate();
}

Stack Stack::air_only() { return Stack(); }

Stack Stack::periodic(const Layer& a, const Layer& b, int slab_count) {
  if (slab_count < 1 || slab_count % 2 == 0) {
    throw Error(ErrorKind::InvalidInput, "periodic stack must have odd slab count");
  }
  a.validate();
  b.validate();
  Stack s;
  s.layers_.reserve(static_cast<std::size_t>(slab_count));
  for (int i = 0; i < slab_count; ++i) s.layers_.push_back(i % 2 == 0 ? a : b);
  s.periodic_ = PeriodicSpec{a, b, slab_count / 2};
  return s;
}

Stack Stack::reversed() const {
  Stack s = *this;
  std::reverse(s.layers_.begin(), s.layers_.end());
  return s;
}

namespace {

// Tangential components (E_x, E_y, eta0 H_x, eta0 H_y) of a wave.
Vector4c tangential(const Vec3c& e, const Vec3c& eta0_h) {
  return Vector4c(e(0), e(1), eta0_h(0), eta0_h(1));
}

Matrix4c air_field_matrix(double theta_i) {
  // Waves in air, ordered (forward par, forward perp, backward par, backward perp).
  // Wavevectors normalized by k0; eta0 H = k_hat x E.
  const double c = std::cos(theta_i);
  const double s = std::sin(theta_i);
  const Vec3c k_fwd(-s, 0.0, c);
  const Vec3c k_bwd(-s, 0.0, -c);
  const Vec3c e_par_fwd(c, 0.0, s);
  const Vec3c e_par_bwd(c, 0.0, -s);
  const Vec3c e_perp(0.0, 1.0, 0.0);

  Matrix4c m;
  m.col(0) = tangential(e_par_fwd, k_fwd.cross(e_par_fwd));
  m.col(1) = tangential(e_perp, k_fwd.cross(e_perp));
  m.col(2) = tangential(e_par_bwd, k_bwd.cross(e_par_bwd));
  m.col(3) = tangential(e_perp, k_bwd.cross(e_perp));
  return m;
}

Matrix4c material_field_matrix(const MaterialParams& mat, double freq_hz, double theta_i) {
  const EigenwaveKinematics kin = kinematics(mat, freq_hz, theta_i);
  const EigenwaveTemplate tpl = eigenwave_templates(mat, kin);
  Matrix4c m;
  for (std::size_t w = 0; w < 4; ++w) {
    m.col(static_cast<Eigen::Index>(w)) = tangential(tpl.electric[w], kEta0 * tpl.magnetic[w]);
  }
  return m;
}

// 2-norm condition number after scaling every column to unit length. Column
// scaling only relabels amplitudes, so it is removed before judging
// degeneracy.
template <typename Derived>
double equilibrated_condition(const Eigen::MatrixBase<Derived>& a) {
  using Mat = typename Derived::PlainObject;
  Mat scaled = a;
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
    const double n = scaled.col(j).norm();
    if (n > 0.0) scaled.col(j) /= n;
  }
  Eigen::JacobiSVD<Mat> svd(scaled);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

std::array<cplx, 2> longitudinal(const Layer& layer, double freq_hz, double theta_i) {
  const EigenwaveKinematics kin = kinematics(layer.material, freq_hz, theta_i);
  for (cplx kz : {kin.kz_left, kin.kz_right}) {
    const double exponent = std::abs((kz * layer.thickness).imag());
    if (exponent > kEvanescentExponentLimit) {
      std::ostringstream os;
      os << "evanescent overflow: |Im(k_z d)| = " << exponent << " exceeds "
         << kEvanescentExponentLimit;
      throw Error(ErrorKind::EvanescentOverflow, os.str());
    }
  }
  return {kin.kz_left, kin.kz_right};
}

// Zero thickness is accepted here (identity); stacks still require d > 0.
Matrix4c diagonal_phase(const Layer& layer, double freq_hz, double theta_i, double sign) {
  layer.material.validate();
  if (!(layer.thickness >= 0.0) || !std::isfinite(layer.thickness)) {
    throw Error(ErrorKind::InvalidInput, "layer thickness must be non-negative and finite");
  }
  const auto [kzl, kzr] = longitudinal(layer, freq_hz, theta_i);
  const cplx j(0.0, 1.0);
  const double d = layer.thickness;
  Vector4c diag(std::exp(-sign * j * kzl * d), std::exp(-sign * j * kzr * d),
                std::exp(sign * j * kzl * d), std::exp(sign * j * kzr * d));
  return diag.asDiagonal();
}

}  // namespace

Matrix4c field_matrix(const Medium& medium, double freq_hz, double theta_i) {
  if (!(theta_i >= 0.0) || !(theta_i < kPi / 2.0)) {
    throw Error(ErrorKind::InvalidInput, "incidence angle must lie in [0, pi/2)");
  }
  return std::visit(
      [&](const auto& m) -> Matrix4c {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MaterialParams>) {
          return material_field_matrix(m, freq_hz, theta_i);
        } else {
          // Incidence and exit air share one basis: the transmitted parallel
          // wave has the same polarization as the incident one.
          return air_field_matrix(theta_i);
        }
      },
      medium);
}

Matrix4c matching_matrix(const Medium& left, const Medium& right, double freq_hz,
                         double theta_i) {
  const Matrix4c c_left = field_matrix(left, freq_hz, theta_i);
  const Matrix4c c_right = field_matrix(right, freq_hz, theta_i);
  const double cond = equilibrated_condition(c_left);
  if (!(cond <= kConditionLimit)) {
    std::ostringstream os;
    os << "singular interface: eigenwave basis condition number " << cond << " exceeds "
       << kConditionLimit;
    throw Error(ErrorKind::SingularInterface, os.str());
  }
  return c_left.partialPivLu().solve(c_right);
}

Matrix4c propagation_matrix(const Layer& layer, double freq_hz, double theta_i) {
  return diagonal_phase(layer, freq_hz, theta_i, +1.0);
}

Matrix4c reverse_propagation_matrix(const Layer& layer, double freq_hz, double theta_i) {
  return diagonal_phase(layer, freq_hz, theta_i, -1.0);
}

namespace {

// The cascade product is accumulated in extended precision: T-matrix entries
// grow with evanescent decay and impedance contrast while the coefficients
// come from their ratios.
using cplx_ext = std::complex<long double>;
using Matrix4e = Eigen::Matrix<cplx_ext, 4, 4>;
using Matrix4x2e = Eigen::Matrix<cplx_ext, 4, 2>;
using Matrix2e = Eigen::Matrix<cplx_ext, 2, 2>;
using Vector2e = Eigen::Matrix<cplx_ext, 2, 1>;

Matrix4e widen(const Matrix4c& m) { return m.cast<cplx_ext>(); }

Matrix4x2e transfer_general_ext(const Stack& stack, double freq_hz, double theta_i) {
  Medium previous = IncidenceAir{};
  Matrix4e acc = Matrix4e::Identity();
  for (const Layer& layer : stack.layers()) {
    acc = acc * widen(matching_matrix(previous, layer.material, freq_hz, theta_i));
    acc = acc * widen(reverse_propagation_matrix(layer, freq_hz, theta_i));
    previous = layer.material;
  }
  const Matrix4e exit = widen(matching_matrix(previous, ExitAir{}, freq_hz, theta_i));
  return acc * exit.leftCols<2>();
}

Matrix4x2e transfer_periodic_ext(const PeriodicSpec& spec, double freq_hz, double theta_i) {
  const Matrix4e m1 = widen(matching_matrix(IncidenceAir{}, spec.a.material, freq_hz, theta_i));
  const Matrix4e m_ab = widen(matching_matrix(spec.a.material, spec.b.material, freq_hz, theta_i));
  const Matrix4e m_ba = widen(matching_matrix(spec.b.material, spec.a.material, freq_hz, theta_i));
  const Matrix4x2e m2 =
      widen(matching_matrix(spec.a.material, ExitAir{}, freq_hz, theta_i)).leftCols<2>();
  const Matrix4e p_a = widen(reverse_propagation_matrix(spec.a, freq_hz, theta_i));
  const Matrix4e p_b = widen(reverse_propagation_matrix(spec.b, freq_hz, theta_i));

  // T = M1 P_A T1^m M2 with T1 = M_AB P_B M_BA P_A
  const Matrix4e period = m_ab * p_b * m_ba * p_a;
  Matrix4e acc = m1 * p_a;
  for (int i = 0; i < spec.periods; ++i) acc = acc * period;
  return acc * m2;
}

Matrix4x2e transfer_ext(const Stack& stack, double freq_hz, double theta_i) {
  if (const auto& p = stack.periodic_spec(); p && p->periods > 0) {
    return transfer_periodic_ext(*p, freq_hz, theta_i);
  }
  return transfer_general_ext(stack, freq_hz, theta_i);
}

// Exact 2-norm condition number of a 2x2 block from its Frobenius norm and
// determinant: s1^2 + s2^2 = |A|_F^2 and s1 s2 = |det A|.
template <typename Scalar>
long double condition_2x2(const Eigen::Matrix<Scalar, 2, 2>& a) {
  using std::abs;
  const long double fro2 = static_cast<long double>(a.squaredNorm());
  const long double det = static_cast<long double>(abs(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)));
  const long double disc = std::max(0.0L, fro2 * fro2 - 4.0L * det * det);
  const long double smax = std::sqrt((fro2 + std::sqrt(disc)) / 2.0L);
  if (!(det > 0.0L)) return std::numeric_limits<long double>::infinity();
  return smax * smax / det;
}

template <typename Scalar>
std::pair<Vector2c, Vector2c> solve_block(const Eigen::Matrix<Scalar, 4, 2>& transfer,
                                          const Vector2c& incident) {
  using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
  using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
  if (!transfer.allFinite()) {
    throw Error(ErrorKind::ResonanceSingularity, "transfer matrix has non-finite entries");
  }
  const Mat2 top = transfer.template topRows<2>();
  const Mat2 bottom = transfer.template bottomRows<2>();
  const long double cond = condition_2x2(top);
  if (!(cond <= kConditionLimit)) {
    std::ostringstream os;
    os << "resonance singularity: cond(T_top) = " << static_cast<double>(cond) << " exceeds "
       << kConditionLimit;
    throw Error(ErrorKind::ResonanceSingularity, os.str());
  }
  const Vec2 t = top.partialPivLu().solve(incident.cast<Scalar>());
  const Vec2 r = bottom * t;
  return {r.template cast<cplx>(), t.template cast<cplx>()};
}

}  // namespace

Matrix4x2c assemble_transfer(const Stack& stack, double freq_hz, double theta_i) {
  return transfer_ext(stack, freq_hz, theta_i).cast<cplx>();
}

Matrix4x2c assemble_transfer_general(const Stack& stack, double freq_hz, double theta_i) {
  return transfer_general_ext(stack, freq_hz, theta_i).cast<cplx>();
}

Matrix4x2c assemble_transfer_periodic(const PeriodicSpec& spec, double freq_hz,
                                      double theta_i) {
  return transfer_periodic_ext(spec, freq_hz, theta_i).cast<cplx>();
}

Response make_response(const Vector2c& incident, const Vector2c& reflected,
                       const Vector2c& transmitted) {
  const double norm = incident.norm();
  if (!(norm > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "incident amplitude must be nonzero");
  }
  const Vector2c co = incident / norm;
  const Vector2c cross(-std::conj(co(1)), std::conj(co(0)));

  Response r;
  r.incident = incident;
  r.reflected = reflected;
  r.transmitted = transmitted;
  r.r_co = co.dot(reflected);  // dot() conjugates the left operand
  r.r_cross = cross.dot(reflected);
  r.t_co = co.dot(transmitted);
  r.t_cross = cross.dot(transmitted);
  return r;
}

Response solve_coefficients(const Matrix4x2c& transfer, const Vector2c& incident) {
  const auto [r, t] = solve_block(transfer, incident);
  return make_response(incident, r, t);
}

Response evaluate_cascade(const Stack& stack, double freq_hz, double theta_i,
                          const Vector2c& incident) {
  if (!(incident.norm() > 0.0)) {
    throw Error(ErrorKind::InvalidInput, "incident amplitude must be nonzero");
  }
  const auto [r, t] = solve_block(transfer_ext(stack, freq_hz, theta_i), incident);
  return make_response(incident, r, t);
}

}  // namespace chiral_tmm
