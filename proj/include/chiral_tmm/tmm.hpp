#pragma once

#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "chiral_tmm/media.hpp"

namespace chiral_tmm {

using Matrix4c = Eigen::Matrix<cplx, 4, 4>;
using Matrix4x2c = Eigen::Matrix<cplx, 4, 2>;
using Matrix2c = Eigen::Matrix<cplx, 2, 2>;
using Vector4c = Eigen::Matrix<cplx, 4, 1>;
using Vector2c = Eigen::Matrix<cplx, 2, 1>;

/// Condition-number ceiling for every linear solve in the cascade.
inline constexpr double kConditionLimit = 1e12;
/// Largest |Im(k_z d)| allowed before exponentiation.
inline constexpr double kEvanescentExponentLimit = 700.0;

struct Layer {
  MaterialParams material;
  double thickness = 0.0;  // m

  void validate() const;
};

/// Odd periodic arrangement A B A ... A with `periods` full AB periods, so
/// slab_count = 2 * periods + 1.
struct PeriodicSpec {
  Layer a;
  Layer b;
  int periods = 0;

  int slab_count() const { return 2 * periods + 1; }
};

/// Ordered slabs between two air half-spaces.
class Stack {
 public:
  /// Arbitrary non-empty sequence.
  explicit Stack(std::vector<Layer> layers);

  /// The trivial stack: air meets air.
  static Stack air_only();

  /// A B A B ... A with slab_count odd and >= 1.
  static Stack periodic(const Layer& a, const Layer& b, int slab_count);

  const std::vector<Layer>& layers() const { return layers_; }
  const std::optional<PeriodicSpec>& periodic_spec() const { return periodic_; }
  bool empty() const { return layers_.empty(); }
  std::size_t size() const { return layers_.size(); }

  /// Same slabs in the opposite order (periodic structure is kept).
  Stack reversed() const;

 private:
  Stack() = default;
  std::vector<Layer> layers_;
  std::optional<PeriodicSpec> periodic_;
};

/// Air on the incidence side: waves (E_i par, E_i perp, E_r par, E_r perp).
struct IncidenceAir {};
/// Air on the exit side: waves (E_t par, E_t perp, backward par, backward perp).
struct ExitAir {};
using Medium = std::variant<IncidenceAir, ExitAir, MaterialParams>;

/// Columns are the tangential fields (E_x, E_y, eta0 H_x, eta0 H_y) at the
/// interface plane of the four unit waves of `medium`, in that medium's
/// amplitude ordering.
Matrix4c field_matrix(const Medium& medium, double freq_hz, double theta_i);

/// M with v_left = M v_right across one interface (M = C_left^-1 C_right).
/// Throws SingularInterface when C_left is numerically degenerate.
Matrix4c matching_matrix(const Medium& left, const Medium& right, double freq_hz,
                         double theta_i);

/// Advances slab amplitudes from the entry face to the exit face:
/// diag(e^{-j kzL d}, e^{-j kzR d}, e^{+j kzL d}, e^{+j kzR d}).
Matrix4c propagation_matrix(const Layer& layer, double freq_hz, double theta_i);

/// Inverse of propagation_matrix: maps exit-face amplitudes back to the entry
/// face. This is the factor P_A, P_B that appears in the left-to-right cascade
/// v_incident = M1 P_A ... M2 v_transmitted.
Matrix4c reverse_propagation_matrix(const Layer& layer, double freq_hz, double theta_i);

/// Total transfer matrix T with (E_i par, E_i perp, E_r par, E_r perp) = T (E_t par, E_t perp).
/// Periodic stacks use T = M1 P_A (M_AB P_B M_BA P_A)^m M2; others the
/// plain interface-by-interface product.
Matrix4x2c assemble_transfer(const Stack& stack, double freq_hz, double theta_i);
Matrix4x2c assemble_transfer_general(const Stack& stack, double freq_hz, double theta_i);
Matrix4x2c assemble_transfer_periodic(const PeriodicSpec& spec, double freq_hz,
                                      double theta_i);

/// Complex coefficients in the (par, perp) basis and relative to the incident
/// polarization. For incident (1, 0) co = par and cross = perp.
struct Response {
  Vector2c incident;
  Vector2c reflected;    // (E_r par, E_r perp)
  Vector2c transmitted;  // (E_t par, E_t perp)
  cplx r_co;
  cplx r_cross;
  cplx t_co;
  cplx t_cross;
};

/// Projects reflected/transmitted amplitudes onto the incident polarization
/// and its orthogonal complement.
Response make_response(const Vector2c& incident, const Vector2c& reflected,
                       const Vector2c& transmitted);

/// t = T_top^-1 e_i, r = T_bottom t. Throws ResonanceSingularity when
/// cond(T_top) exceeds kConditionLimit.
Response solve_coefficients(const Matrix4x2c& transfer, const Vector2c& incident);

/// assemble_transfer + solve_coefficients.
Response evaluate_cascade(const Stack& stack, double freq_hz, double theta_i,
                          const Vector2c& incident);

}  // namespace chiral_tmm
