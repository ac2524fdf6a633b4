#pragma once

#include <Eigen/Core>

#include "chiral_tmm/tmm.hpp"

namespace chiral_tmm::direct {

/// Reference solver: all tangential boundary conditions of an N-slab stack
/// assembled into one (4N+4) x (4N+4) system and solved at once.
///
/// Unknown layout: (E_r par, E_r perp, a_1, ..., a_N, E_t par, E_t perp), where
/// a_m = (L+, R+, L-, R-) amplitudes of slab m. Forward waves are referenced
/// to the slab's left face and backward waves to its right face, so every
/// phase factor in the system has modulus <= 1 for decaying waves.
struct GlobalSystem {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
};

struct DirectSolution {
  Response response;
  Eigen::VectorXcd unknowns;
};

GlobalSystem assemble_global_system(const Stack& stack, double freq_hz, double theta_i,
                                    const Vector2c& incident);

/// Throws ResonanceSingularity when the global system is numerically singular.
DirectSolution solve_direct(const Stack& stack, double freq_hz, double theta_i,
                            const Vector2c& incident);

/// Largest relative jump of (E_x, E_y, eta0 H_x, eta0 H_y) across any
/// interface, reconstructed from `solution.unknowns`. Each jump is scaled by
/// the larger of the local field magnitude and the incident field magnitude.
double field_residual(const Stack& stack, double freq_hz, double theta_i,
                      const DirectSolution& solution);

}  // namespace chiral_tmm::direct
