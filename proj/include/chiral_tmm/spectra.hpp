#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chiral_tmm/tmm.hpp"

namespace chiral_tmm {

/// Powers normalized to the incident power. Both half-spaces are air and the
/// transmitted wave leaves at the incidence angle, so no obliquity factor
/// enters.
struct PowerBreakdown {
  double r_co = 0.0;
  double r_cross = 0.0;
  double t_co = 0.0;
  double t_cross = 0.0;
  double r_total = 0.0;
  double t_total = 0.0;
  double conservation_residual = 0.0;  // |R + T - 1|
};

PowerBreakdown powers(const Response& resp);

/// Transmitted power below which rotation is undefined.
inline constexpr double kMinRotationTransmission = 1e-12;

/// Azimuth rotation atan2(|t_cross|, |t_co|) in degrees, within [0, 90].
/// Throws NegligibleTransmission when T_total <= kMinRotationTransmission.
double rotation_angle(const Response& resp);

enum class SweepAxis { Frequency, Angle };
enum class Engine { Cascade, Direct };

const char* to_string(SweepAxis axis);
const char* to_string(Engine engine);

/// One swept axis plus the fixed value of the other. Frequencies in Hz,
/// angles in degrees.
struct SweepGrid {
  SweepAxis axis = SweepAxis::Frequency;
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  bool include_stop = true;  // false: half-open [start, stop)
  double fixed = 0.0;        // theta_deg for frequency sweeps, Hz for angle sweeps

  /// Throws InvalidInput when the grid leaves f > 0 or 0 <= theta < 90.
  void validate() const;
  double value(int i) const;
  double frequency_hz(int i) const { return axis == SweepAxis::Frequency ? value(i) : fixed; }
  double theta_deg(int i) const { return axis == SweepAxis::Angle ? value(i) : fixed; }
};

/// Evenly spaced grid. count == 1 evaluates `start` only.
SweepGrid frequency_grid(double start_hz, double stop_hz, int count, double theta_deg);
SweepGrid angle_grid(double start_deg, double stop_deg, int count, double freq_hz,
                     bool include_stop = true);

struct SweepRow {
  double frequency_hz = 0.0;
  double theta_deg = 0.0;
  PowerBreakdown power;
  /// Empty when the transmitted power is too small for a rotation.
  std::optional<double> rotation_deg;
};

struct PointFailure {
  int index = 0;
  double frequency_hz = 0.0;
  double theta_deg = 0.0;
  std::string kind;
  std::string message;
};

struct SweepResult {
  std::vector<SweepRow> rows;          // successful points, grid order
  std::vector<PointFailure> failures;  // grid order
  int points = 0;
};

/// Single grid point through the chosen engine.
Response evaluate(const Stack& stack, double freq_hz, double theta_deg,
                  const Vector2c& incident, Engine engine = Engine::Cascade);

SweepRow make_row(double freq_hz, double theta_deg, const Response& resp);

/// Evaluates every grid point; threads <= 0 picks the hardware concurrency.
/// Output order is the grid order whatever the thread count.
SweepResult run_sweep(const Stack& stack, const SweepGrid& grid, const Vector2c& incident,
                      Engine engine = Engine::Cascade, int threads = 1);

}  // namespace chiral_tmm
