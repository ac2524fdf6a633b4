#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "chiral_tmm/spectra.hpp"
#include "chiral_tmm/tmm.hpp"

namespace chiral_tmm {

/// How a slab thickness is specified in a scenario.
struct ThicknessRule {
  enum class Kind {
    Physical,          // fixed length in meters
    QuarterWave,       // lambda0 / 4
    OpticalQuarterWave // lambda0 / (4 |n|)
  };
  Kind kind = Kind::Physical;
  double meters = 0.0;  // Physical only

  /// Length in meters at reference frequency f0 for a slab of `mat`.
  double resolve(const MaterialParams& mat, double reference_freq_hz) const;
  std::string describe() const;
};

struct NamedLayer {
  std::string material;
  Layer layer;  // resolved
};

/// A fully resolved scenario: the stack is already built.
struct ScenarioConfig {
  std::string name;
  double reference_frequency_hz = 1e12;
  std::map<std::string, MaterialParams> materials;
  std::vector<NamedLayer> layers;  // empty: air only
  bool periodic = false;
  Stack stack = Stack::air_only();
  SweepGrid grid;
  Vector2c incident{1.0, 0.0};
  Engine engine = Engine::Cascade;
};

/// Parses the YAML scenario format (see README). Every problem is reported
/// as Error(Config) with "line N:" when a position is known.
ScenarioConfig parse_config(std::string_view text);

/// Rebuilds stack and layers after materials were edited in place
/// (thickness rules are not re-evaluated; layer lengths are kept).
void rebuild_stack(ScenarioConfig& config);

/// Default grids.
inline constexpr int kDefaultFrequencyPoints = 801;
inline constexpr double kDefaultFrequencyStartHz = 0.05e12;
inline constexpr double kDefaultFrequencyStopHz = 4.0e12;
inline constexpr int kDefaultAnglePoints = 901;

struct PresetInfo {
  std::string name;     // "fig2"
  int figure = 0;
  std::string summary;  // structure and sweep parameters
  std::string config;   // YAML document accepted by parse_config
};

/// Built-in scenarios, one per results figure (2 through 15).
const std::vector<PresetInfo>& list_presets();

/// Throws Error(Config) for an unknown name.
const PresetInfo& find_preset(std::string_view name);

}  // namespace chiral_tmm
