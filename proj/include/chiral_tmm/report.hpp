#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "chiral_tmm/spectra.hpp"

namespace chiral_tmm {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr int kCsvSchemaVersion = 1;
inline constexpr std::string_view kCsvHeader =
    "frequency_hz,theta_deg,R_co,R_cross,T_co,T_cross,R_total,T_total,rotation_deg,"
    "conservation_residual";

/// Nine significant digits, '.' separator, independent of the global locale.
std::string format_number(double value);

/// Header plus one '\n'-terminated line per successful row. An undefined
/// rotation is written as an empty field.
void write_csv(std::ostream& out, const SweepResult& result);
std::string csv_text(const SweepResult& result);

/// 64-bit FNV-1a of the configuration text, as "fnv1a64:<16 hex digits>".
std::string config_hash(std::string_view config_text);

struct RunInfo {
  std::string scenario;
  std::string config_text;
  std::string csv_path;
  Engine engine = Engine::Cascade;
  int threads = 1;
};

/// JSON run manifest: config hash, engine, failure count and details, tool
/// and schema versions.
std::string manifest_json(const RunInfo& info, const SweepResult& result);

}  // namespace chiral_tmm
