#include "chiral_tmm/report.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace chiral_tmm {

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 9);
  return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << kCsvHeader << '\n';
  for (const SweepRow& r : result.rows) {
    const PowerBreakdown& p = r.power;
    out << format_number(r.frequency_hz) << ',' << format_number(r.theta_deg) << ','
        << format_number(p.r_co) << ',' << format_number(p.r_cross) << ','
        << format_number(p.t_co) << ',' << format_number(p.t_cross) << ','
        << format_number(p.r_total) << ',' << format_number(p.t_total) << ','
        << (r.rotation_deg ? format_number(*r.rotation_deg) : std::string()) << ','
        << format_number(p.conservation_residual) << '\n';
  }
}

std::string csv_text(const SweepResult& result) {
  std::ostringstream os;
  write_csv(os, result);
  return os.str();
}

std::string config_hash(std::string_view config_text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config_text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string manifest_json(const RunInfo& info, const SweepResult& result) {
  nlohmann::ordered_json j;
  j["tool"] = "chiral-tmm";
  j["tool_version"] = kToolVersion;
  j["csv_schema_version"] = kCsvSchemaVersion;
  j["csv_header"] = kCsvHeader;
  j["scenario"] = info.scenario;
  j["config_hash"] = config_hash(info.config_text);
  j["engine"] = to_string(info.engine);
  j["threads"] = info.threads;
  j["csv"] = info.csv_path;
  j["points"] = result.points;
  j["rows"] = result.rows.size();
  j["failure_count"] = result.failures.size();
  auto failures = nlohmann::ordered_json::array();
  for (const PointFailure& f : result.failures) {
    failures.push_back({{"index", f.index},
                        {"frequency_hz", f.frequency_hz},
                        {"theta_deg", f.theta_deg},
                        {"kind", f.kind},
                        {"message", f.message}});
  }
  j["failures"] = std::move(failures);
  return j.dump(2) + "\n";
}

}  // namespace chiral_tmm
