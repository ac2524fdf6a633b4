#include <sstream>

#include "chiral_tmm/errors.hpp"
#include "chiral_tmm/scenario.hpp"

namespace chiral_tmm {

namespace {

enum class Family { CnDielectric, CnCn };

struct PresetParams {
  int figure;
  Family family;
  double kappa_h;
  double kappa_l;
  SweepAxis axis;
  double theta_deg;  // frequency sweeps
  double f_over_f0;  // angle sweeps
  const char* observable;
};

// Published parameters per figure. Figures 14-15 list exactly the parameters
// of 12-13 and are kept as listed. Figures 8-9 leave mu unstated; the value
// 1e-5 given for the same structure in Figures 10-15 is used.
constexpr PresetParams kPresets[] = {
    {2, Family::CnDielectric, 0.167, 0.0, SweepAxis::Frequency, 0.0, 1.0, "reflected power vs frequency"},
    {3, Family::CnDielectric, 0.167, 0.0, SweepAxis::Frequency, 0.0, 1.0, "transmitted power vs frequency"},
    {4, Family::CnDielectric, 0.1, 0.1, SweepAxis::Frequency, 70.0, 1.0, "reflected power vs frequency"},
    {5, Family::CnDielectric, 0.1, 0.1, SweepAxis::Frequency, 70.0, 1.0, "transmitted power vs frequency"},
    {6, Family::CnDielectric, 0.1, 0.0, SweepAxis::Angle, 0.0, 1.0, "reflected power vs angle"},
    {7, Family::CnDielectric, 0.1, 0.0, SweepAxis::Angle, 0.0, 1.0, "transmitted power vs angle"},
    {8, Family::CnCn, 0.1, 0.1, SweepAxis::Frequency, 0.0, 1.0, "reflected power vs frequency"},
    {9, Family::CnCn, 0.1, 0.1, SweepAxis::Frequency, 0.0, 1.0, "transmitted power vs frequency"},
    {10, Family::CnCn, 0.1, 0.1, SweepAxis::Frequency, 45.0, 1.0, "reflected power vs frequency"},
    {11, Family::CnCn, 0.1, 0.1, SweepAxis::Frequency, 15.0, 1.0, "transmitted power vs frequency"},
    {12, Family::CnCn, 0.1, 0.1, SweepAxis::Angle, 0.0, 1.0, "reflected power vs angle"},
    {13, Family::CnCn, 0.1, 0.1, SweepAxis::Angle, 0.0, 1.0, "transmitted power vs angle"},
    {14, Family::CnCn, 0.1, 0.1, SweepAxis::Angle, 0.0, 1.0, "reflected power vs angle"},
    {15, Family::CnCn, 0.1, 0.1, SweepAxis::Angle, 0.0, 1.0, "transmitted power vs angle"},
};

PresetInfo make_preset(const PresetParams& p) {
  PresetInfo info;
  info.figure = p.figure;
  info.name = "fig" + std::to_string(p.figure);

  std::ostringstream yaml;
  std::ostringstream summary;
  yaml << "name: " << info.name << "\n"
       << "reference_frequency_hz: 1.0e12\n"
       << "materials:\n"
       << "  cn_h: {eps_r: 1.6e-4, mu_r: 1.0e-5, kappa: " << p.kappa_h
       << ", thickness: lambda0/4}\n";
  if (p.family == Family::CnDielectric) {
    yaml << "  dielectric: {n: 2.2, kappa: " << p.kappa_l << ", thickness: lambda0/(4n)}\n"
         << "structure:\n  periodic: {a: cn_h, b: dielectric, slab_count: 5}\n";
    summary << "CN-dielectric: eps_H=1.6e-4, mu_H=1e-5, n_L=2.2, d_H=|n_L|d_L=lambda0/4, kappa_H="
            << p.kappa_h;
    if (p.kappa_l != 0.0) summary << ", kappa_L=" << p.kappa_l;
  } else {
    yaml << "  cn_l: {eps_r: 2.5e-5, mu_r: 1.0e-5, kappa: " << p.kappa_l
         << ", thickness: lambda0/4}\n"
         << "structure:\n  periodic: {a: cn_h, b: cn_l, slab_count: 5}\n";
    summary << "CN-CN: eps_H=1.6e-4, eps_L=2.5e-5, mu_H=mu_L=1e-5, d_H=d_L=lambda0/4, kappa_H=kappa_L="
            << p.kappa_h;
  }
  yaml << "sweep:\n";
  if (p.axis == SweepAxis::Frequency) {
    yaml << "  axis: frequency\n  start_hz: 0.05e12\n  stop_hz: 4.0e12\n  points: "
         << kDefaultFrequencyPoints << "\n  theta_deg: " << p.theta_deg << "\n";
    summary << ", theta_i=" << p.theta_deg << " deg, frequency sweep";
  } else {
    yaml << "  axis: angle\n  start_deg: 0\n  stop_deg: 90\n  include_stop: false\n  points: "
         << kDefaultAnglePoints << "\n  f_over_f0: " << p.f_over_f0 << "\n";
    summary << ", f/f0=" << p.f_over_f0 << ", angle sweep";
  }
  yaml << "incident: parallel\n"
       << "engine: cascade\n";
  summary << " (" << p.observable << ")";
  info.config = yaml.str();
  info.summary = summary.str();
  return info;
}

}  // namespace

const std::vector<PresetInfo>& list_presets() {
  static const std::vector<PresetInfo> presets = [] {
    std::vector<PresetInfo> v;
    for (const PresetParams& p : kPresets) v.push_back(make_preset(p));
    return v;
  }();
  return presets;
}

const PresetInfo& find_preset(std::string_view name) {
  for (const PresetInfo& p : list_presets()) {
    if (p.name == name) return p;
  }
  throw Error(ErrorKind::Config, "unknown preset '" + std::string(name) + "'");
}

}  // namespace chiral_tmm
