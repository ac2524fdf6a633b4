#include "chiral_tmm/scenario.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "chiral_tmm/errors.hpp"

namespace chiral_tmm {

double ThicknessRule::resolve(const MaterialParams& mat, double reference_freq_hz) const {
  const double lambda0 = kSpeedOfLight / reference_freq_hz;
  switch (kind) {
    case Kind::Physical: return meters;
    case Kind::QuarterWave: return lambda0 / 4.0;
    case Kind::OpticalQuarterWave: return lambda0 / (4.0 * std::abs(mat.refractive_index()));
  }
  return 0.0;
}

std::string ThicknessRule::describe() const {
  switch (kind) {
    case Kind::Physical: {
      std::ostringstream os;
      os << meters << " m";
      return os.str();
    }
    case Kind::QuarterWave: return "lambda0/4";
    case Kind::OpticalQuarterWave: return "lambda0/(4n)";
  }
  return "?";
}

namespace {

[[noreturn]] void fail_at(const YAML::Node& node, const std::string& msg) {
  std::ostringstream os;
  const YAML::Mark mark = node.Mark();
  if (!mark.is_null()) os << "line " << mark.line + 1 << ": ";
  os << msg;
  throw Error(ErrorKind::Config, os.str());
}

void require_map(const YAML::Node& node, const std::string& what) {
  if (!node.IsMap()) fail_at(node, what + " must be a mapping");
}

void check_keys(const YAML::Node& map, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) fail_at(kv.first, "unknown key '" + key + "' in " + where);
  }
}

double as_double(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) fail_at(node, what + " must be a number");
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    fail_at(node, what + " must be a number, got '" + node.Scalar() + "'");
  }
}

int as_int(const YAML::Node& node, const std::string& what) {
  const double v = as_double(node, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) fail_at(node, what + " must be an integer");
  return static_cast<int>(v);
}

// Number or [re, im].
cplx as_complex(const YAML::Node& node, const std::string& what) {
  if (node.IsSequence()) {
    if (node.size() != 2) fail_at(node, what + " must be a number or [re, im]");
    return {as_double(node[0], what), as_double(node[1], what)};
  }
  return {as_double(node, what), 0.0};
}

ThicknessRule parse_thickness(const YAML::Node& node) {
  if (!node.IsScalar()) fail_at(node, "thickness must be a length in meters or a quarter-wave rule");
  std::string s = node.Scalar();
  std::erase(s, ' ');
  if (s == "lambda0/4") return {ThicknessRule::Kind::QuarterWave, 0.0};
  if (s == "lambda0/(4n)" || s == "lambda0/4n") return {ThicknessRule::Kind::OpticalQuarterWave, 0.0};
  const double m = as_double(node, "thickness");
  if (!(m > 0.0) || !std::isfinite(m)) fail_at(node, "thickness must be positive");
  return {ThicknessRule::Kind::Physical, m};
}

struct MaterialEntry {
  MaterialParams params;
  std::optional<ThicknessRule> thickness;
};

Layer resolve_layer(const YAML::Node& at, const std::string& name,
                    const std::map<std::string, MaterialEntry>& materials,
                    const std::optional<ThicknessRule>& override_rule, double f0) {
  const auto it = materials.find(name);
  if (it == materials.end()) fail_at(at, "unresolved material '" + name + "'");
  const std::optional<ThicknessRule>& rule = override_rule ? override_rule : it->second.thickness;
  if (!rule) fail_at(at, "no thickness given for material '" + name + "'");
  const double d = rule->resolve(it->second.params, f0);
  if (!(d > 0.0) || !std::isfinite(d)) fail_at(at, "thickness of '" + name + "' does not resolve to a positive length");
  return Layer{it->second.params, d};
}

Vector2c parse_incident(const YAML::Node& node) {
  if (node.IsScalar()) {
    const std::string s = node.Scalar();
    if (s == "parallel") return {1.0, 0.0};
    if (s == "perpendicular") return {0.0, 1.0};
    fail_at(node, "incident must be 'parallel', 'perpendicular' or {par: .., perp: ..}");
  }
  require_map(node, "incident");
  check_keys(node, {"par", "perp"}, "incident");
  const Vector2c v(node["par"] ? as_complex(node["par"], "incident.par") : cplx(0.0),
                   node["perp"] ? as_complex(node["perp"], "incident.perp") : cplx(0.0));
  if (!(v.norm() > 0.0)) fail_at(node, "incident amplitude must be nonzero");
  return v;
}

SweepGrid parse_sweep(const YAML::Node& node, double f0) {
  SweepGrid g;
  if (!node) {
    g = SweepGrid{SweepAxis::Frequency, f0, f0, 1, true, 0.0};
    return g;
  }
  require_map(node, "sweep");
  if (!node["axis"]) fail_at(node, "sweep.axis is required (frequency | angle | point)");
  const std::string axis = node["axis"].as<std::string>();
  auto opt = [&](const char* key, double fallback) {
    return node[key] ? as_double(node[key], std::string("sweep.") + key) : fallback;
  };
  auto fixed_frequency = [&]() {
    if (node["frequency_hz"] && node["f_over_f0"]) {
      fail_at(node, "give either sweep.frequency_hz or sweep.f_over_f0, not both");
    }
    if (node["f_over_f0"]) return as_double(node["f_over_f0"], "sweep.f_over_f0") * f0;
    return opt("frequency_hz", f0);
  };

  if (axis == "frequency") {
    check_keys(node, {"axis", "start_hz", "stop_hz", "points", "theta_deg"}, "sweep");
    g.axis = SweepAxis::Frequency;
    g.start = opt("start_hz", kDefaultFrequencyStartHz);
    g.stop = opt("stop_hz", kDefaultFrequencyStopHz);
    g.count = node["points"] ? as_int(node["points"], "sweep.points") : kDefaultFrequencyPoints;
    g.include_stop = true;
    g.fixed = opt("theta_deg", 0.0);
  } else if (axis == "angle") {
    check_keys(node, {"axis", "start_deg", "stop_deg", "points", "include_stop", "frequency_hz", "f_over_f0"},
               "sweep");
    g.axis = SweepAxis::Angle;
    g.start = opt("start_deg", 0.0);
    g.stop = opt("stop_deg", 90.0);
    g.count = node["points"] ? as_int(node["points"], "sweep.points") : kDefaultAnglePoints;
    g.include_stop = node["include_stop"] ? node["include_stop"].as<bool>() : false;
    g.fixed = fixed_frequency();
  } else if (axis == "point") {
    check_keys(node, {"axis", "theta_deg", "frequency_hz", "f_over_f0"}, "sweep");
    g = SweepGrid{SweepAxis::Frequency, fixed_frequency(), 0.0, 1, true, opt("theta_deg", 0.0)};
    g.stop = g.start;
  } else {
    fail_at(node["axis"], "sweep.axis must be frequency, angle or point");
  }
  try {
    g.validate();
  } catch (const Error& e) {
    fail_at(node, e.what());
  }
  return g;
}

}  // namespace

void rebuild_stack(ScenarioConfig& config) {
  for (NamedLayer& nl : config.layers) nl.layer.material = config.materials.at(nl.material);
  if (config.layers.empty()) {
    config.stack = Stack::air_only();
  } else if (config.periodic) {
    const Layer& a = config.layers[0].layer;
    const Layer& b = config.layers.size() > 1 ? config.layers[1].layer : a;
    config.stack = Stack::periodic(a, b, static_cast<int>(config.layers.size()));
  } else {
    std::vector<Layer> ls;
    for (const NamedLayer& nl : config.layers) ls.push_back(nl.layer);
    config.stack = Stack(std::move(ls));
  }
}

ScenarioConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << "line " << e.mark.line + 1 << ": " << e.msg;
    throw Error(ErrorKind::Config, os.str());
  }
  if (!root.IsMap()) throw Error(ErrorKind::Config, "scenario must be a YAML mapping");

  try {
    check_keys(root, {"name", "reference_frequency_hz", "materials", "structure", "sweep",
                      "incident", "engine"},
               "scenario");
    ScenarioConfig cfg;
    cfg.name = root["name"] ? root["name"].as<std::string>() : "scenario";
    cfg.reference_frequency_hz = root["reference_frequency_hz"]
                                     ? as_double(root["reference_frequency_hz"], "reference_frequency_hz")
                                     : 1e12;
    if (!(cfg.reference_frequency_hz > 0.0)) {
      fail_at(root["reference_frequency_hz"], "reference_frequency_hz must be positive");
    }
    const double f0 = cfg.reference_frequency_hz;

    std::map<std::string, MaterialEntry> materials;
    if (const YAML::Node mats = root["materials"]) {
      require_map(mats, "materials");
      for (const auto& kv : mats) {
        const auto name = kv.first.as<std::string>();
        const YAML::Node& m = kv.second;
        require_map(m, "material '" + name + "'");
        check_keys(m, {"eps_r", "mu_r", "kappa", "n", "thickness"}, "material '" + name + "'");
        MaterialEntry entry;
        if (m["n"]) {
          if (m["eps_r"] || m["mu_r"]) fail_at(m, "material '" + name + "': give n or eps_r/mu_r, not both");
          entry.params = MaterialParams::dielectric(as_double(m["n"], "n"));
        } else {
          if (m["eps_r"]) entry.params.eps_r = as_complex(m["eps_r"], "eps_r");
          if (m["mu_r"]) entry.params.mu_r = as_complex(m["mu_r"], "mu_r");
        }
        if (m["kappa"]) entry.params.kappa = as_double(m["kappa"], "kappa");
        if (m["thickness"]) entry.thickness = parse_thickness(m["thickness"]);
        try {
          entry.params.validate();
        } catch (const Error& e) {
          fail_at(m, "material '" + name + "': " + e.what());
        }
        materials[name] = entry;
      }
    }
    for (const auto& [name, entry] : materials) cfg.materials[name] = entry.params;

    const YAML::Node structure = root["structure"];
    if (!structure || (structure.IsScalar() && structure.Scalar() == "air")) {
      // air only
    } else {
      require_map(structure, "structure");
      check_keys(structure, {"periodic", "layers"}, "structure");
      if (structure["periodic"] && structure["layers"]) {
        fail_at(structure, "structure takes either 'periodic' or 'layers'");
      }
      if (const YAML::Node p = structure["periodic"]) {
        require_map(p, "structure.periodic");
        check_keys(p, {"a", "b", "slab_count"}, "structure.periodic");
        if (!p["a"] || !p["b"] || !p["slab_count"]) {
          fail_at(p, "structure.periodic needs a, b and slab_count");
        }
        const int count = as_int(p["slab_count"], "slab_count");
        if (count < 1 || count % 2 == 0) {
          fail_at(p["slab_count"], "periodic stack must have odd slab count");
        }
        const std::string a = p["a"].as<std::string>();
        const std::string b = p["b"].as<std::string>();
        const Layer la = resolve_layer(p["a"], a, materials, std::nullopt, f0);
        const Layer lb = resolve_layer(p["b"], b, materials, std::nullopt, f0);
        for (int i = 0; i < count; ++i) {
          cfg.layers.push_back(i % 2 == 0 ? NamedLayer{a, la} : NamedLayer{b, lb});
        }
        cfg.periodic = true;
      } else if (const YAML::Node ls = structure["layers"]) {
        if (!ls.IsSequence() || ls.size() == 0) fail_at(ls, "structure.layers must be a non-empty list");
        for (const auto& item : ls) {
          if (item.IsScalar()) {
            const auto name = item.as<std::string>();
            cfg.layers.push_back({name, resolve_layer(item, name, materials, std::nullopt, f0)});
          } else {
            require_map(item, "layer");
            check_keys(item, {"material", "thickness"}, "layer");
            if (!item["material"]) fail_at(item, "layer needs a material");
            const auto name = item["material"].as<std::string>();
            std::optional<ThicknessRule> rule;
            if (item["thickness"]) rule = parse_thickness(item["thickness"]);
            cfg.layers.push_back({name, resolve_layer(item, name, materials, rule, f0)});
          }
        }
      }
    }
    rebuild_stack(cfg);

    cfg.grid = parse_sweep(root["sweep"], f0);
    if (root["incident"]) cfg.incident = parse_incident(root["incident"]);
    if (const YAML::Node e = root["engine"]) {
      const std::string s = e.as<std::string>();
      if (s == "cascade") cfg.engine = Engine::Cascade;
      else if (s == "direct") cfg.engine = Engine::Direct;
      else fail_at(e, "engine must be cascade or direct");
    }
    return cfg;
  } catch (const YAML::Exception& e) {
    std::ostringstream os;
    if (!e.mark.is_null()) os << "line " << e.mark.line + 1 << ": ";
    os << e.msg;
    throw Error(ErrorKind::Config, os.str());
  }
}

}  // namespace chiral_tmm
