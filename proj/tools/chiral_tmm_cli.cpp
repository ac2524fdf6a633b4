// chiral-tmm: reflected/transmitted power spectra of periodic chiral and
// chiral-nihility stacks.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chiral_tmm/errors.hpp"
#include "chiral_tmm/report.hpp"
#include "chiral_tmm/scenario.hpp"

namespace {

using namespace chiral_tmm;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

void print_scenario(const ScenarioConfig& cfg) {
  std::cout << "scenario " << cfg.name << ": " << cfg.stack.size() << " slab(s)"
            << (cfg.periodic ? " (periodic)" : "") << "\n";
  for (std::size_t i = 0; i < cfg.layers.size(); ++i) {
    const NamedLayer& l = cfg.layers[i];
    std::cout << "  " << i + 1 << ": " << l.material << "  d = " << format_number(l.layer.thickness)
              << " m\n";
  }
  const SweepGrid& g = cfg.grid;
  std::cout << "  sweep: " << to_string(g.axis) << ", " << g.count << " point(s) from "
            << format_number(g.value(0)) << " to " << format_number(g.value(g.count - 1))
            << (g.axis == SweepAxis::Frequency ? " Hz at theta = " : " deg at f = ")
            << format_number(g.fixed) << (g.axis == SweepAxis::Frequency ? " deg" : " Hz")
            << "\n  engine: " << to_string(cfg.engine) << "\n";
}

struct RunOptions {
  std::string preset;
  std::string config_path;
  std::string engine;
  std::string out;
  int points = 0;
  int threads = 1;
};

int run(const RunOptions& opt) {
  std::string text;
  if (!opt.preset.empty()) {
    text = find_preset(opt.preset).config;
  } else {
    text = read_file(opt.config_path);
  }
  ScenarioConfig cfg = parse_config(text);
  if (!opt.engine.empty()) cfg.engine = opt.engine == "direct" ? Engine::Direct : Engine::Cascade;
  if (opt.points > 0) {
    cfg.grid.count = opt.points;
    cfg.grid.validate();
  }

  const SweepResult result = run_sweep(cfg.stack, cfg.grid, cfg.incident, cfg.engine, opt.threads);
  const std::string out = opt.out.empty() ? cfg.name + ".csv" : opt.out;

  RunInfo info{cfg.name, text, out, cfg.engine, opt.threads};
  write_file(out, csv_text(result));
  write_file(out + ".manifest.json", manifest_json(info, result));

  for (const PointFailure& f : result.failures) {
    std::cerr << "point " << f.index << " (f = " << format_number(f.frequency_hz)
              << " Hz, theta = " << format_number(f.theta_deg) << " deg) failed: " << f.message
              << "\n";
  }
  std::cerr << cfg.name << ": " << result.rows.size() << "/" << result.points << " points -> "
            << out << "\n";
  if (result.points > 0 && result.rows.empty()) return kExitNumerical;
  return kExitOk;
}

int list() {
  for (const PresetInfo& p : list_presets()) {
    std::cout << p.name << "\tFigure " << p.figure << "\t" << p.summary << "\n";
  }
  return kExitOk;
}

int validate(const std::string& path) {
  const ScenarioConfig cfg = parse_config(read_file(path));
  print_scenario(cfg);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transfer-matrix solver for periodic chiral / chiral-nihility stacks", "chiral-tmm"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  RunOptions opt;
  auto* run_cmd = app.add_subcommand("run", "Run a sweep and write CSV plus a JSON manifest");
  auto* preset_opt = run_cmd->add_option("--preset", opt.preset, "Built-in scenario (see list-presets)");
  auto* config_opt = run_cmd->add_option("--config", opt.config_path, "Scenario YAML file");
  preset_opt->excludes(config_opt);
  run_cmd->add_option("--engine", opt.engine, "Solver engine")
      ->check(CLI::IsMember({"cascade", "direct"}));
  run_cmd->add_option("--out", opt.out, "CSV output path (default <scenario>.csv)");
  run_cmd->add_option("--points", opt.points, "Override the number of sweep points")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--threads", opt.threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);

  app.add_subcommand("list-presets", "List built-in figure scenarios");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Parse and resolve a scenario file");
  validate_cmd->add_option("--config", validate_path, "Scenario YAML file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) {
      if (opt.preset.empty() && opt.config_path.empty()) {
        std::cerr << "run: one of --preset or --config is required\n";
        return kExitConfig;
      }
      return run(opt);
    }
    if (app.got_subcommand("list-presets")) return list();
    if (*validate_cmd) return validate(validate_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Io: return kExitIo;
      case ErrorKind::Config:
      case ErrorKind::InvalidInput: return kExitConfig;
      default: return kExitNumerical;
    }
  }
  return kExitOk;
}
