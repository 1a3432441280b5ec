// gradtc: driven gradient-field Heisenberg chain simulator.
//
//   gradtc simulate <config.json> [--workers N] [--out DIR] [--seed S]
//   gradtc presets list
//   gradtc presets run <name> [--workers N] [--out DIR] [--seed S]
//   gradtc validate <config.json>
//
// Exit codes: 0 success, 2 config error, 3 parameter-domain error,
// 4 numerical-invariant breach.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gradtc/errors.hpp"
#include "gradtc/experiment.hpp"
#include "gradtc/kernels.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gradtc::config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Overrides {
  std::size_t workers = 0;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

int run_config(const std::string& json_text, const Overrides& ov) {
  gradtc::ExperimentConfig cfg = gradtc::parse_config(json_text);
  if (!ov.out_dir.empty()) cfg.output.directory = ov.out_dir;
  if (ov.seed) cfg.run.master_seed = *ov.seed;
  cfg.validate();

  std::cerr << "gradtc " << gradtc::library_version << " | experiment "
            << gradtc::to_string(cfg.kind) << " | kernels "
            << gradtc::kernels::isa_name(gradtc::kernels::active_isa()) << "\n";
  const gradtc::ResultTable table = gradtc::run_experiment(cfg, ov.workers);
  const auto files = gradtc::write_results(cfg, table);
  std::cerr << "rows: " << table.rows.size()
            << " | wall: " << table.metadata.at("wall_time_s") << " s\n";
  for (const auto& f : files) std::cout << f << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"driven gradient-field Heisenberg chain simulator"};
  app.require_subcommand(1);

  std::string config_path, preset_name;
  Overrides ov;
  std::uint64_t seed_value = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--workers", ov.workers, "worker thread count (default: hardware)");
    cmd->add_option("--out", ov.out_dir, "output directory override");
    cmd->add_option("--seed", seed_value, "master seed override")
        ->each([&](const std::string&) { seed_set = true; });
  };

  auto* simulate = app.add_subcommand("simulate", "run an experiment from a config file");
  simulate->add_option("config", config_path, "JSON config file")->required();
  add_common(simulate);

  auto* presets_cmd = app.add_subcommand("presets", "list or run the shipped presets");
  auto* presets_list = presets_cmd->add_subcommand("list", "list available presets");
  auto* presets_run = presets_cmd->add_subcommand("run", "run a preset by name");
  presets_run->add_option("name", preset_name, "preset name")->required();
  add_common(presets_run);
  presets_cmd->require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "parse and validate a config file");
  validate->add_option("config", config_path, "JSON config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (seed_set) ov.seed = seed_value;

  try {
    if (simulate->parsed()) {
      return run_config(read_file(config_path), ov);
    }
    if (presets_list->parsed()) {
      for (const auto& p : gradtc::presets()) {
        std::cout << p.name << "\n    " << p.description << "\n    note: " << p.note << "\n";
      }
      return 0;
    }
    if (presets_run->parsed()) {
      const gradtc::Preset& p = gradtc::find_preset(preset_name);
      std::cerr << "preset " << p.name << ": " << p.description << "\n(" << p.note << ")\n";
      return run_config(p.config_json, ov);
    }
    if (validate->parsed()) {
      gradtc::ExperimentConfig cfg = gradtc::parse_config(read_file(config_path));
      cfg.validate();
      std::cout << "ok: " << gradtc::to_string(cfg.kind) << " config, hash 0x" << std::hex
                << gradtc::config_hash(cfg) << std::dec << "\n";
      return 0;
    }
  } catch (const gradtc::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const gradtc::param_domain_error& e) {
    std::cerr << "parameter domain error: " << e.what() << "\n";
    return 3;
  } catch (const gradtc::invariant_error& e) {
    std::cerr << "numerical invariant violated: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
