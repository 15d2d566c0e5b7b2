// brwlab: experiment driver for the branching random walk library.
//
// Exit codes: 0 ok, 1 criterion failure, 2 config error, 3 resource error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "brw/acceptance.hpp"
#include "brw/config.hpp"
#include "brw/error.hpp"
#include "brw/experiment.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCriterion = 1;
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> out;
  std::optional<std::size_t> replicates;
  std::vector<int> n;
  bool atoms = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "experiment config JSON");
  cmd->add_option("--seed", f.seed, "master seed (u64)");
  cmd->add_option("--threads", f.threads, "worker threads, 0 = all cores");
  cmd->add_option("--out", f.out, "output directory");
}

brw::ExperimentConfig load_config(const CommonFlags& f) {
  brw::ExperimentConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw brw::config_error("cannot read config " + f.config_path);
    brw::Json j;
    try {
      in >> j;
    } catch (const brw::Json::exception& e) {
      throw brw::config_error(f.config_path + ": " + e.what());
    }
    cfg = brw::ExperimentConfig::from_json(j);
  }
  if (f.seed) cfg.seed = *f.seed;
  if (f.threads) cfg.threads = *f.threads;
  if (f.out) cfg.out = *f.out;
  if (f.replicates) cfg.replicates = *f.replicates;
  if (!f.n.empty()) cfg.n = f.n;
  if (f.atoms) cfg.write_atoms = true;
  cfg.validate();
  return cfg;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw brw::resource_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw brw::resource_error("write failed for " + path.string());
}

fs::path prepare_out(const brw::ExperimentConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw brw::resource_error("cannot create output directory " + cfg.out + ": " + ec.message());
  return fs::path(cfg.out);
}

int emit(const brw::ExperimentConfig& cfg, const brw::RunOutput& run, const char* main_name,
         const char* atoms_name, const char* manifest_name) {
  const auto dir = prepare_out(cfg);
  write_file(dir / main_name, run.main_csv);
  if (!run.atoms_csv.empty()) write_file(dir / atoms_name, run.atoms_csv);
  write_file(dir / manifest_name, run.manifest.dump(2) + "\n");
  std::cout << "wrote " << (dir / main_name).string() << " (config_hash " << cfg.hash() << ")\n";
  if (!run.complete) {
    std::cerr << "incomplete run: " << run.manifest["failed_replicates"].size()
              << " replicate(s) failed, see " << (dir / manifest_name).string() << "\n";
    return kExitResource;
  }
  return kExitOk;
}

int run_verify(const brw::ExperimentConfig& cfg, const std::vector<int>& only) {
  brw::AcceptanceOptions opt;
  opt.seed = cfg.seed;
  opt.threads = cfg.threads;
  opt.scale = cfg.verify.scale;
  opt.r_override = cfg.verify.r_override;
  std::vector<int> ids = !only.empty() ? only : cfg.verify.criteria;
  if (ids.empty()) ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  brw::Json report = {{"schema_version", brw::kManifestSchemaVersion},
                      {"kind", "verify"},
                      {"config_hash", cfg.hash()},
                      {"seed", cfg.seed},
                      {"software_version", brw::kSoftwareVersion},
                      {"generator", brw::kGeneratorName},
                      {"criteria", brw::Json::array()}};
  bool all = true;
  for (int id : ids) {
    const auto r = brw::run_criterion(id, opt);
    std::cout << brw::criterion_line(r) << std::endl;
    report["criteria"].push_back(r.to_json());
    all = all && r.passed;
  }
  report["passed"] = all;
  const auto dir = prepare_out(cfg);
  write_file(dir / "verify_report.json", report.dump(2) + "\n");
  return all ? kExitOk : kExitCriterion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Branching random walk extremes: simulation, limit sampling, formulas, verification"};
  app.require_subcommand(1);

  CommonFlags flags;
  auto* sim = app.add_subcommand("simulate", "simulate BRW replicates, write replicates.csv");
  add_common(sim, flags);
  sim->add_option("--replicates", flags.replicates, "replicates per n");
  sim->add_option("--n", flags.n, "generation(s)");
  sim->add_flag("--atoms", flags.atoms, "also write atoms.csv");

  auto* lim = app.add_subcommand("limit-sample", "sample the limit point process");
  add_common(lim, flags);
  std::optional<std::string> representation;
  lim->add_option("--replicates", flags.replicates, "number of samples");
  lim->add_option("--representation", representation, "cox | sscdppp");
  lim->add_flag("--atoms", flags.atoms, "also write limit_atoms.csv");

  auto* form = app.add_subcommand("formulas", "evaluate limit laws on the configured grids");
  add_common(form, flags);

  auto* ver = app.add_subcommand("verify", "run the acceptance criteria");
  add_common(ver, flags);
  std::vector<int> only;
  std::optional<double> scale;
  std::optional<double> r_override;
  ver->add_option("--criteria", only, "criterion ids (default: all)");
  ver->add_option("--scale", scale, "replicate-count multiplier");
  ver->add_option("--r-override", r_override, "replace r in reference laws (mutation check)");

  auto* conf = app.add_subcommand("config", "config utilities");
  conf->require_subcommand(1);
  auto* defaults = conf->add_subcommand("print-defaults", "print the default config JSON");
  auto* check = conf->add_subcommand("validate", "validate a config and print it resolved");
  add_common(check, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (defaults->parsed()) {
      std::cout << brw::ExperimentConfig{}.to_json().dump(2) << "\n";
      return kExitOk;
    }
    auto cfg = load_config(flags);
    if (check->parsed()) {
      std::cout << cfg.to_json().dump(2) << "\n";
      return kExitOk;
    }
    if (sim->parsed()) return emit(cfg, brw::run_simulate(cfg), "replicates.csv", "atoms.csv", "simulate_manifest.json");
    if (lim->parsed()) {
      if (representation) cfg.limit.representation = *representation;
      cfg.validate();
      return emit(cfg, brw::run_limit_sample(cfg), "limit_samples.csv", "limit_atoms.csv",
                  "limit_manifest.json");
    }
    if (form->parsed()) return emit(cfg, brw::run_formulas(cfg), "formulas.csv", "", "formulas_manifest.json");
    if (ver->parsed()) {
      if (scale) cfg.verify.scale = *scale;
      if (r_override) cfg.verify.r_override = *r_override;
      cfg.validate();
      return run_verify(cfg, only);
    }
  } catch (const brw::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const brw::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const brw::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource error: out of memory\n";
    return kExitResource;
  }
  return kExitOk;
}
