#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "dapc/experiment.hpp"
#include "dapc/serialize.hpp"

namespace fs = std::filesystem;

namespace {

// User-supplied files that fail to open or parse are validation failures.
std::string load_input(const std::string& path) {
  try {
    return dapc::load_text(path);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(e.what());
  }
}

std::string ensure_dir(const std::string& dir) {
  fs::create_directories(dir);
  return dir;
}

int run_simulate_cmd(const std::string& config_path,
                     const std::string& out_dir, bool seed_given,
                     std::uint64_t seed, int jobs) {
  dapc::ExperimentConfig cfg = dapc::config_from_json(load_input(config_path));
  if (seed_given) cfg.root_seed = seed;
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (cfg.output_dir.empty()) {
    throw std::invalid_argument(
        "simulate needs an output directory (--out or output_dir in the "
        "config)");
  }
  const dapc::SimulateOutput out = dapc::run_simulate(cfg, jobs);
  const std::string dir = ensure_dir(cfg.output_dir);
  const std::string csv_path = (fs::path(dir) / "results.csv").string();
  const std::string manifest_path = (fs::path(dir) / "manifest.json").string();
  dapc::save_text(csv_path, out.results_csv);
  dapc::save_text(manifest_path, out.manifest_json);
  std::cout << "wrote " << csv_path << '\n';
  std::cout << "wrote " << manifest_path << '\n';
  return 0;
}

int run_bounds_cmd(const std::string& config_path, const std::string& out_dir) {
  std::vector<double> kappa_grid;
  std::vector<double> l_grid;
  try {
    const auto j = nlohmann::json::parse(load_input(config_path));
    kappa_grid = j.at("kappa_grid").get<std::vector<double>>();
    l_grid = j.at("l_grid").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bounds config: ") + e.what());
  }
  const std::string csv = dapc::run_bounds(kappa_grid, l_grid);
  if (out_dir.empty()) {
    std::cout << csv;
  } else {
    const std::string path =
        (fs::path(ensure_dir(out_dir)) / "bounds.csv").string();
    dapc::save_text(path, csv);
    std::cout << "wrote " << path << '\n';
  }
  return 0;
}

int run_verify_cmd(std::uint64_t seed, const std::string& out_dir,
                   bool mutate) {
  const dapc::VerifyOutput out = dapc::run_verify(seed, mutate);
  std::cout << out.table_text;
  if (!out_dir.empty()) {
    const std::string path =
        (fs::path(ensure_dir(out_dir)) / "verify.json").string();
    dapc::save_text(path, out.json_text);
    std::cout << "wrote " << path << '\n';
  }
  return out.all_pass ? 0 : 1;
}

int run_analyze_cmd(const std::string& matrix_path, const std::string& out_dir,
                    std::optional<int> t_override) {
  const dapc::AnalyzeOutput out = dapc::run_analyze(matrix_path, t_override);
  std::cout << out.table_text;
  if (!out_dir.empty()) {
    const std::string path =
        (fs::path(ensure_dir(out_dir)) / "analyze.json").string();
    dapc::save_text(path, out.json_text);
    std::cout << "wrote " << path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "identification-code simulation over discrete affine Poisson channels"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 1;
  int jobs = 1;
  int t_override = 0;
  bool mutate = false;

  CLI::App* sim = app.add_subcommand(
      "simulate", "run a codebook + error-estimation sweep from a config");
  sim->add_option("--config", config_path, "experiment config or manifest")
      ->required();
  sim->add_option("--out", out_dir, "output directory (overrides the config)");
  sim->add_option("--seed", seed, "override the config root seed");
  sim->add_option("--jobs", jobs, "sweep points run concurrently")
      ->check(CLI::PositiveNumber);

  CLI::App* bnd = app.add_subcommand(
      "bounds", "evaluate the capacity band on a kappa x l grid");
  bnd->add_option("--config", config_path,
                  "JSON with kappa_grid and l_grid arrays")
      ->required();
  bnd->add_option("--out", out_dir, "directory for bounds.csv (else stdout)");

  CLI::App* ver = app.add_subcommand(
      "verify", "run the closed-form-vs-oracle verification battery");
  ver->add_option("--seed", seed, "battery seed (default 1)");
  ver->add_option("--out", out_dir, "directory for verify.json");
  ver->add_flag("--mutate", mutate,
                "corrupt one closed form to prove the battery can fail");

  CLI::App* ana = app.add_subcommand(
      "analyze", "report structure metrics for a matrix file");
  ana->add_option("--config", config_path, "matrix JSON file")->required();
  ana->add_option("--out", out_dir, "directory for analyze.json");
  ana->add_option("--t", t_override, "analyze at this reduced dimension")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) {
      return run_simulate_cmd(config_path, out_dir, sim->count("--seed") > 0,
                              seed, jobs);
    }
    if (bnd->parsed()) {
      return run_bounds_cmd(config_path, out_dir);
    }
    if (ver->parsed()) {
      return run_verify_cmd(seed, out_dir, mutate);
    }
    if (ana->parsed()) {
      std::optional<int> t;
      if (ana->count("--t") > 0) t = t_override;
      return run_analyze_cmd(config_path, out_dir, t);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
