#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "samrad/simulation.hpp"
#include "samrad/study.hpp"
#include "samrad/threading.hpp"

namespace {

samrad::RunConfig base_config(const std::string& config_path,
                              const std::string& preset) {
  if (!config_path.empty())
    return samrad::RunConfig::from_config(samrad::ConfigMap::load(config_path));
  if (preset == "marshak1m") return samrad::preset_marshak_single_material();
  if (preset == "marshak2m" || preset.empty())
    return samrad::preset_marshak_two_material();
  samrad::fail("unknown preset: " + preset);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coupled nonequilibrium radiation diffusion on adaptive grids"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", preset, mode;
  double t_final = -1.0;
  int threads = 0;
  unsigned seed = 0;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--config", config_path, "key = value config file");
    s->add_option("--out", out_dir, "output directory");
    s->add_option("--t-final", t_final, "override run.t_final");
    s->add_option("--threads", threads, "worker thread count");
    s->add_option("--seed", seed, "seed for randomized tooling");
    s->add_option("--preset", preset, "marshak2m | marshak1m");
  };

  CLI::App* run = app.add_subcommand("run", "advance a configured problem");
  add_common(run);
  CLI::App* study =
      app.add_subcommand("study", "accuracy and efficiency studies");
  study->add_option("mode", mode, "temporal | spatial | efficiency")
      ->required();
  add_common(study);
  CLI::App* pd =
      app.add_subcommand("preset-dump", "print a preset as a config file");
  add_common(pd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      samrad::RunConfig cfg = base_config(config_path, preset);
      if (t_final >= 0.0) cfg.t_final = t_final;
      if (threads > 0) cfg.threads = threads;
      cfg.validate();
      return samrad::run_simulation(cfg, out_dir);
    }

    if (study->parsed()) {
      const std::string dflt =
          (mode == "efficiency") ? "marshak2m" : "marshak1m";
      samrad::RunConfig cfg =
          base_config(config_path, preset.empty() ? dflt : preset);
      if (threads > 0) cfg.threads = threads;
      samrad::set_num_threads(cfg.threads);
      samrad::StudyTable table;
      if (mode == "temporal") {
        samrad::RunConfig b = cfg;
        b.grid.static_hierarchy = true;  // one frozen grid for every dt
        table = samrad::study_temporal(b, samrad::TemporalStudyConfig{});
      } else if (mode == "spatial") {
        samrad::SpatialStudyConfig sc;
        if (t_final > 0.0) sc.t_final = t_final;
        table = samrad::study_spatial(cfg, sc);
      } else if (mode == "efficiency") {
        samrad::EfficiencyStudyConfig sc;
        if (t_final > 0.0) sc.t_final = t_final;
        table = samrad::study_efficiency(cfg, sc);
      } else {
        samrad::fail("unknown study mode: " + mode);
      }
      std::cout << table.format();
      std::filesystem::create_directories(out_dir);
      std::ofstream csv(std::filesystem::path(out_dir) /
                        ("study_" + mode + ".csv"));
      csv << table.to_csv();
      return 0;
    }

    if (pd->parsed()) {
      samrad::RunConfig cfg = base_config(config_path, preset);
      std::cout << cfg.to_config().dump();
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
