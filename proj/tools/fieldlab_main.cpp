#include <deque>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fieldlab/errors.hpp"
#include "runner.hpp"

// Experiment runner: one subcommand per bench experiment, CSV artifacts
// plus a manifest per run. Config file values are overridden by flags.

int main(int argc, char** argv) {
  using namespace fieldlab;

  CLI::App app{"fieldlab: second-quantized measurement experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::int64_t seed = -1;

  struct SubOptions {
    CLI::App* sub = nullptr;
    // experiment-specific overrides
    double decohere_c = -1.0;
    std::int64_t decohere_n_max = -1;
    std::string oracle_filter;
    std::string epr_filter;
  };
  std::deque<SubOptions> subs;  // stable addresses for the option bindings

  for (const auto& name : runner::known_experiments()) {
    SubOptions& options = subs.emplace_back();
    options.sub = app.add_subcommand(name, "run the " + name + " experiment");
    options.sub->add_option("--config", config_path, "JSON config file");
    options.sub->add_option("--out", out_dir, "output directory");
    options.sub->add_option("--seed", seed, "run seed (non-negative)");
    if (name == "decohere") {
      options.sub->add_option("--c", options.decohere_c, "per-factor environment overlap");
      options.sub->add_option("--n-max", options.decohere_n_max, "largest environment size");
    }
    if (name == "oracle") {
      options.sub->add_option("--filter", options.oracle_filter, "case id filter");
    }
    if (name == "epr") {
      options.sub->add_option("--filter", options.epr_filter,
                              "filter kind: none|projection|spin_flip");
    }
  }

  CLI11_PARSE(app, argc, argv);

  try {
    nlohmann::json doc = nlohmann::json::object();
    if (!config_path.empty()) doc = runner::load_config_file(config_path);

    for (const auto& options : subs) {
      if (!options.sub->parsed()) continue;
      doc["experiment"] = options.sub->get_name();
      if (!doc.contains("params")) doc["params"] = nlohmann::json::object();
      if (options.decohere_c >= 0.0) doc["params"]["c"] = options.decohere_c;
      if (options.decohere_n_max >= 0) doc["params"]["n_max"] = options.decohere_n_max;
      if (!options.oracle_filter.empty()) doc["params"]["filter"] = options.oracle_filter;
      if (!options.epr_filter.empty()) doc["params"]["filter"] = options.epr_filter;
    }
    if (!out_dir.empty()) doc["out"] = out_dir;
    if (seed >= 0) doc["seed"] = seed;

    const auto config = runner::ExperimentConfig::from_json(doc);
    const auto result = runner::run(config);
    std::cout << "wrote " << result.outputs.size() << " file(s) + manifest to "
              << config.out_dir.string() << "\n";
    return runner::kExitOk;
  } catch (const runner::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return runner::kExitConfig;
  } catch (const domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return runner::kExitConfig;
  } catch (const resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return runner::kExitConfig;
  } catch (const invariant_violation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return runner::kExitInvariant;
  }
}
