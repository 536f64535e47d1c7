// Experiment runner: deterministic trading-cycle simulations with CSV/JSON
// outputs. Exit codes: 0 success, 2 config error, 3 numerical precondition
// failure.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geophase/experiments.hpp"

int main(int argc, char** argv) {
  std::string joined;
  for (const std::string& name : geophase::experiment_names()) {
    if (!joined.empty()) joined += ", ";
    joined += name;
  }

  CLI::App app{"geophase: discrete-time trading-cycle experiments"};
  std::string experiment;
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  app.add_option("experiment", experiment, "one of: " + joined)->required();
  app.add_option("--config", config_path, "JSON config file (defaults apply per experiment)");
  app.add_option("--set", overrides, "override a config field, e.g. --set market.q=0.1");
  app.add_option("--out", out_dir, "output directory (overrides config output_dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  bool known = false;
  for (const std::string& name : geophase::experiment_names()) known = known || name == experiment;
  if (!known) {
    std::fprintf(stderr, "config error: unknown experiment '%s' (expected one of: %s)\n",
                 experiment.c_str(), joined.c_str());
    return 2;
  }

  try {
    const auto cfg = geophase::load_config(
        experiment,
        config_path.empty() ? std::nullopt
                            : std::optional<std::filesystem::path>(config_path),
        overrides, out_dir.empty() ? std::nullopt : std::optional<std::string>(out_dir));
    const auto result = geophase::run(cfg);
    for (const std::string& f : result.files)
      std::printf("wrote %s\n", (result.output_dir / f).string().c_str());
    if (result.negative_quote_ticks > 0)
      std::fprintf(stderr, "warning: quote went negative at %lld tick(s); the additive model has no price floor\n",
                   static_cast<long long>(result.negative_quote_ticks));
    return 0;
  } catch (const geophase::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const geophase::NumericError& e) {
    std::fprintf(stderr, "numerical precondition failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
