// symest: estimate the parameter and initial condition of the quadratic map
// 1 + theta * y^2 from a binary symbolic sequence.
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symest/config.hpp"
#include "symest/error.hpp"
#include "symest/format.hpp"
#include "symest/pipeline.hpp"

namespace {

void print_nested(const std::exception& e, int depth = 0) {
  std::cerr << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "error: " << e.what() << '\n';
  try {
    std::rethrow_if_nested(e);
  } catch (const std::exception& inner) {
    print_nested(inner, depth + 1);
  }
}

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> workers;
  std::vector<std::string> settings;

  symest::RunConfig resolve() const {
    symest::RunConfig config = config_path.empty() ? symest::RunConfig{} : symest::load_config(config_path);
    for (const auto& s : settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw symest::ConfigError("--set expects key=value, got '" + s + "'");
      symest::apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
    }
    if (seed) config.seed = *seed;
    if (out) config.output_dir = *out;
    if (workers) config.workers = *workers;
    config.validate();
    return config;
  }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Flat key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", opts.seed, "Master seed (u64)");
  cmd->add_option("--out", opts.out, "Output directory");
  cmd->add_option("--workers", opts.workers, "Worker threads for grid evaluation")->check(CLI::PositiveNumber);
  cmd->add_option("--set", opts.settings, "Override one config key (key=value); repeatable");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parameter and initial-condition estimation for the quadratic map from symbolic data"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string bits_path;

  auto* simulate = app.add_subcommand("simulate", "Write bits.txt and cells.csv for the configured true orbit");
  add_common(simulate, opts);
  auto* estimate = app.add_subcommand("estimate", "Zooming grid search, strengths, anchor and refined candidate");
  add_common(estimate, opts);
  estimate->add_option("--bits", bits_path, "Bit file (default: <out>/bits.txt)");
  auto* polish = app.add_subcommand("polish", "Polishing chain on the estimate artifacts in --out");
  add_common(polish, opts);
  auto* full = app.add_subcommand("full", "simulate, estimate and polish");
  add_common(full, opts);
  auto* report = app.add_subcommand("report", "Print a summary of the artifacts in --out");
  add_common(report, opts);
  auto* show_config = app.add_subcommand("config", "Print the resolved configuration");
  add_common(show_config, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    const symest::RunConfig config = opts.resolve();
    if (simulate->parsed()) {
      const auto data = symest::cmd_simulate(config);
      std::cout << "wrote " << data.size() << " bits to " << config.output_dir << '\n';
    } else if (estimate->parsed()) {
      const auto data = symest::load_bits(bits_path.empty() ? config.output_dir + "/" + symest::kBitsFile : bits_path);
      const auto result = symest::cmd_estimate(config, data);
      std::cout << "theta* = " << symest::format_real(result.zoom.theta_star)
                << "  y0 = " << symest::format_real(result.zoom.y0) << "  kappa = " << result.kappa << '\n';
    } else if (polish->parsed()) {
      const auto art = symest::load_estimate_artifacts(config.output_dir);
      const auto result = symest::cmd_polish(config, art);
      std::cout << "theta_hat = " << symest::format_real(result.estimate.theta_hat)
                << "  y0_hat = " << symest::format_real(result.estimate.y0_hat) << '\n';
    } else if (full->parsed()) {
      symest::cmd_full(config);
      std::cout << symest::cmd_report(config.output_dir);
    } else if (report->parsed()) {
      std::cout << symest::cmd_report(config.output_dir);
    } else if (show_config->parsed()) {
      std::cout << symest::serialize_config(config);
    }
  } catch (const std::exception& e) {
    print_nested(e);
    return 1;
  }
  return 0;
}
