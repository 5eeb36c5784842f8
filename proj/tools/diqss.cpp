// diqss: protocol laboratory CLI for memory-assisted device-independent
// quantum secret sharing. Subcommands: keyrate, scan, threshold, validate,
// calibrate. Structured JSON config in, CSV/JSON out.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "diqss/errors.hpp"
#include "diqss/version.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_path;
  std::string format;
};

void add_common(CLI::App* sub, CommonArgs& args, const char* default_format) {
  sub->add_option("--config", args.config_path, "JSON config file");
  sub->add_option("--set", args.sets, "Override a config key (key=value)");
  sub->add_option("--out", args.out_path, "Also write the output to this file");
  args.format = default_format;
  sub->add_option("--format", args.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"device-independent quantum secret sharing protocol laboratory"};
  app.set_version_flag("--version", std::string(diqss::kVersion));
  app.require_subcommand(1);

  CommonArgs keyrate_args, scan_args, threshold_args, validate_args, calibrate_args;
  auto* keyrate = app.add_subcommand("keyrate", "Key-rate report for one parameter point");
  add_common(keyrate, keyrate_args, "json");
  auto* scan = app.add_subcommand("scan", "Parameter scan along one axis");
  add_common(scan, scan_args, "csv");
  auto* threshold = app.add_subcommand("threshold", "Root of R_inf for a target parameter");
  add_common(threshold, threshold_args, "json");
  auto* validate = app.add_subcommand("validate", "Monte Carlo vs analytic cross-check");
  add_common(validate, validate_args, "table");
  auto* calibrate =
      app.add_subcommand("calibrate", "Entropy-bound interpretation/sense sweep");
  add_common(calibrate, calibrate_args, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return diqss::cli::kExitConfig;
  }

  auto run = [&](const CommonArgs& args,
                 int (*fn)(const diqss::cli::RunConfig&, const diqss::cli::CommandIo&)) {
    try {
      const auto cfg = diqss::cli::RunConfig::load(args.config_path, args.sets);
      return fn(cfg, diqss::cli::CommandIo{args.out_path, args.format});
    } catch (const diqss::cli::ConfigError& e) {
      std::cerr << "config error: " << e.what() << std::endl;
      return diqss::cli::kExitConfig;
    } catch (const diqss::BracketError& e) {
      std::cerr << "bracket error: " << e.what() << std::endl;
      return diqss::cli::kExitBracket;
    } catch (const std::invalid_argument& e) {
      std::cerr << "config error: " << e.what() << std::endl;
      return diqss::cli::kExitConfig;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << std::endl;
      return 1;
    }
  };

  if (keyrate->parsed()) return run(keyrate_args, diqss::cli::cmd_keyrate);
  if (scan->parsed()) return run(scan_args, diqss::cli::cmd_scan);
  if (threshold->parsed()) return run(threshold_args, diqss::cli::cmd_threshold);
  if (validate->parsed()) return run(validate_args, diqss::cli::cmd_validate);
  if (calibrate->parsed()) return run(calibrate_args, diqss::cli::cmd_calibrate);
  return diqss::cli::kExitConfig;
}
