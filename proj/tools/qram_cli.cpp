#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "qram/io/commands.hpp"

int main(int argc, char** argv) {
  using qram::models::ConcurrencyMode;

  CLI::App app{"Q-RAM resource manager for multifunction RF systems"};
  app.require_subcommand(1);

  qram::io::CommandOptions options;
  std::string seeds = "1";
  std::string mode;
  std::size_t iterations = 0;
  double epoch = 0.0;

  const std::map<std::string, ConcurrencyMode> modes{{"standard", ConcurrencyMode::Standard},
                                                     {"interleaved", ConcurrencyMode::Interleaved},
                                                     {"multifunction", ConcurrencyMode::Multifunction},
                                                     {"multioperation", ConcurrencyMode::Multioperation}};

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", options.config, "scenario file")->required();
    cmd->add_option("--seeds", seeds, "seed count n (seeds 1..n) or comma-separated list")->capture_default_str();
    cmd->add_option("--out", options.out, "output directory")->capture_default_str();
    cmd->add_option("--mcts-iterations", iterations, "MCTS iterations per epoch")->check(CLI::PositiveNumber);
    cmd->add_option("--epoch", epoch, "allocation epoch in seconds")->check(CLI::PositiveNumber);
  };

  CLI::App* run = app.add_subcommand("run", "run one mode over a seed batch");
  add_common(run);
  run->add_option("--mode", mode, "concurrency mode")
      ->check(CLI::IsMember({"standard", "interleaved", "multifunction", "multioperation"}));

  CLI::App* compare = app.add_subcommand("compare", "run all four modes on the same seeds");
  add_common(compare);

  CLI::App* validate = app.add_subcommand("validate", "check a scenario file");
  validate->add_option("--config", options.config, "scenario file")->required();

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return qram::io::cmd_validate(options.config, std::cout, std::cerr);

  try {
    options.seeds = qram::io::parse_seeds(seeds);
  } catch (const std::exception& e) {
    std::cerr << "error: --seeds: " << e.what() << '\n';
    return 2;
  }
  if (!mode.empty()) options.mode = modes.at(mode);
  if (iterations > 0) options.mcts_iterations = iterations;
  if (epoch > 0.0) options.epoch_s = epoch;

  if (run->parsed()) return qram::io::cmd_run(options, std::cout, std::cerr);
  return qram::io::cmd_compare(options, std::cout, std::cerr);
}
