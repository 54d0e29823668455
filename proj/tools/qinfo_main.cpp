// Copyright 2026 The qinfo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qinfo/experiment.hpp"

namespace {

struct CommonFlags {
  void attach(CLI::App* cmd, qinfo::ExperimentConfig& cfg) {
    cmd->add_option("--trials", cfg.trials, "Number of runs with derived seeds");
    cmd->add_option("--seed", cfg.seed, "Base seed; trial i runs with seed + i")
        ->envname("QINFO_SEED");
    cmd->add_option("--output", cfg.output_path, "Report file (stdout when omitted)");
    cmd->add_option("--format", cfg.format, "Report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  }
};

void attach_bb84_flags(CLI::App* cmd, qinfo::ExperimentConfig& cfg) {
  cmd->add_option("--qubits", cfg.qubits, "Qubits (or pairs) per session");
  cmd->add_option("--adversary", cfg.adversary,
                  "none | intercept-zx | intercept-fixed:z | intercept-fixed:x | "
                  "depolarize:<p>");
  cmd->add_option("--check-fraction", cfg.check_fraction,
                  "Fraction of the sifted key compared publicly");
  cmd->add_option("--abort-threshold", cfg.abort_threshold,
                  "QBER above which the session aborts");
  cmd->add_option("--recon-rounds", cfg.recon_rounds,
                  "Parity reconciliation rounds (0 skips post-processing)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qinfo: entanglement-assisted protocol and QKD simulator"};
  app.require_subcommand(1);
  app.fallthrough();  // parent options (--config) usable after the subcommand
  app.set_config("--config", "", "Read defaults from a config file (flags win)");
  app.allow_config_extras(false);

  qinfo::ExperimentConfig cfg;
  CommonFlags common;

  CLI::App* teleport = app.add_subcommand("teleport", "Teleport random single qubits");
  common.attach(teleport, cfg);

  CLI::App* superdense =
      app.add_subcommand("superdense", "Send random 2-bit messages via superdense coding");
  common.attach(superdense, cfg);

  CLI::App* swap = app.add_subcommand("swap", "Entanglement swapping runs");
  common.attach(swap, cfg);

  CLI::App* tomography =
      app.add_subcommand("tomography", "Three-basis Bloch vector estimation");
  common.attach(tomography, cfg);
  tomography->add_option("--shots", cfg.shots, "Shots per measurement basis");

  CLI::App* bb84 = app.add_subcommand("bb84", "Prepare-and-measure BB84 sessions");
  common.attach(bb84, cfg);
  attach_bb84_flags(bb84, cfg);

  CLI::App* bb84e =
      app.add_subcommand("bb84-entangled", "Entanglement-based BB84 sessions");
  common.attach(bb84e, cfg);
  attach_bb84_flags(bb84e, cfg);
  bb84e->add_option("--chsh-pairs", cfg.chsh_pairs,
                    "Also estimate CHSH S from this many singlet pairs");

  CLI::App* analyze = app.add_subcommand("analyze", "Entanglement analytics of a state file");
  common.attach(analyze, cfg);
  analyze->add_option("--state", cfg.state_path, "Pure state JSON file");
  analyze->add_option("--cut", cfg.cut, "Qubits on the left side of the bipartition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return qinfo::run_and_write(cfg, std::cout, std::cerr);
}
