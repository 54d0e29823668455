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

#ifndef QINFO_EXPERIMENT_HPP
#define QINFO_EXPERIMENT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qinfo/info.hpp"
#include "qinfo/json_io.hpp"
#include "qinfo/protocols.hpp"
#include "qinfo/qkd.hpp"
#include "qinfo/random.hpp"

namespace qinfo {

/// Configuration error: reported with exit code 2, as opposed to runtime
/// invariant breaches (exit code 3).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string command;  // teleport | superdense | swap | tomography |
                        // bb84 | bb84-entangled | analyze
  std::size_t trials = 1;
  std::uint64_t seed = 0;

  // bb84 / bb84-entangled
  std::size_t qubits = 10000;
  std::string adversary = "none";
  double check_fraction = 0.25;
  double abort_threshold = 0.11;
  int recon_rounds = 4;
  std::size_t chsh_pairs = 0;  // entangled variant: per-trial CHSH estimate when > 0

  // tomography
  std::size_t shots = 10000;

  // analyze
  std::string state_path;
  std::size_t cut = 1;

  std::string output_path;  // empty writes to stdout
  std::string format = "json";
};

/// Adversary flag syntax: none, intercept-zx, intercept-fixed:z,
/// intercept-fixed:x, depolarize:<p>.
inline AdversaryModel parse_adversary(const std::string& s) {
  if (s == "none") return AdversaryModel::none();
  if (s == "intercept-zx") return AdversaryModel::intercept_resend_zx();
  if (s == "intercept-fixed:z") return AdversaryModel::intercept_resend_fixed(Basis::Z);
  if (s == "intercept-fixed:x") return AdversaryModel::intercept_resend_fixed(Basis::X);
  if (s.rfind("depolarize:", 0) == 0) {
    const std::string arg = s.substr(std::string("depolarize:").size());
    double p;
    try {
      std::size_t used = 0;
      p = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      throw ConfigError("bad depolarize probability: '" + arg + "'");
    }
    if (p < 0.0 || p > 1.0) throw ConfigError("depolarize probability outside [0,1]");
    return AdversaryModel::depolarizing(p);
  }
  throw ConfigError("unknown adversary '" + s + "'");
}

struct TrialRecord {
  std::size_t trial;
  std::uint64_t seed;
  std::vector<std::pair<std::string, double>> metrics;  // insertion-ordered
};

struct SummaryStats {
  double mean, stddev, min, max;
};

/// Population statistics per metric, in the metric order of the first trial.
inline std::vector<std::pair<std::string, SummaryStats>> summarize(
    const std::vector<TrialRecord>& trials) {
  if (trials.empty()) throw std::invalid_argument("summarize: empty batch");
  std::vector<std::pair<std::string, SummaryStats>> out;
  for (const auto& [name, first_value] : trials.front().metrics) {
    double sum = 0.0, sum2 = 0.0;
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    std::size_t count = 0;
    for (const TrialRecord& t : trials) {
      for (const auto& [k, v] : t.metrics) {
        if (k != name) continue;
        sum += v;
        sum2 += v * v;
        mn = std::min(mn, v);
        mx = std::max(mx, v);
        ++count;
        break;
      }
    }
    const double mean = sum / static_cast<double>(count);
    const double var = std::max(0.0, sum2 / static_cast<double>(count) - mean * mean);
    out.push_back({name, SummaryStats{mean, std::sqrt(var), mn, mx}});
  }
  return out;
}

struct Report {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  std::vector<std::pair<std::string, SummaryStats>> summary;
};

namespace detail {

inline void push(TrialRecord& rec, const std::string& name, double value) {
  rec.metrics.push_back({name, value});
}

inline TrialRecord run_teleport_trial(std::size_t trial, std::uint64_t seed) {
  Rng rng(seed);
  const PureState chi = random_qubit_state(rng);
  const TeleportOutcome out = teleport(chi, rng);
  TrialRecord rec{trial, seed, {}};
  push(rec, "bell_outcome", static_cast<double>(out.bell_outcome));
  push(rec, "fidelity", out.fidelity_to_input);
  return rec;
}

inline TrialRecord run_superdense_trial(std::size_t trial, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t message = rng.next_below(4);
  const SuperdenseResult r = superdense_encode_decode(message, rng);
  TrialRecord rec{trial, seed, {}};
  push(rec, "message", static_cast<double>(message));
  push(rec, "decoded", static_cast<double>(r.decoded));
  push(rec, "success", r.decoded == message ? 1.0 : 0.0);
  return rec;
}

inline TrialRecord run_swap_trial(std::size_t trial, std::uint64_t seed) {
  Rng rng(seed);
  const EntanglementSwapResult r = entanglement_swap(rng);
  TrialRecord rec{trial, seed, {}};
  push(rec, "alice_outcome", static_cast<double>(r.alice_outcome));
  push(rec, "fidelity_psi_minus", r.fidelity_to_psi_minus);
  push(rec, "ebits", entanglement_entropy(r.final_state, 1));
  return rec;
}

inline TrialRecord run_tomography_trial(std::size_t trial, std::uint64_t seed,
                                        std::size_t shots) {
  Rng rng(seed);
  const PureState unknown = random_qubit_state(rng);
  const BlochEstimate est = tomography_single_qubit(unknown, shots, rng);
  const std::array<double, 3> truth = bloch_vector(unknown);
  TrialRecord rec{trial, seed, {}};
  push(rec, "est_x", est.x);
  push(rec, "est_y", est.y);
  push(rec, "est_z", est.z);
  push(rec, "true_x", truth[0]);
  push(rec, "true_y", truth[1]);
  push(rec, "true_z", truth[2]);
  push(rec, "err_x", std::abs(est.x - truth[0]));
  push(rec, "err_y", std::abs(est.y - truth[1]));
  push(rec, "err_z", std::abs(est.z - truth[2]));
  push(rec, "outside_ball", est.outside_ball ? 1.0 : 0.0);
  return rec;
}

inline TrialRecord run_bb84_trial(const ExperimentConfig& cfg, std::size_t trial,
                                  std::uint64_t seed, bool entangled) {
  Bb84Config bc;
  bc.num_qubits_sent = cfg.qubits;
  bc.check_fraction = cfg.check_fraction;
  bc.qber_abort_threshold = cfg.abort_threshold;
  bc.adversary = parse_adversary(cfg.adversary);
  bc.seed = RngSeed{seed};
  try {
    bc.validate();  // flag values are configuration, not runtime state
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  Bb84PipelinePolicy policy;
  policy.reconciliation_rounds = cfg.recon_rounds;
  const Bb84PipelineResult r = run_bb84_pipeline(bc, policy, entangled);
  const Bb84Session& s = r.session;

  TrialRecord rec{trial, seed, {}};
  push(rec, "qber", s.qber_estimate);
  push(rec, "sift_fraction", s.sift_fraction());
  push(rec, "verdict", s.verdict == Bb84Verdict::Completed ? 1.0 : 0.0);  // 1 = completed
  push(rec, "key_length_raw", static_cast<double>(s.raw_key_alice.size()));
  push(rec, "key_length_final", static_cast<double>(r.final_alice.size()));
  push(rec, "keys_identical", r.keys_identical ? 1.0 : 0.0);
  push(rec, "adversary_agreement", eve_sifted_agreement(s));
  if (entangled && cfg.chsh_pairs > 0) {
    Rng chsh_rng(RngSeed{seed ^ 0xC45C4DE5ULL});
    push(rec, "chsh_s", chsh_estimate(cfg.chsh_pairs, chsh_rng).s_value);
  }
  return rec;
}

inline TrialRecord run_analyze_trial(const ExperimentConfig& cfg, std::size_t trial,
                                     std::uint64_t seed) {
  if (cfg.state_path.empty()) {
    throw ConfigError("analyze: --state is required");
  }
  std::ifstream in(cfg.state_path);
  if (!in) throw ConfigError("analyze: cannot open '" + cfg.state_path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("analyze: bad state JSON: ") + e.what());
  }
  const PureState state = pure_state_from_json(j);
  if (cfg.cut == 0 || cfg.cut >= state.num_qubits()) {
    throw ConfigError("analyze: cut must split the register");
  }

  const SchmidtDecomposition schmidt = schmidt_decompose(state, cfg.cut);
  TrialRecord rec{trial, seed, {}};
  push(rec, "num_qubits", static_cast<double>(state.num_qubits()));
  push(rec, "cut", static_cast<double>(cfg.cut));
  push(rec, "entanglement_entropy", entanglement_entropy(state, cfg.cut));
  push(rec, "schmidt_rank", static_cast<double>(schmidt.rank()));
  push(rec, "largest_schmidt_coefficient", schmidt.coefficients.front());
  push(rec, "is_entangled", schmidt.rank() >= 2 ? 1.0 : 0.0);
  return rec;
}

}  // namespace detail

/// Execute the configured experiment: `trials` runs with derived seeds
/// (seed + trial index), each recorded with its seed for exact replay, plus
/// deterministic aggregate statistics.
inline Report run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw ConfigError("trials must be positive");
  if (cfg.format != "json" && cfg.format != "csv") {
    throw ConfigError("format must be json or csv");
  }

  Report report;
  report.config = cfg;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = cfg.seed + t;
    if (cfg.command == "teleport") {
      report.trials.push_back(detail::run_teleport_trial(t, seed));
    } else if (cfg.command == "superdense") {
      report.trials.push_back(detail::run_superdense_trial(t, seed));
    } else if (cfg.command == "swap") {
      report.trials.push_back(detail::run_swap_trial(t, seed));
    } else if (cfg.command == "tomography") {
      report.trials.push_back(detail::run_tomography_trial(t, seed, cfg.shots));
    } else if (cfg.command == "bb84") {
      report.trials.push_back(detail::run_bb84_trial(cfg, t, seed, false));
    } else if (cfg.command == "bb84-entangled") {
      report.trials.push_back(detail::run_bb84_trial(cfg, t, seed, true));
    } else if (cfg.command == "analyze") {
      report.trials.push_back(detail::run_analyze_trial(cfg, t, seed));
    } else {
      throw ConfigError("unknown command '" + cfg.command + "'");
    }
  }
  report.summary = summarize(report.trials);
  return report;
}

inline json report_to_json(const Report& report) {
  const ExperimentConfig& c = report.config;
  json config{{"command", c.command}, {"trials", c.trials}, {"seed", c.seed}};
  if (c.command == "bb84" || c.command == "bb84-entangled") {
    config["qubits"] = c.qubits;
    config["adversary"] = c.adversary;
    config["check_fraction"] = c.check_fraction;
    config["abort_threshold"] = c.abort_threshold;
    config["recon_rounds"] = c.recon_rounds;
    if (c.command == "bb84-entangled") config["chsh_pairs"] = c.chsh_pairs;
  } else if (c.command == "tomography") {
    config["shots"] = c.shots;
  } else if (c.command == "analyze") {
    config["state"] = c.state_path;
    config["cut"] = c.cut;
  }

  json trials = json::array();
  for (const TrialRecord& t : report.trials) {
    json metrics;
    for (const auto& [k, v] : t.metrics) metrics[k] = v;
    trials.push_back(json{{"trial", t.trial}, {"seed", t.seed}, {"metrics", metrics}});
  }

  json summary;
  for (const auto& [name, s] : report.summary) {
    summary[name] =
        json{{"mean", s.mean}, {"stddev", s.stddev}, {"min", s.min}, {"max", s.max}};
  }
  return json{{"config", std::move(config)},
              {"trials", std::move(trials)},
              {"summary", std::move(summary)}};
}

inline std::string report_to_csv(const Report& report) {
  std::ostringstream os;
  os << "trial,seed";
  for (const auto& [name, value] : report.trials.front().metrics) os << ',' << name;
  os << '\n';
  for (const TrialRecord& t : report.trials) {
    os << t.trial << ',' << t.seed;
    for (const auto& [name, value] : t.metrics) {
      os << ',' << json(value).dump();  // shortest round-trip float formatting
    }
    os << '\n';
  }
  return os.str();
}

/// Run and write the report; returns the process exit code (0 ok, 2 config
/// error, 3 invariant violation).
inline int run_and_write(const ExperimentConfig& cfg, std::ostream& out,
                         std::ostream& err) {
  try {
    const Report report = run_experiment(cfg);
    std::string payload = cfg.format == "csv" ? report_to_csv(report)
                                              : report_to_json(report).dump(2) + "\n";
    if (cfg.output_path.empty()) {
      out << payload;
    } else {
      std::ofstream f(cfg.output_path, std::ios::binary);
      if (!f) {
        err << "error: cannot write '" << cfg.output_path << "'\n";
        return 2;
      }
      f << payload;
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "invariant violation: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace qinfo

#endif  // QINFO_EXPERIMENT_HPP
