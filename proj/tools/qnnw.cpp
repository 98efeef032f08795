// Copyright 2026 The qnnw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: witness, verify, compile, train, bootstrap, sample.
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 dimension error, 4 training divergence.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qnnw/qnnw.hpp"

namespace fs = std::filesystem;
using namespace qnnw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitDimension = 3;
constexpr int kExitDivergence = 4;

constexpr double kVerifyTolerance = 1e-9;

struct Options {
  std::string config;
  std::string schedule;
  std::string circuit;
  std::string out;
  std::string out_dir = ".";
  std::string state = "Bell";
  std::string pair = "0,1";
  std::string method = "chunked";
  std::string shots = "50:20000:50";
  std::size_t n_qubits = 2;
  std::size_t n_max = 7;
  std::size_t chunks = 4;
  std::size_t iterations = 100;
  std::size_t max_epochs = 2000;
  std::uint64_t seed = 0;
  double learning_rate = 0.05;
  double target_rms = 1e-3;
  double momentum = 0.9;
  double confidence = 0.95;
  bool no_elide = false;
};

struct ReproEntry {
  const char* artifact;
  const char* command;
};

// One command per published data artifact.
constexpr ReproEntry kRepro[] = {
    {"witness-table (chunked column)", "qnnw witness --schedule table2.json --state all --method chunked"},
    {"witness-table (gates column)", "qnnw witness --schedule table2.json --state all --method gates"},
    {"two-qubit parameters", "qnnw train --schedule table2.json --max-epochs 0 --out-dir out/table2"},
    {"seven-qubit parameters", "qnnw train --schedule table3.json --max-epochs 0 --out-dir out/table3"},
    {"shot variance and confidence bands", "qnnw sample --schedule table2.json --state all --out-dir out/shots"},
    {"bootstrapped K/eps/zeta vs N (4 chunks)", "qnnw bootstrap --schedule table2.json --n-max 7 --out-dir out/bootstrap4"},
    {"rms vs N, 8 chunks", "qnnw bootstrap --schedule table2.json --n-max 7 --chunks 8 --out-dir out/bootstrap8"},
    {"gate counts", "qnnw compile --schedule table2.json --no-elide --out out/table2.qasm"},
    {"gate vs chunked vs exact equivalence", "qnnw verify --schedule table2.json"},
};

std::string resolve_fixture(const std::string& path) {
  if (path.empty() || fs::exists(path)) return path;
  const fs::path bundled = fs::path(QNNW_DATA_DIR) / path;
  return fs::exists(bundled) ? bundled.string() : path;
}

Schedule load(const Options& o) {
  if (o.schedule.empty()) throw ParseError("--schedule is required");
  return load_schedule(resolve_fixture(o.schedule));
}

QubitPair parse_pair(const std::string& text) {
  const auto sep = text.find_first_of(",-:");
  try {
    if (sep == std::string::npos) throw std::invalid_argument(text);
    std::size_t a = std::stoul(text.substr(0, sep));
    std::size_t b = std::stoul(text.substr(sep + 1));
    if (a == b) throw ParseError("--pair needs two distinct qubits, got '" + text + "'");
    if (a > b) std::swap(a, b);
    return {a, b};
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("--pair: expected 'i,j', got '" + text + "'");
  }
}

std::vector<std::size_t> parse_shots(const std::string& text) {
  try {
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) return {static_cast<std::size_t>(std::stoul(text))};
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument(text);
    return ShotConfig::grid(std::stoul(text.substr(0, c1)), std::stoul(text.substr(c1 + 1, c2 - c1 - 1)),
                            std::stoul(text.substr(c2 + 1)));
  } catch (const std::exception&) {
    throw ParseError("--shots: expected N or lo:hi:step, got '" + text + "'");
  }
}

std::vector<PairStateKind> parse_states(const std::string& text) {
  if (text == "all") return {kAllPairStates.begin(), kAllPairStates.end()};
  try {
    return {parse_pair_state_kind(text)};
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("--state: ") + e.what());
  }
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

TrainerConfig trainer_config(const Options& o) {
  TrainerConfig cfg;
  cfg.learning_rate = o.learning_rate;
  cfg.max_epochs = o.max_epochs;
  cfg.target_rms = o.target_rms;
  cfg.momentum = o.momentum;
  cfg.chunk_count = o.chunks;
  cfg.seed = o.seed;
  if (o.method == "exact") {
    cfg.method = Propagation::Exact;
  } else if (o.method == "chunked") {
    cfg.method = Propagation::Chunked;
  } else {
    throw ParseError("--method: training supports exact or chunked, got '" + o.method + "'");
  }
  return cfg;
}

int cmd_witness(const Options& o) {
  const Schedule s = load(o);
  const QubitPair pair = parse_pair(o.pair);
  WitnessMethod method;
  try {
    method = parse_witness_method(o.method);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("--method: ") + e.what());
  }
  for (auto kind : parse_states(o.state)) {
    const double v = witness_value(make_pair_state(kind, pair, s.n_qubits), pair, s, method);
    std::cout << witness_csv_row(kind, pair, method, v) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const Options& o) {
  const Schedule s = load(o);
  std::optional<Circuit> circuit;
  if (!o.circuit.empty()) {
    std::ifstream in(o.circuit);
    if (!in) throw ParseError("cannot open circuit file '" + o.circuit + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    circuit = parse_qasm(buf.str());
  }
  const auto report = verify_equivalence(s, parse_pair(o.pair), circuit);
  const bool ok = report.frobenius_gate_vs_chunked <= kVerifyTolerance &&
                  report.max_state_gate_vs_chunked() <= kVerifyTolerance;
  auto doc = to_json(report);
  doc["tolerance"] = kVerifyTolerance;
  doc["ok"] = ok;
  std::cout << doc.dump(2) << "\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_compile(const Options& o) {
  const Schedule s = load(o);
  const Circuit c = compile_schedule(s, CompileOptions{!o.no_elide});
  const std::string qasm = export_qasm(c);
  const std::string summary =
      "1q=" + std::to_string(c.single_qubit_count()) + " 2q=" + std::to_string(c.two_qubit_count());
  if (o.out.empty()) {
    std::cout << qasm;
    std::cerr << summary << "\n";
  } else {
    write_file(o.out, qasm);
    std::cout << summary << "\n";
  }
  return kExitOk;
}

void report_training(const TrainResult& r) {
  std::cout << "n_qubits=" << r.schedule.n_qubits << " epochs=" << r.epochs_used
            << " rms=" << format_real(r.final_rms()) << " converged=" << (r.converged ? "true" : "false")
            << "\n";
}

int cmd_train(const Options& o) {
  const TrainerConfig cfg = trainer_config(o);
  const Schedule init = o.schedule.empty() ? random_schedule(o.n_qubits, cfg) : load(o);
  const fs::path dir(o.out_dir);
  try {
    const TrainResult r = train(init, build_training_set(init.n_qubits), cfg);
    fs::create_directories(dir);
    save_schedule(r.schedule, (dir / "schedule.json").string());
    write_file(dir / "rms_history.csv", rms_history_csv(r));
    report_training(r);
  } catch (const DivergenceError& e) {
    fs::create_directories(dir);
    save_schedule(e.last_good(), (dir / "schedule.json").string());
    throw;
  }
  return kExitOk;
}

int cmd_bootstrap(const Options& o) {
  const TrainerConfig cfg = trainer_config(o);
  const Schedule start = o.schedule.empty() ? random_schedule(o.n_qubits, cfg) : load(o);
  if (!start.symmetric) throw ParseError("bootstrap: starting schedule must be symmetric");
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);

  std::vector<TrainResult> chain;
  try {
    chain.push_back(train(start, build_training_set(start.n_qubits), cfg));
    report_training(chain.back());
    for (std::size_t n = start.n_qubits + 1; n <= o.n_max; ++n) {
      chain.push_back(bootstrap(chain.back(), n, cfg));
      report_training(chain.back());
    }
  } catch (const DivergenceError& e) {
    save_schedule(e.last_good(), (dir / "schedule_last_good.json").string());
    write_file(dir / "bootstrap_summary.csv", bootstrap_summary_csv(chain));
    throw;
  }
  for (const auto& r : chain) {
    const std::string tag = "N" + std::to_string(r.schedule.n_qubits);
    save_schedule(r.schedule, (dir / ("schedule_" + tag + ".json")).string());
    write_file(dir / ("rms_history_" + tag + ".csv"), rms_history_csv(r));
  }
  write_file(dir / "bootstrap_summary.csv", bootstrap_summary_csv(chain));
  return kExitOk;
}

int cmd_sample(const Options& o, bool out_dir_given) {
  const Schedule s = load(o);
  const QubitPair pair = parse_pair(o.pair);
  ShotConfig cfg;
  cfg.shot_counts = parse_shots(o.shots);
  cfg.iterations = o.iterations;
  cfg.confidence_level = o.confidence;
  cfg.seed = o.seed;
  const auto kinds = parse_states(o.state);
  for (auto kind : kinds) {
    const std::string csv = sweep_csv(sweep(s, kind, pair, cfg));
    if (out_dir_given) {
      write_file(fs::path(o.out_dir) / ("sweep_" + std::string(to_string(kind)) + ".csv"), csv);
    } else if (kinds.size() == 1) {
      std::cout << csv;
    } else {
      std::cout << "# state=" << to_string(kind) << "\n" << csv;
    }
  }
  return kExitOk;
}

// Injects keys from a JSON config file as flags unless the flag was given on
// the command line. Keys map to flags by replacing '_' with '-'.
std::vector<std::string> merge_config(const std::vector<std::string>& args, CLI::App& app) {
  std::string config_path;
  std::string subcommand;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) config_path = args[k + 1];
    if (args[k].rfind("--config=", 0) == 0) config_path = args[k].substr(9);
    if (subcommand.empty() && app.get_subcommand_no_throw(args[k]) != nullptr) subcommand = args[k];
  }
  if (config_path.empty()) return args;
  if (subcommand.empty()) throw ParseError("--config needs a subcommand");

  std::ifstream in(config_path);
  if (!in) throw ParseError("cannot open config file '" + config_path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("config: invalid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw ParseError("config: document must be a JSON object");

  CLI::App* sub = app.get_subcommand(subcommand);
  std::vector<std::string> merged = args;
  for (const auto& [key, value] : doc.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (sub->get_option_no_throw(flag) == nullptr) {
      throw ParseError("config: unknown key '" + key + "' for '" + subcommand + "'");
    }
    bool given = false;
    for (const auto& a : args) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
    if (given) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) merged.push_back(flag);
    } else if (value.is_string()) {
      merged.push_back(flag);
      merged.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      merged.push_back(flag);
      merged.push_back(value.dump());
    } else {
      throw ParseError("config: key '" + key + "' must be a string, number or boolean");
    }
  }
  return merged;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  bool list_repro = false;

  CLI::App app{"Trained pairwise entanglement witness: propagation, gate compilation, training, shot sampling"};
  app.set_version_flag("--version", "qnnw 1.0.0");
  app.add_flag("--list-repro", list_repro, "Print the command that regenerates each data artifact");
  app.add_option("--config", o.config, "JSON file with option defaults (flags override)");
  app.require_subcommand(0, 1);
  app.fallthrough();

  auto add_schedule = [&](CLI::App* c) { c->add_option("--schedule", o.schedule, "Schedule JSON (bundled: table2.json, table3.json)"); };
  auto add_pair = [&](CLI::App* c) { c->add_option("--pair", o.pair, "Qubit pair 'i,j'")->capture_default_str(); };
  auto add_state = [&](CLI::App* c) { c->add_option("--state", o.state, "Bell, Flat, C, P or all")->capture_default_str(); };
  auto add_training = [&](CLI::App* c) {
    c->add_option("--chunks", o.chunks, "Chunk count")->capture_default_str();
    c->add_option("--max-epochs", o.max_epochs, "Epoch cap")->capture_default_str();
    c->add_option("--learning-rate", o.learning_rate, "Gradient step size")->capture_default_str();
    c->add_option("--target-rms", o.target_rms, "Stop once rms reaches this")->capture_default_str();
    c->add_option("--momentum", o.momentum, "Momentum coefficient")->capture_default_str();
    c->add_option("--method", o.method, "Loss propagation: exact or chunked")->capture_default_str();
    c->add_option("--seed", o.seed, "Seed for random initialization")->capture_default_str();
    c->add_option("--n-qubits", o.n_qubits, "Qubits for random initialization")->capture_default_str();
    c->add_option("--out-dir", o.out_dir, "Output directory")->capture_default_str();
  };

  auto* witness = app.add_subcommand("witness", "Evaluate the witness for a state and pair");
  add_schedule(witness);
  add_state(witness);
  add_pair(witness);
  witness->add_option("--method", o.method, "exact, chunked or gates")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Compare gate, chunked and exact propagation");
  add_schedule(verify);
  add_pair(verify);
  verify->add_option("--circuit", o.circuit, "QASM circuit to check instead of the compiled one");

  auto* compile = app.add_subcommand("compile", "Compile a schedule to OpenQASM 2.0");
  add_schedule(compile);
  compile->add_option("-o,--out", o.out, "Output .qasm file (stdout if omitted)");
  compile->add_flag("--no-elide", o.no_elide, "Keep rotations with negligible angles");

  auto* train_cmd = app.add_subcommand("train", "Train a schedule against the training set");
  add_schedule(train_cmd);
  add_training(train_cmd);

  auto* boot = app.add_subcommand("bootstrap", "Train N qubits from N-1, up to --n-max");
  add_schedule(boot);
  add_training(boot);
  boot->add_option("--n-max", o.n_max, "Largest qubit count")->capture_default_str();

  auto* sample = app.add_subcommand("sample", "Finite-shot sweep of the witness estimator");
  add_schedule(sample);
  add_state(sample);
  add_pair(sample);
  sample->add_option("--shots", o.shots, "Shot count N or grid lo:hi:step")->capture_default_str();
  sample->add_option("--iterations", o.iterations, "Estimates per shot count")->capture_default_str();
  sample->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  sample->add_option("--confidence", o.confidence, "Confidence level")->capture_default_str();
  auto* sample_out_dir = sample->add_option("--out-dir", o.out_dir, "Write sweep_<state>.csv here instead of stdout");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = merge_config(args, app);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  if (list_repro) {
    for (const auto& e : kRepro) std::cout << e.artifact << "\t" << e.command << "\n";
    return kExitOk;
  }

  try {
    if (witness->parsed()) return cmd_witness(o);
    if (verify->parsed()) return cmd_verify(o);
    if (compile->parsed()) return cmd_compile(o);
    if (train_cmd->parsed()) return cmd_train(o);
    if (boot->parsed()) return cmd_bootstrap(o);
    if (sample->parsed()) return cmd_sample(o, sample_out_dir->count() > 0);
    std::cout << app.help();
    return kExitInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << " (last good rms " << format_real(e.last_good_rms()) << ")\n";
    return kExitDivergence;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDimension;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDimension;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
}
