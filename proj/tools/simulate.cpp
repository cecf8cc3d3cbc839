// simulate: runs one intrusion scenario and checks its expectations.
//
// Exit status: 0 all expectations pass, 1 an expectation failed, 2 input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gsmids/harness.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitExpectationFailed = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic GSM intrusion-detection simulator"};
  app.name("simulate");

  std::string config_path;
  std::string scenario_path;
  std::optional<gsmids::Millis> horizon_ms;
  std::string transcript_path;
  bool quiet = false;

  app.add_option("--config", config_path, "Firmware/sensor config file (key = value)");
  app.add_option("--scenario", scenario_path, "Scenario file")->required();
  app.add_option("--horizon", horizon_ms, "Simulated duration in ms (default: last event + 30000)");
  app.add_option("--transcript", transcript_path, "Write the JSONL transcript here instead of stdout");
  app.add_flag("--quiet", quiet, "Suppress transcript on stdout and verdict lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  gsmids::Transcript transcript;
  gsmids::Scenario scenario;
  try {
    const gsmids::SimulationConfig config =
        config_path.empty() ? gsmids::SimulationConfig{} : gsmids::parse_config(read_file(config_path));
    scenario = gsmids::parse_scenario(read_file(scenario_path));
    const gsmids::SimTime horizon =
        horizon_ms ? gsmids::SimTime{*horizon_ms} : gsmids::default_horizon(scenario);
    transcript = gsmids::run(config, scenario, horizon);
  } catch (const gsmids::ConfigError& e) {
    std::cerr << "simulate: config " << config_path << ": " << e.what() << "\n";
    return kExitInputError;
  } catch (const gsmids::ParseError& e) {
    std::cerr << "simulate: scenario " << scenario_path << ": " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "simulate: " << e.what() << "\n";
    return kExitInputError;
  }

  const std::string jsonl = gsmids::to_jsonl(transcript);
  if (!transcript_path.empty()) {
    std::ofstream out(transcript_path, std::ios::binary);
    out << jsonl;
    if (!out) {
      std::cerr << "simulate: cannot write '" << transcript_path << "'\n";
      return kExitInputError;
    }
  } else if (!quiet) {
    std::cout << jsonl;
  }

  const gsmids::CheckReport report = gsmids::check_expectations(transcript, scenario.expectations);
  if (!quiet) {
    for (const auto& v : report.verdicts) {
      std::cerr << (v.passed ? "PASS " : "FAIL ") << v.expectation << ": " << v.message << "\n";
    }
  }
  return report.all_passed ? kExitPass : kExitExpectationFailed;
}
