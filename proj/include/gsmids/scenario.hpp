#ifndef GSMIDS_SCENARIO_HPP
#define GSMIDS_SCENARIO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gsmids/controller.hpp"
#include "gsmids/modem.hpp"
#include "gsmids/sensors.hpp"

namespace gsmids {

namespace stimulus {

struct Door {
  DoorState state;
  bool operator==(const Door&) const = default;
};
struct IntruderSet {
  Point position;
  bool operator==(const IntruderSet&) const = default;
};
struct IntruderClear {
  bool operator==(const IntruderClear&) const = default;
};
struct Sound {
  std::int64_t amplitude_counts;
  Millis duration_ms;
  bool operator==(const Sound&) const = default;
};
struct Call {
  CallDirective directive;
  bool operator==(const Call&) const = default;
};

}  // namespace stimulus

using StimulusKind = std::variant<stimulus::Door, stimulus::IntruderSet, stimulus::IntruderClear,
                                  stimulus::Sound, stimulus::Call>;

struct ScenarioEvent {
  SimTime at;
  StimulusKind kind;
  bool operator==(const ScenarioEvent&) const = default;
};

/// Human-readable form used in transcripts, e.g. "door open", "sound 900 600".
std::string describe(const StimulusKind& kind);

/// Applies a sensor stimulus at `ev.at`. Call directives are not sensor
/// stimuli and are rejected with std::invalid_argument.
SensorWorld apply_stimulus(SensorWorld world, const ScenarioEvent& ev);

namespace expect {

struct Call {
  std::string number;
  SimTime by;
  bool operator==(const Call&) const = default;
};
struct Sms {
  std::string number;
  std::string body;
  SimTime by;
  bool operator==(const Sms&) const = default;
};
/// No UART traffic in either direction strictly before `until`.
struct Quiet {
  SimTime until;
  bool operator==(const Quiet&) const = default;
};
/// Exactly `pulses` indicator pulses started at or before `by`.
struct Indicator {
  int pulses;
  SimTime by;
  bool operator==(const Indicator&) const = default;
};

}  // namespace expect

using Expectation = std::variant<expect::Call, expect::Sms, expect::Quiet, expect::Indicator>;

std::string describe(const Expectation& e);
SimTime deadline(const Expectation& e);

struct Scenario {
  /// Stable-sorted by `at`.
  std::vector<ScenarioEvent> events;
  std::vector<Expectation> expectations;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, std::string token, const std::string& message);
  int line() const { return line_; }
  const std::string& token() const { return token_; }

 private:
  int line_;
  std::string token_;
};

/// Line DSL:
///   at <ms> door open|close
///   at <ms> intruder set <x> <y> | at <ms> intruder clear
///   at <ms> sound <counts> <duration_ms>
///   at <ms> call answer|reject|remote_hangup
///   expect call <number> by <ms>
///   expect sms <number> "<body>" by <ms>
///   expect quiet until <ms>
///   expect indicator <pulses> by <ms>
/// '#' starts a comment outside quotes. Quoted strings take \n \r \t \\ \" \xNN.
Scenario parse_scenario(std::string_view text);

/// Everything a run needs besides the scenario.
struct SimulationConfig {
  FirmwareConfig firmware{};
  PirGeometry pir{};
  Millis pir_hold_ms = 2000;
  int sound_baseline = 0;
  std::uint32_t baud = kDefaultBaud;
  bool modem_echo = false;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string key, const std::string& message);
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

/// `key = value` lines; absent keys keep their defaults, unknown keys are
/// errors. String values may be quoted with the scenario escapes.
SimulationConfig parse_config(std::string_view text);

struct Token {
  std::string text;
  bool quoted = false;
  bool operator==(const Token&) const = default;
};

/// Splits a DSL/config line into whitespace-separated tokens, stopping at an
/// unquoted '#'. Throws ParseError on an unterminated quote or bad escape.
std::vector<Token> tokenize_line(std::string_view line, int line_no);

}  // namespace gsmids

#endif  // GSMIDS_SCENARIO_HPP
