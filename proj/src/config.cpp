#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "gsmids/scenario.hpp"
#include "text_util.hpp"

namespace gsmids {

ConfigError::ConfigError(int line, std::string key, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " +
                         (key.empty() ? std::string() : "'" + key + "': ") + message),
      line_(line),
      key_(std::move(key)) {}

namespace {

struct ValueContext {
  int line;
  const std::string& key;
  const std::string& value;

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(line, key, msg); }

  std::int64_t integer(std::int64_t lo, std::int64_t hi) const {
    const auto v = detail::parse_int(value);
    if (!v) fail("expected an integer, got '" + value + "'");
    if (*v < lo || *v > hi) {
      fail("value " + value + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return *v;
  }

  Millis duration() const { return integer(1, kMaxInputMillis); }

  double real() const {
    const auto v = detail::parse_double(value);
    if (!v || !std::isfinite(*v)) fail("expected a finite number, got '" + value + "'");
    return *v;
  }

  bool boolean() const {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    fail("expected true|false, got '" + value + "'");
  }

  AlertPolicy policy() const {
    if (value == "indicator_only") return AlertPolicy::IndicatorOnly;
    if (value == "indicator_dial") return AlertPolicy::IndicatorDial;
    if (value == "indicator_dial_sms") return AlertPolicy::IndicatorDialSms;
    fail("expected indicator_only|indicator_dial|indicator_dial_sms, got '" + value + "'");
  }
};

using Setter = std::function<void(SimulationConfig&, const ValueContext&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"owner_number",
       [](SimulationConfig& c, const ValueContext& v) {
         if (!is_valid_owner_number(v.value)) v.fail("number must match [+0-9]+");
         c.firmware.owner_number = v.value;
       }},
      {"sound_threshold",
       [](SimulationConfig& c, const ValueContext& v) {
         c.firmware.sound_threshold = static_cast<int>(v.integer(0, AdcReading::kMax));
       }},
      {"sample_period_ms", [](SimulationConfig& c, const ValueContext& v) { c.firmware.sample_period_ms = v.duration(); }},
      {"boot_delay_ms", [](SimulationConfig& c, const ValueContext& v) { c.firmware.boot_delay_ms = v.duration(); }},
      {"indicator_pulse_ms", [](SimulationConfig& c, const ValueContext& v) { c.firmware.indicator_pulse_ms = v.duration(); }},
      {"post_dial_wait_ms", [](SimulationConfig& c, const ValueContext& v) { c.firmware.post_dial_wait_ms = v.duration(); }},
      {"sms_step_ms", [](SimulationConfig& c, const ValueContext& v) { c.firmware.sms_step_ms = v.duration(); }},
      {"sound_policy", [](SimulationConfig& c, const ValueContext& v) { c.firmware.sound_policy = v.policy(); }},
      {"pir_policy", [](SimulationConfig& c, const ValueContext& v) { c.firmware.pir_policy = v.policy(); }},
      {"magnetic_policy", [](SimulationConfig& c, const ValueContext& v) { c.firmware.magnetic_policy = v.policy(); }},
      {"sms_text",
       [](SimulationConfig& c, const ValueContext& v) {
         if (v.value.find(kCtrlZ) != std::string::npos) v.fail("must not contain 0x1A");
         c.firmware.sms_text = v.value;
       }},
      {"pir_x", [](SimulationConfig& c, const ValueContext& v) { c.pir.position.x = v.real(); }},
      {"pir_y", [](SimulationConfig& c, const ValueContext& v) { c.pir.position.y = v.real(); }},
      {"pir_facing_deg", [](SimulationConfig& c, const ValueContext& v) { c.pir.facing_deg = v.real(); }},
      {"pir_half_angle_deg",
       [](SimulationConfig& c, const ValueContext& v) {
         const double a = v.real();
         if (!(a > 0.0 && a < 180.0)) v.fail("must be in (0, 180)");
         c.pir.half_angle_deg = a;
       }},
      {"pir_range_m",
       [](SimulationConfig& c, const ValueContext& v) {
         const double r = v.real();
         if (!(r > 0.0)) v.fail("must be positive");
         c.pir.range_m = r;
       }},
      {"pir_hold_ms", [](SimulationConfig& c, const ValueContext& v) { c.pir_hold_ms = v.integer(0, kMaxInputMillis); }},
      {"sound_baseline",
       [](SimulationConfig& c, const ValueContext& v) { c.sound_baseline = static_cast<int>(v.integer(0, AdcReading::kMax)); }},
      {"baud", [](SimulationConfig& c, const ValueContext& v) { c.baud = static_cast<std::uint32_t>(v.integer(1, 4'000'000)); }},
      {"modem_echo", [](SimulationConfig& c, const ValueContext& v) { c.modem_echo = v.boolean(); }},
  };
  return table;
}

}  // namespace

SimulationConfig parse_config(std::string_view text) {
  SimulationConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    std::vector<Token> tokens;
    try {
      tokens = tokenize_line(line, line_no);
    } catch (const ParseError& e) {
      throw ConfigError(line_no, "", e.what());
    }
    if (tokens.empty()) continue;

    // Accept "key=value" and "key = value" alike.
    std::string key;
    std::vector<Token> rest;
    if (!tokens[0].quoted && tokens[0].text.find('=') != std::string::npos) {
      const auto eq = tokens[0].text.find('=');
      key = tokens[0].text.substr(0, eq);
      const std::string tail = tokens[0].text.substr(eq + 1);
      if (!tail.empty()) rest.push_back({tail, false});
      rest.insert(rest.end(), tokens.begin() + 1, tokens.end());
    } else {
      key = tokens[0].text;
      if (tokens.size() < 2 || tokens[1].quoted || tokens[1].text.empty() || tokens[1].text[0] != '=') {
        throw ConfigError(line_no, key, "expected 'key = value'");
      }
      const std::string tail = tokens[1].text.substr(1);
      if (!tail.empty()) rest.push_back({tail, false});
      rest.insert(rest.end(), tokens.begin() + 2, tokens.end());
    }
    if (key.empty()) throw ConfigError(line_no, "", "missing key");
    if (rest.size() != 1) throw ConfigError(line_no, key, rest.empty() ? "missing value" : "expected a single value (quote strings with spaces)");

    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(line_no, key, "unknown key");
    if (!seen.insert(key).second) throw ConfigError(line_no, key, "duplicate key");
    it->second(cfg, ValueContext{line_no, key, rest.front().text});
  }

  try {
    cfg.firmware.validate();
    cfg.pir.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, "", e.what());
  }
  return cfg;
}

}  // namespace gsmids
