#include "gsmids/controller.hpp"

#include <algorithm>
#include <stdexcept>

namespace gsmids {

std::string_view to_string(AlertPolicy p) {
  switch (p) {
    case AlertPolicy::IndicatorOnly: return "indicator_only";
    case AlertPolicy::IndicatorDial: return "indicator_dial";
    case AlertPolicy::IndicatorDialSms: return "indicator_dial_sms";
  }
  return "?";
}

std::string_view to_string(AlertSource s) {
  switch (s) {
    case AlertSource::Sound: return "sound";
    case AlertSource::Pir: return "pir";
    case AlertSource::Magnetic: return "magnetic";
  }
  return "?";
}

std::string_view to_string(ControllerAction::Kind k) {
  using K = ControllerAction::Kind;
  switch (k) {
    case K::Sample: return "sample";
    case K::IndicatorOn: return "indicator_on";
    case K::IndicatorOff: return "indicator_off";
    case K::UartWrite: return "uart_write";
    case K::ReadSerial: return "uart_read";
    case K::Log: return "log";
  }
  return "?";
}

void FirmwareConfig::validate() const {
  if (!is_valid_owner_number(owner_number)) {
    throw std::invalid_argument("owner_number must be non-empty and match [+0-9]+");
  }
  if (sound_threshold < 0 || sound_threshold > AdcReading::kMax) {
    throw std::invalid_argument("sound_threshold must be in [0, 1023]");
  }
  const std::pair<const char*, Millis> durations[] = {
      {"sample_period_ms", sample_period_ms},
      {"boot_delay_ms", boot_delay_ms},
      {"indicator_pulse_ms", indicator_pulse_ms},
      {"post_dial_wait_ms", post_dial_wait_ms},
      {"sms_step_ms", sms_step_ms},
  };
  for (const auto& [name, value] : durations) {
    if (value <= 0) throw std::invalid_argument(std::string(name) + " must be positive");
  }
  if (sms_text.find(kCtrlZ) != std::string::npos) {
    throw std::invalid_argument("sms_text must not contain 0x1A");
  }
}

bool evaluate_sound(const FirmwareConfig& cfg, AdcReading val) {
  return val.counts() > cfg.sound_threshold;
}

bool evaluate_pir(PinLevel level) { return level == PinLevel::Low; }

bool evaluate_magnetic(PinLevel level) { return level == PinLevel::High; }

bool is_valid_owner_number(std::string_view number) {
  return !number.empty() && std::all_of(number.begin(), number.end(), [](char c) {
    return c == '+' || (c >= '0' && c <= '9');
  });
}

std::string dial_sequence(std::string_view number) {
  if (!is_valid_owner_number(number)) {
    throw std::invalid_argument("dial number must match [+0-9]+");
  }
  std::string out = "ATD";
  out += number;
  out += ";\r\n";
  return out;
}

std::vector<ControllerAction> sms_sequence(std::string_view number, std::string_view text,
                                           SimTime start, Millis step_ms) {
  if (!is_valid_owner_number(number)) {
    throw std::invalid_argument("SMS number must match [+0-9]+");
  }
  if (text.find(kCtrlZ) != std::string_view::npos) {
    throw std::invalid_argument("SMS text must not contain 0x1A");
  }
  using K = ControllerAction::Kind;
  std::string cmgs = "AT+CMGS=\"";
  cmgs += number;
  cmgs += "\"\r";
  return {
      {start, K::UartWrite, "AT+CMGF=1\r\n"},
      {start + step_ms, K::UartWrite, std::move(cmgs)},
      {start + 2 * step_ms, K::UartWrite, std::string(text)},
      {start + 3 * step_ms, K::UartWrite, std::string(1, kCtrlZ)},
      {start + 4 * step_ms, K::ReadSerial, {}},
  };
}

TickResult controller_boot(const FirmwareConfig& cfg, SimTime now) {
  const SimTime until = now + cfg.boot_delay_ms;
  return {Booting{until}, {{now, ControllerAction::Kind::Log, "initializing..."}}, until};
}

namespace {

// Appends one branch's blocking sequence starting at `t`; returns the time
// the sequence releases the loop.
SimTime run_branch(const FirmwareConfig& cfg, AlertPolicy policy, SimTime t,
                   std::vector<ControllerAction>& out) {
  using K = ControllerAction::Kind;
  out.push_back({t, K::IndicatorOn, {}});
  out.push_back({t + cfg.indicator_pulse_ms, K::IndicatorOff, {}});
  t = t + 2 * cfg.indicator_pulse_ms;
  if (policy == AlertPolicy::IndicatorOnly) return t;

  out.push_back({t, K::UartWrite, dial_sequence(cfg.owner_number)});
  t = t + cfg.post_dial_wait_ms;
  out.push_back({t, K::ReadSerial, {}});
  if (policy == AlertPolicy::IndicatorDial) return t;

  auto sms = sms_sequence(cfg.owner_number, cfg.sms_text, t, cfg.sms_step_ms);
  out.insert(out.end(), sms.begin(), sms.end());
  return t + 5 * cfg.sms_step_ms;
}

}  // namespace

TickResult controller_tick(const FirmwareConfig& cfg, const ControllerPhase& phase,
                           const SensorInputs& inputs, SimTime now) {
  if (const auto* b = std::get_if<Booting>(&phase); b && now < b->until) {
    return {phase, {}, b->until};
  }
  if (const auto* a = std::get_if<Alerting>(&phase); a && now < a->until) {
    return {phase, {}, a->until};
  }

  using K = ControllerAction::Kind;
  std::vector<ControllerAction> actions;
  actions.push_back({now, K::Sample,
                     "sound=" + std::to_string(inputs.sound.counts()) +
                         " pir=" + std::to_string(to_int(inputs.pir)) +
                         " magnetic=" + std::to_string(to_int(inputs.magnetic))});

  SimTime t = now;
  std::optional<AlertSource> first;
  auto branch = [&](bool triggered, AlertSource src, const char* tag, AlertPolicy policy) {
    if (!triggered) return;
    if (!first) first = src;
    actions.push_back({t, K::Log, tag});
    t = run_branch(cfg, policy, t, actions);
  };
  branch(evaluate_sound(cfg, inputs.sound), AlertSource::Sound, "noise detected", cfg.sound_policy);
  branch(evaluate_pir(inputs.pir), AlertSource::Pir, "PIR", cfg.pir_policy);
  branch(evaluate_magnetic(inputs.magnetic), AlertSource::Magnetic, "Magnetic",
         cfg.magnetic_policy);

  if (!first) return {Monitoring{}, std::move(actions), now + cfg.sample_period_ms};
  return {Alerting{*first, t}, std::move(actions), t + cfg.sample_period_ms};
}

}  // namespace gsmids
