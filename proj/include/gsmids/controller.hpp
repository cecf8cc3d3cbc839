#ifndef GSMIDS_CONTROLLER_HPP
#define GSMIDS_CONTROLLER_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gsmids/sensors.hpp"
#include "gsmids/sim_kernel.hpp"

namespace gsmids {

enum class AlertPolicy { IndicatorOnly, IndicatorDial, IndicatorDialSms };
enum class AlertSource { Sound, Pir, Magnetic };

std::string_view to_string(AlertPolicy p);
std::string_view to_string(AlertSource s);

/// Firmware constants. Defaults are the values baked into the original
/// alarm sketch.
struct FirmwareConfig {
  std::string owner_number = "+2347048850497";
  int sound_threshold = 800;
  Millis sample_period_ms = 500;
  Millis boot_delay_ms = 15000;
  Millis indicator_pulse_ms = 1000;
  Millis post_dial_wait_ms = 2000;
  Millis sms_step_ms = 1000;
  AlertPolicy sound_policy = AlertPolicy::IndicatorOnly;
  AlertPolicy pir_policy = AlertPolicy::IndicatorDial;
  AlertPolicy magnetic_policy = AlertPolicy::IndicatorDialSms;
  std::string sms_text = "ALERT!!\n Intruder detected!!!";

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct Booting {
  SimTime until;
  bool operator==(const Booting&) const = default;
};
struct Monitoring {
  bool operator==(const Monitoring&) const = default;
};
/// Sampling is suspended until the alert's last scheduled action completes.
struct Alerting {
  AlertSource source;
  SimTime until;
  bool operator==(const Alerting&) const = default;
};

using ControllerPhase = std::variant<Booting, Monitoring, Alerting>;

struct ControllerAction {
  enum class Kind { Sample, IndicatorOn, IndicatorOff, UartWrite, ReadSerial, Log };

  SimTime at;
  Kind kind;
  /// Bytes for UartWrite, message for Log, sampled inputs for Sample.
  std::string data;

  bool operator==(const ControllerAction&) const = default;
};

std::string_view to_string(ControllerAction::Kind k);

struct TickResult {
  ControllerPhase phase;
  /// Ordered by `at`; timestamps may lie in the future for alert sequences.
  std::vector<ControllerAction> actions;
  SimTime next_tick;
};

/// Power-on: logs the banner and enters Booting for boot_delay_ms.
TickResult controller_boot(const FirmwareConfig& cfg, SimTime now);

/// One pass of the firmware loop. Inputs are sampled at `now`; sound, PIR
/// and magnetic branches run in that order and every triggered branch
/// contributes its full action sequence.
TickResult controller_tick(const FirmwareConfig& cfg, const ControllerPhase& phase,
                           const SensorInputs& inputs, SimTime now);

bool evaluate_sound(const FirmwareConfig& cfg, AdcReading val);
bool evaluate_pir(PinLevel level);
bool evaluate_magnetic(PinLevel level);

/// True iff `number` is non-empty and made of '+' and digits.
bool is_valid_owner_number(std::string_view number);

/// "ATD<number>;\r\n". Throws std::invalid_argument on a bad number.
std::string dial_sequence(std::string_view number);

/// Text-mode SMS submission as UART writes spaced `step_ms` apart starting
/// at `start`, followed by the response read one step after the Ctrl-Z.
/// Throws std::invalid_argument if `text` contains 0x1A or the number is bad.
std::vector<ControllerAction> sms_sequence(std::string_view number, std::string_view text,
                                           SimTime start, Millis step_ms = 1000);

inline constexpr char kCtrlZ = 0x1A;

}  // namespace gsmids

#endif  // GSMIDS_CONTROLLER_HPP
