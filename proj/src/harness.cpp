#include "gsmids/harness.hpp"

#include <algorithm>
#include <variant>

#include "json.hpp"

#include "text_util.hpp"

namespace gsmids {

std::string_view to_string(Source s) {
  switch (s) {
    case Source::Controller: return "controller";
    case Source::Modem: return "modem";
    case Source::Sensor: return "sensor";
    case Source::Harness: return "harness";
  }
  return "?";
}

SimTime default_horizon(const Scenario& scenario) {
  SimTime last{0};
  for (const auto& ev : scenario.events) last = std::max(last, ev.at);
  for (const auto& e : scenario.expectations) last = std::max(last, deadline(e));
  return last + 30'000;
}

namespace {

struct StimulusEvent {
  std::size_t index;
};
struct TickEvent {};
struct ActionEvent {
  ControllerAction action;
};
struct DeliverToModemEvent {};

using SimEvent = std::variant<StimulusEvent, TickEvent, ActionEvent, DeliverToModemEvent>;

class Simulation {
 public:
  Simulation(const SimulationConfig& cfg, const Scenario& scenario)
      : cfg_(cfg),
        scenario_(scenario),
        modem_(ModemConfig{cfg.modem_echo}),
        to_modem_(cfg.baud),
        to_controller_(cfg.baud) {
    world_.pir.geometry = cfg.pir;
    world_.pir.hold_ms = cfg.pir_hold_ms;
    world_.sound.baseline = AdcReading{cfg.sound_baseline};
  }

  Transcript run(SimTime horizon) {
    for (std::size_t i = 0; i < scenario_.events.size(); ++i) {
      queue_.schedule(scenario_.events[i].at, StimulusEvent{i});
    }
    apply_tick(controller_boot(cfg_.firmware, SimTime{0}));

    queue_.advance_to(horizon, [this](const auto& ev) {
      std::visit([&](const auto& payload) { handle(payload, ev.fire_at); }, ev.payload);
    });
    record(horizon, Source::Harness, "end", {});
    return std::move(transcript_);
  }

 private:
  void record(SimTime t, Source src, std::string kind, std::string detail) {
    transcript_.push_back({t, src, std::move(kind), std::move(detail)});
  }

  void apply_tick(TickResult result) {
    phase_ = std::move(result.phase);
    for (auto& a : result.actions) {
      const SimTime at = a.at;
      queue_.schedule(at, ActionEvent{std::move(a)});
    }
    queue_.schedule(result.next_tick, TickEvent{});
  }

  void handle(const StimulusEvent& s, SimTime now) {
    const ScenarioEvent& ev = scenario_.events[s.index];
    if (const auto* call = std::get_if<stimulus::Call>(&ev.kind)) {
      record(now, Source::Harness, "call_directive", std::string(to_string(call->directive)));
      ProgressResult r = modem_.call_progress(call->directive, now);
      if (r.warning) record(now, Source::Harness, "warning", *r.warning);
      if (r.updated && !r.updated->open()) record_call_end(*r.updated, now);
      if (!r.unsolicited.empty()) {
        record(now, Source::Modem, "unsolicited", r.unsolicited);
        to_controller_.send(r.unsolicited, now);
      }
      return;
    }
    world_ = apply_stimulus(std::move(world_), ev);
    record(now, Source::Sensor, "stimulus", describe(ev.kind));
  }

  void handle(const TickEvent&, SimTime now) {
    apply_tick(controller_tick(cfg_.firmware, phase_, world_.sample(now), now));
  }

  void handle(const ActionEvent& e, SimTime now) {
    using K = ControllerAction::Kind;
    const ControllerAction& a = e.action;
    switch (a.kind) {
      case K::UartWrite:
        record(now, Source::Controller, "uart_write", a.data);
        to_modem_.send(a.data, now);
        schedule_modem_deliveries();
        break;
      case K::ReadSerial:
        record(now, Source::Controller, "uart_read", to_controller_.drain(now));
        break;
      default:
        record(now, Source::Controller, std::string(to_string(a.kind)), a.data);
        break;
    }
  }

  void handle(const DeliverToModemEvent&, SimTime now) {
    const std::string bytes = to_modem_.drain(now);
    if (bytes.empty()) return;
    FeedResult r = modem_.feed(bytes, now);
    for (const auto& c : r.new_calls) record(now, Source::Modem, "call_start", c.number);
    for (const auto& c : r.closed_calls) record_call_end(c, now);
    for (const auto& s : r.new_sms) record(now, Source::Modem, "sms", s.number + " " + s.body);
    if (!r.response.empty()) {
      record(now, Source::Modem, "response", r.response);
      to_controller_.send(r.response, now);
    }
  }

  void record_call_end(const CallRecord& c, SimTime now) {
    record(now, Source::Modem, "call_end", c.number + " " + std::string(to_string(*c.outcome)));
  }

  void schedule_modem_deliveries() {
    for (SimTime t : to_modem_.delivery_times()) {
      if (last_delivery_scheduled_ && t <= *last_delivery_scheduled_) continue;
      queue_.schedule(t, DeliverToModemEvent{});
      last_delivery_scheduled_ = t;
    }
  }

  const SimulationConfig& cfg_;
  const Scenario& scenario_;
  SensorWorld world_;
  Modem modem_;
  SerialChannel to_modem_;
  SerialChannel to_controller_;
  ControllerPhase phase_ = Monitoring{};
  EventQueue<SimEvent> queue_;
  std::optional<SimTime> last_delivery_scheduled_;
  Transcript transcript_;
};

}  // namespace

Transcript run(const SimulationConfig& config, const Scenario& scenario, SimTime horizon) {
  if (horizon < SimTime{0} || horizon.t_ms > 2 * kMaxInputMillis) {
    throw HorizonError("horizon " + std::to_string(horizon.t_ms) + " ms out of range");
  }
  for (const auto& ev : scenario.events) {
    if (ev.at > horizon) {
      throw HorizonError("event at " + std::to_string(ev.at.t_ms) + " ms lies beyond horizon " +
                         std::to_string(horizon.t_ms) + " ms");
    }
  }
  for (const auto& e : scenario.expectations) {
    if (deadline(e) > horizon) {
      throw HorizonError("'" + describe(e) + "' lies beyond horizon " + std::to_string(horizon.t_ms) +
                         " ms");
    }
  }
  config.firmware.validate();
  config.pir.validate();
  return Simulation(config, scenario).run(horizon);
}

std::string to_json_line(const TranscriptRecord& rec) {
  std::string detail_utf8;
  detail_utf8.reserve(rec.detail.size());
  for (unsigned char c : rec.detail) {
    if (c < 0x80) {
      detail_utf8.push_back(static_cast<char>(c));
    } else {
      detail_utf8.push_back(static_cast<char>(0xC0 | (c >> 6)));
      detail_utf8.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  nlohmann::ordered_json j;
  j["t_ms"] = rec.t.t_ms;
  j["source"] = to_string(rec.source);
  j["kind"] = rec.kind;
  j["detail"] = std::move(detail_utf8);
  return j.dump(-1, ' ', true);
}

std::string to_jsonl(const Transcript& transcript) {
  std::string out;
  for (const auto& rec : transcript) {
    out += to_json_line(rec);
    out.push_back('\n');
  }
  return out;
}

namespace {

bool is_uart_traffic(const TranscriptRecord& r) {
  if (r.source == Source::Controller) return r.kind == "uart_write";
  if (r.source == Source::Modem) return r.kind == "response" || r.kind == "unsolicited";
  return false;
}

// Splits an "sms" record detail into (number, body).
std::pair<std::string_view, std::string_view> split_sms(std::string_view detail) {
  const auto sp = detail.find(' ');
  if (sp == std::string_view::npos) return {detail, {}};
  return {detail.substr(0, sp), detail.substr(sp + 1)};
}

std::string byte_name(std::string_view s, std::size_t i) {
  if (i >= s.size()) return "end of body";
  return "'" + detail::escape_bytes(s.substr(i, 1)) + "'";
}

Verdict evaluate(const Transcript& tr, const expect::Call& e) {
  for (const auto& r : tr) {
    if (r.source == Source::Modem && r.kind == "call_start" && r.detail == e.number && r.t <= e.by) {
      return {{}, true, "call to " + e.number + " at " + std::to_string(r.t.t_ms) + " ms"};
    }
  }
  return {{}, false, "no call to " + e.number + " by " + std::to_string(e.by.t_ms) + " ms"};
}

Verdict evaluate(const Transcript& tr, const expect::Sms& e) {
  const TranscriptRecord* first_candidate = nullptr;
  for (const auto& r : tr) {
    if (r.source != Source::Modem || r.kind != "sms" || r.t > e.by) continue;
    const auto [number, body] = split_sms(r.detail);
    if (number != e.number) continue;
    if (body == e.body) {
      return {{}, true, "SMS to " + e.number + " at " + std::to_string(r.t.t_ms) + " ms"};
    }
    if (!first_candidate) first_candidate = &r;
  }
  if (!first_candidate) {
    return {{}, false, "no SMS to " + e.number + " by " + std::to_string(e.by.t_ms) + " ms"};
  }
  const std::string_view got = split_sms(first_candidate->detail).second;
  const auto mm = std::mismatch(e.body.begin(), e.body.end(), got.begin(), got.end());
  const auto offset = static_cast<std::size_t>(mm.first - e.body.begin());
  return {{},
          false,
          "SMS body at " + std::to_string(first_candidate->t.t_ms) + " ms differs at byte offset " +
              std::to_string(offset) + ": expected " + byte_name(e.body, offset) + ", got " +
              byte_name(got, offset)};
}

Verdict evaluate(const Transcript& tr, const expect::Quiet& e) {
  for (const auto& r : tr) {
    if (r.t < e.until && is_uart_traffic(r)) {
      return {{}, false, "UART traffic at " + std::to_string(r.t.t_ms) + " ms (" + r.kind + ")"};
    }
  }
  return {{}, true, "no UART traffic before " + std::to_string(e.until.t_ms) + " ms"};
}

Verdict evaluate(const Transcript& tr, const expect::Indicator& e) {
  const auto pulses = std::count_if(tr.begin(), tr.end(), [&](const TranscriptRecord& r) {
    return r.source == Source::Controller && r.kind == "indicator_on" && r.t <= e.by;
  });
  return {{},
          pulses == e.pulses,
          std::to_string(pulses) + " indicator pulse(s) by " + std::to_string(e.by.t_ms) + " ms"};
}

}  // namespace

CheckReport check_expectations(const Transcript& transcript,
                               const std::vector<Expectation>& expectations) {
  CheckReport report;
  for (const auto& e : expectations) {
    Verdict v = std::visit([&](const auto& x) { return evaluate(transcript, x); }, e);
    v.expectation = describe(e);
    report.all_passed = report.all_passed && v.passed;
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

}  // namespace gsmids
