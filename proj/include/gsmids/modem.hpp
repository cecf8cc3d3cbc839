#ifndef GSMIDS_MODEM_HPP
#define GSMIDS_MODEM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gsmids/sim_kernel.hpp"

namespace gsmids {

namespace at {

struct Ping {
  bool operator==(const Ping&) const = default;
};
struct Dial {
  std::string number;
  bool voice = false;
  bool operator==(const Dial&) const = default;
};
struct SetMessageFormat {
  int mode = 0;
  bool operator==(const SetMessageFormat&) const = default;
};
struct SendMessageStart {
  std::string number;
  bool operator==(const SendMessageStart&) const = default;
};
struct Hangup {
  bool operator==(const Hangup&) const = default;
};
struct Unknown {
  std::string raw;
  bool operator==(const Unknown&) const = default;
};

}  // namespace at

using AtCommand =
    std::variant<at::Ping, at::Dial, at::SetMessageFormat, at::SendMessageStart, at::Hangup, at::Unknown>;

/// Total: anything outside the supported subset is at::Unknown. The "AT"
/// prefix and verbs are case-insensitive. `line` excludes the terminator.
AtCommand parse_command_line(std::string_view line);

enum class CallOutcome { Answered, Unanswered, Hangup };
std::string_view to_string(CallOutcome o);

struct CallRecord {
  std::string number;
  SimTime start;
  std::optional<SimTime> end;
  std::optional<CallOutcome> outcome;
  bool answered = false;

  bool open() const { return !end.has_value(); }
  bool operator==(const CallRecord&) const = default;
};

struct SmsRecord {
  std::string number;
  std::string body;
  SimTime submitted;
  int reference = 0;
  bool operator==(const SmsRecord&) const = default;
};

enum class CallDirective { Answer, Reject, RemoteHangup };
std::string_view to_string(CallDirective d);

struct ModemConfig {
  bool echo = false;
  /// Command lines longer than this are answered with ERROR.
  std::size_t max_line_length = 556;
};

/// Observable modem state. The voice call and a pending SMS body are
/// tracked independently: a text message can be submitted while a call is up.
struct ModemState {
  struct ActiveCall {
    std::size_t record_index;
  };
  struct SmsDraft {
    std::string number;
    std::string buffer;
  };

  std::optional<ActiveCall> call;
  std::optional<SmsDraft> draft;
  bool text_mode = false;
};

struct FeedResult {
  std::string response;
  std::vector<CallRecord> new_calls;
  std::vector<CallRecord> closed_calls;
  std::vector<SmsRecord> new_sms;
};

struct ProgressResult {
  std::string unsolicited;
  std::optional<CallRecord> updated;
  std::optional<std::string> warning;
};

/// Virtual SIM800L on the receiving end of a UART.
class Modem {
 public:
  explicit Modem(ModemConfig cfg = {}) : cfg_(cfg) {}

  /// Accepts any byte sequence. Lines end at CR (a following LF is
  /// swallowed); while an SMS body is pending only 0x1A ends it.
  FeedResult feed(std::string_view bytes, SimTime now);

  /// Scenario-driven call events. Ignored with a warning when no call is up.
  ProgressResult call_progress(CallDirective directive, SimTime now);

  const ModemState& state() const { return state_; }
  bool in_call() const { return state_.call.has_value(); }
  bool awaiting_sms_body() const { return state_.draft.has_value(); }
  bool text_mode() const { return state_.text_mode; }

  const std::vector<CallRecord>& calls() const { return calls_; }
  const std::vector<SmsRecord>& sms() const { return sms_; }

 private:
  void execute(const AtCommand& cmd, SimTime now, FeedResult& out);
  void end_line(SimTime now, FeedResult& out);
  CallRecord close_call(CallOutcome outcome, SimTime now);

  ModemConfig cfg_;
  ModemState state_;
  std::string line_;
  bool line_overflow_ = false;
  bool swallow_lf_ = false;
  int next_sms_reference_ = 1;
  std::vector<CallRecord> calls_;
  std::vector<SmsRecord> sms_;
};

}  // namespace gsmids

#endif  // GSMIDS_MODEM_HPP
