#include "gsmids/modem.hpp"

#include <algorithm>

namespace gsmids {

namespace {

constexpr char kCtrlZ = 0x1A;
constexpr std::string_view kOk = "OK\r\n";
constexpr std::string_view kError = "ERROR\r\n";
constexpr std::string_view kPrompt = "> ";
constexpr std::string_view kNoCarrier = "NO CARRIER\r\n";

char ascii_upper(char c) { return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c; }

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) { return ascii_upper(x) == ascii_upper(y); });
}

bool istarts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

bool is_dial_number(std::string_view n) {
  return !n.empty() && std::all_of(n.begin(), n.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == '+' || c == '*' || c == '#';
  });
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

AtCommand parse_command_line(std::string_view line) {
  const at::Unknown unknown{std::string(line)};
  if (!istarts_with(line, "AT")) return unknown;
  const std::string_view rest = line.substr(2);

  if (rest.empty()) return at::Ping{};

  if (ascii_upper(rest[0]) == 'D') {
    std::string_view number = rest.substr(1);
    const bool voice = !number.empty() && number.back() == ';';
    if (voice) number.remove_suffix(1);
    if (!is_dial_number(number)) return unknown;
    return at::Dial{std::string(number), voice};
  }
  if (iequals(rest, "+CMGF=0")) return at::SetMessageFormat{0};
  if (iequals(rest, "+CMGF=1")) return at::SetMessageFormat{1};
  if (istarts_with(rest, "+CMGS=")) {
    std::string_view arg = rest.substr(6);
    if (arg.size() < 2 || arg.front() != '"' || arg.back() != '"') return unknown;
    arg = arg.substr(1, arg.size() - 2);
    if (!is_dial_number(arg)) return unknown;
    return at::SendMessageStart{std::string(arg)};
  }
  if (iequals(rest, "H") || iequals(rest, "H0")) return at::Hangup{};
  return unknown;
}

std::string_view to_string(CallOutcome o) {
  switch (o) {
    case CallOutcome::Answered: return "answered";
    case CallOutcome::Unanswered: return "unanswered";
    case CallOutcome::Hangup: return "hangup";
  }
  return "?";
}

std::string_view to_string(CallDirective d) {
  switch (d) {
    case CallDirective::Answer: return "answer";
    case CallDirective::Reject: return "reject";
    case CallDirective::RemoteHangup: return "remote_hangup";
  }
  return "?";
}

FeedResult Modem::feed(std::string_view bytes, SimTime now) {
  FeedResult out;
  for (char b : bytes) {
    if (state_.draft) {
      if (b != kCtrlZ) {
        state_.draft->buffer.push_back(b);
        continue;
      }
      SmsRecord rec{std::move(state_.draft->number), std::move(state_.draft->buffer), now,
                    next_sms_reference_++};
      state_.draft.reset();
      out.response += "+CMGS: " + std::to_string(rec.reference) + "\r\n";
      out.response += kOk;
      sms_.push_back(rec);
      out.new_sms.push_back(std::move(rec));
      continue;
    }

    if (b == '\n' && swallow_lf_) {
      swallow_lf_ = false;
      continue;
    }
    if (cfg_.echo) out.response.push_back(b);
    if (b == '\r') {
      end_line(now, out);
      swallow_lf_ = true;
      continue;
    }
    swallow_lf_ = false;
    if (line_.size() < cfg_.max_line_length) {
      line_.push_back(b);
    } else {
      line_overflow_ = true;
    }
  }
  return out;
}

void Modem::end_line(SimTime now, FeedResult& out) {
  const bool overflow = line_overflow_;
  const std::string line = std::move(line_);
  line_.clear();
  line_overflow_ = false;

  if (overflow) {
    out.response += kError;
    return;
  }
  const std::string_view cmd = trim(line);
  if (cmd.empty()) return;
  execute(parse_command_line(cmd), now, out);
}

void Modem::execute(const AtCommand& cmd, SimTime now, FeedResult& out) {
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, at::Ping>) {
          out.response += kOk;
        } else if constexpr (std::is_same_v<T, at::Dial>) {
          if (!c.voice || state_.call) {
            out.response += kError;
            return;
          }
          calls_.push_back({c.number, now, std::nullopt, std::nullopt, false});
          state_.call = ModemState::ActiveCall{calls_.size() - 1};
          out.new_calls.push_back(calls_.back());
          out.response += kOk;
        } else if constexpr (std::is_same_v<T, at::SetMessageFormat>) {
          state_.text_mode = c.mode == 1;
          out.response += kOk;
        } else if constexpr (std::is_same_v<T, at::SendMessageStart>) {
          if (!state_.text_mode) {
            out.response += kError;
            return;
          }
          state_.draft = ModemState::SmsDraft{c.number, {}};
          swallow_lf_ = false;
          out.response += kPrompt;
        } else if constexpr (std::is_same_v<T, at::Hangup>) {
          if (state_.call) out.closed_calls.push_back(close_call(CallOutcome::Hangup, now));
          out.response += kOk;
        } else {
          out.response += kError;
        }
      },
      cmd);
}

CallRecord Modem::close_call(CallOutcome outcome, SimTime now) {
  CallRecord& rec = calls_[state_.call->record_index];
  rec.end = now;
  rec.outcome = outcome;
  state_.call.reset();
  return rec;
}

ProgressResult Modem::call_progress(CallDirective directive, SimTime now) {
  ProgressResult out;
  if (!state_.call) {
    out.warning = std::string("call ") + std::string(to_string(directive)) + " ignored: no active call";
    return out;
  }
  CallRecord& rec = calls_[state_.call->record_index];
  switch (directive) {
    case CallDirective::Answer:
      rec.answered = true;
      out.updated = rec;
      break;
    case CallDirective::Reject:
    case CallDirective::RemoteHangup:
      out.updated = close_call(rec.answered ? CallOutcome::Answered : CallOutcome::Unanswered, now);
      out.unsolicited = kNoCarrier;
      break;
  }
  return out;
}

}  // namespace gsmids
