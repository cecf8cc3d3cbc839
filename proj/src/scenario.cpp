#include "gsmids/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "text_util.hpp"

namespace gsmids {

ParseError::ParseError(int line, std::string token, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message +
                         (token.empty() ? std::string() : " (at '" + token + "')")),
      line_(line),
      token_(std::move(token)) {}

std::vector<Token> tokenize_line(std::string_view line, int line_no) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i >= line.size() || line[i] == '#') break;

    if (line[i] != '"') {
      const std::size_t start = i;
      while (i < line.size() && !is_space(line[i]) && line[i] != '#') ++i;
      tokens.push_back({std::string(line.substr(start, i - start)), false});
      continue;
    }

    std::string text;
    ++i;
    bool closed = false;
    while (i < line.size()) {
      const char c = line[i++];
      if (c == '"') {
        closed = true;
        break;
      }
      if (c != '\\') {
        text.push_back(c);
        continue;
      }
      if (i >= line.size()) throw ParseError(line_no, "\\", "dangling escape");
      const char e = line[i++];
      switch (e) {
        case 'n': text.push_back('\n'); break;
        case 'r': text.push_back('\r'); break;
        case 't': text.push_back('\t'); break;
        case '\\': text.push_back('\\'); break;
        case '"': text.push_back('"'); break;
        case 'x': {
          if (i + 2 > line.size()) throw ParseError(line_no, "\\x", "truncated \\x escape");
          unsigned value = 0;
          const char* first = line.data() + i;
          const auto [ptr, ec] = std::from_chars(first, first + 2, value, 16);
          if (ec != std::errc{} || ptr != first + 2) {
            throw ParseError(line_no, std::string("\\x") + std::string(line.substr(i, 2)),
                             "bad \\x escape");
          }
          text.push_back(static_cast<char>(value));
          i += 2;
          break;
        }
        default:
          throw ParseError(line_no, std::string("\\") + e, "unknown escape");
      }
    }
    if (!closed) throw ParseError(line_no, "\"", "unterminated quoted string");
    if (i < line.size() && !is_space(line[i]) && line[i] != '#') {
      throw ParseError(line_no, std::string(1, line[i]), "unexpected text after quoted string");
    }
    tokens.push_back({std::move(text), true});
  }
  return tokens;
}

namespace {

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, int line_no) : tokens_(std::move(tokens)), line_(line_no) {}

  bool done() const { return pos_ >= tokens_.size(); }

  const Token& next(const char* what) {
    if (done()) throw ParseError(line_, "", std::string("expected ") + what);
    return tokens_[pos_++];
  }

  std::string word(const char* what) {
    const Token& t = next(what);
    if (t.quoted) throw ParseError(line_, t.text, std::string("expected ") + what);
    return t.text;
  }

  void keyword(std::string_view kw) {
    const Token& t = next(std::string(kw).c_str());
    if (t.quoted || t.text != kw) {
      throw ParseError(line_, t.text, "expected '" + std::string(kw) + "'");
    }
  }

  Millis time(const char* what) {
    const std::string t = word(what);
    const auto v = detail::parse_int(t);
    if (!v || *v < 0) throw ParseError(line_, t, std::string("invalid ") + what);
    if (*v > kMaxInputMillis) throw ParseError(line_, t, std::string(what) + " out of range");
    return *v;
  }

  std::int64_t non_negative(const char* what) { return time(what); }

  double real(const char* what) {
    const std::string t = word(what);
    const auto v = detail::parse_double(t);
    if (!v || !std::isfinite(*v)) throw ParseError(line_, t, std::string("invalid ") + what);
    return *v;
  }

  void finish() {
    if (!done()) throw ParseError(line_, tokens_[pos_].text, "unexpected trailing token");
  }

  [[noreturn]] void fail(const std::string& token, const std::string& msg) const {
    throw ParseError(line_, token, msg);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
};

StimulusKind parse_stimulus(LineParser& p) {
  const std::string kind = p.word("stimulus kind");
  if (kind == "door") {
    const std::string s = p.word("open|close");
    if (s == "open") return stimulus::Door{DoorState::Open};
    if (s == "close") return stimulus::Door{DoorState::Closed};
    p.fail(s, "expected open|close");
  }
  if (kind == "intruder") {
    const std::string s = p.word("set|clear");
    if (s == "clear") return stimulus::IntruderClear{};
    if (s == "set") {
      const double x = p.real("x coordinate");
      const double y = p.real("y coordinate");
      return stimulus::IntruderSet{{x, y}};
    }
    p.fail(s, "expected set|clear");
  }
  if (kind == "sound") {
    const auto amplitude = p.non_negative("sound amplitude");
    const Millis duration = p.time("sound duration");
    return stimulus::Sound{amplitude, duration};
  }
  if (kind == "call") {
    const std::string s = p.word("answer|reject|remote_hangup");
    if (s == "answer") return stimulus::Call{CallDirective::Answer};
    if (s == "reject") return stimulus::Call{CallDirective::Reject};
    if (s == "remote_hangup") return stimulus::Call{CallDirective::RemoteHangup};
    p.fail(s, "expected answer|reject|remote_hangup");
  }
  p.fail(kind, "unknown stimulus kind");
}

Expectation parse_expectation(LineParser& p) {
  const std::string kind = p.word("expectation kind");
  if (kind == "call") {
    std::string number = p.word("number");
    p.keyword("by");
    return expect::Call{std::move(number), SimTime{p.time("deadline")}};
  }
  if (kind == "sms") {
    std::string number = p.word("number");
    const Token& body = p.next("quoted body");
    if (!body.quoted) p.fail(body.text, "SMS body must be quoted");
    std::string text = body.text;
    p.keyword("by");
    return expect::Sms{std::move(number), std::move(text), SimTime{p.time("deadline")}};
  }
  if (kind == "quiet") {
    p.keyword("until");
    return expect::Quiet{SimTime{p.time("deadline")}};
  }
  if (kind == "indicator") {
    const auto pulses = p.non_negative("pulse count");
    p.keyword("by");
    return expect::Indicator{static_cast<int>(pulses), SimTime{p.time("deadline")}};
  }
  p.fail(kind, "unknown expectation kind");
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario sc;
  int line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    auto tokens = tokenize_line(line, line_no);
    if (tokens.empty()) continue;
    LineParser p(std::move(tokens), line_no);
    const std::string head = p.word("keyword");
    if (head == "at") {
      const SimTime at{p.time("event time")};
      StimulusKind kind = parse_stimulus(p);
      p.finish();
      sc.events.push_back({at, std::move(kind)});
    } else if (head == "expect") {
      Expectation e = parse_expectation(p);
      p.finish();
      sc.expectations.push_back(std::move(e));
    } else {
      p.fail(head, "unknown keyword");
    }
  }
  std::stable_sort(sc.events.begin(), sc.events.end(),
                   [](const ScenarioEvent& a, const ScenarioEvent& b) { return a.at < b.at; });
  return sc;
}

std::string describe(const StimulusKind& kind) {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, stimulus::Door>) {
          return k.state == DoorState::Open ? "door open" : "door close";
        } else if constexpr (std::is_same_v<T, stimulus::IntruderSet>) {
          return "intruder set " + detail::format_double(k.position.x) + " " +
                 detail::format_double(k.position.y);
        } else if constexpr (std::is_same_v<T, stimulus::IntruderClear>) {
          return "intruder clear";
        } else if constexpr (std::is_same_v<T, stimulus::Sound>) {
          return "sound " + std::to_string(k.amplitude_counts) + " " + std::to_string(k.duration_ms);
        } else {
          return "call " + std::string(to_string(k.directive));
        }
      },
      kind);
}

std::string describe(const Expectation& e) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, expect::Call>) {
          return "expect call " + x.number + " by " + std::to_string(x.by.t_ms);
        } else if constexpr (std::is_same_v<T, expect::Sms>) {
          return "expect sms " + x.number + " \"" + detail::escape_bytes(x.body) + "\" by " +
                 std::to_string(x.by.t_ms);
        } else if constexpr (std::is_same_v<T, expect::Quiet>) {
          return "expect quiet until " + std::to_string(x.until.t_ms);
        } else {
          return "expect indicator " + std::to_string(x.pulses) + " by " + std::to_string(x.by.t_ms);
        }
      },
      e);
}

SimTime deadline(const Expectation& e) {
  return std::visit(
      [](const auto& x) -> SimTime {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, expect::Quiet>) {
          return x.until;
        } else {
          return x.by;
        }
      },
      e);
}

SensorWorld apply_stimulus(SensorWorld world, const ScenarioEvent& ev) {
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, stimulus::Door>) {
          world.door.door = k.state;
        } else if constexpr (std::is_same_v<T, stimulus::IntruderSet>) {
          world.pir.set_intruders(ev.at, {k.position});
        } else if constexpr (std::is_same_v<T, stimulus::IntruderClear>) {
          world.pir.set_intruders(ev.at, {});
        } else if constexpr (std::is_same_v<T, stimulus::Sound>) {
          world.sound.stimulus = SoundBurst{k.amplitude_counts, ev.at, k.duration_ms};
        } else {
          throw std::invalid_argument("'" + describe(ev.kind) + "' is not a sensor stimulus");
        }
      },
      ev.kind);
  return world;
}

}  // namespace gsmids
