#ifndef GSMIDS_HARNESS_HPP
#define GSMIDS_HARNESS_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gsmids/scenario.hpp"

namespace gsmids {

enum class Source { Controller, Modem, Sensor, Harness };
std::string_view to_string(Source s);

/// One observable action. `detail` holds raw bytes; escaping happens only
/// when the record is serialized.
///
/// Kinds by source:
///   controller: log, sample, indicator_on, indicator_off, uart_write, uart_read
///   modem:      response, unsolicited, call_start, call_end, sms
///   sensor:     stimulus
///   harness:    call_directive, warning, end
struct TranscriptRecord {
  SimTime t;
  Source source;
  std::string kind;
  std::string detail;
  bool operator==(const TranscriptRecord&) const = default;
};

using Transcript = std::vector<TranscriptRecord>;

class HorizonError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Latest event or expectation time plus 30 s.
SimTime default_horizon(const Scenario& scenario);

/// Runs one isolated simulation from t=0 through `horizon` inclusive.
/// Throws HorizonError if the horizon precedes any event or expectation.
Transcript run(const SimulationConfig& config, const Scenario& scenario, SimTime horizon);

/// JSON object with keys in the order t_ms, source, kind, detail. Bytes of
/// `detail` map one-to-one onto U+0000..U+00FF and everything outside
/// printable ASCII is \u-escaped, so the output is pure ASCII.
std::string to_json_line(const TranscriptRecord& rec);
std::string to_jsonl(const Transcript& transcript);

struct Verdict {
  std::string expectation;
  bool passed = false;
  std::string message;
};

struct CheckReport {
  std::vector<Verdict> verdicts;
  bool all_passed = true;
};

/// Evaluates each expectation against the transcript independently.
CheckReport check_expectations(const Transcript& transcript,
                               const std::vector<Expectation>& expectations);

}  // namespace gsmids

#endif  // GSMIDS_HARNESS_HPP
