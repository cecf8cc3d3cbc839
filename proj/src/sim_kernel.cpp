#include "gsmids/sim_kernel.hpp"

#include <algorithm>

namespace gsmids {

Millis per_byte_latency_for(std::uint32_t baud) {
  if (baud == 0) throw std::invalid_argument("baud must be positive");
  return static_cast<Millis>(1000 * kBitsPerFrame / baud);
}

SerialChannel::SerialChannel(std::uint32_t baud)
    : baud_(baud), per_byte_latency_(per_byte_latency_for(baud)) {}

void SerialChannel::send(std::string_view bytes, SimTime now) {
  if (bytes.empty()) return;
  SimTime cursor = std::max(now, wire_free_at_);
  for (char b : bytes) {
    cursor = cursor + per_byte_latency_;
    in_flight_.push_back({b, cursor});
  }
  wire_free_at_ = cursor;
}

std::string SerialChannel::drain(SimTime now) {
  std::string out;
  while (!in_flight_.empty() && in_flight_.front().deliverable_at <= now) {
    out.push_back(in_flight_.front().byte);
    in_flight_.pop_front();
  }
  return out;
}

std::optional<SimTime> SerialChannel::next_delivery() const {
  if (in_flight_.empty()) return std::nullopt;
  return in_flight_.front().deliverable_at;
}

std::vector<SimTime> SerialChannel::delivery_times() const {
  std::vector<SimTime> times;
  for (const auto& f : in_flight_) {
    if (times.empty() || times.back() != f.deliverable_at) times.push_back(f.deliverable_at);
  }
  return times;
}

}  // namespace gsmids
