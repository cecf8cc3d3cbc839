#ifndef GSMIDS_SIM_KERNEL_HPP
#define GSMIDS_SIM_KERNEL_HPP

#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gsmids {

using Millis = std::int64_t;

/// Upper bound accepted for any time or duration read from input files.
inline constexpr Millis kMaxInputMillis = 1'000'000'000'000;

/// Virtual time in whole milliseconds since the start of a run.
struct SimTime {
  Millis t_ms = 0;

  constexpr SimTime() = default;
  constexpr explicit SimTime(Millis ms) : t_ms(ms) {}

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime operator+(Millis d) const { return SimTime{t_ms + d}; }
  constexpr SimTime operator-(Millis d) const { return SimTime{t_ms - d}; }
  constexpr Millis operator-(SimTime other) const { return t_ms - other.t_ms; }
};

class SchedulingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Ordered event queue driving a single simulation. Events fire in
/// (fire_at, seq) order, seq being the insertion counter.
template <typename Payload>
class EventQueue {
 public:
  using Handle = std::uint64_t;

  struct Event {
    SimTime fire_at;
    std::uint64_t seq;
    Payload payload;
  };

  SimTime now() const { return now_; }
  bool empty() const { return queue_.empty(); }
  std::size_t pending() const { return queue_.size(); }

  std::optional<SimTime> next_fire_time() const {
    if (queue_.empty()) return std::nullopt;
    return queue_.begin()->first.first;
  }

  Handle schedule(SimTime fire_at, Payload payload) {
    if (fire_at < now_) {
      throw SchedulingError("cannot schedule at t=" + std::to_string(fire_at.t_ms) +
                            " before now=" + std::to_string(now_.t_ms));
    }
    const std::uint64_t seq = next_seq_++;
    queue_.emplace(Key{fire_at, seq}, std::move(payload));
    index_.emplace(seq, fire_at);
    return seq;
  }

  /// Returns false if the event already fired or was cancelled.
  bool cancel(Handle handle) {
    auto it = index_.find(handle);
    if (it == index_.end()) return false;
    queue_.erase(Key{it->second, handle});
    index_.erase(it);
    return true;
  }

  /// Fires every event due at or before `target`. `on_fire` sees each event
  /// with the clock set to its fire time and may schedule further events;
  /// those fire in the same call when due.
  template <typename OnFire>
  std::vector<Event> advance_to(SimTime target, OnFire&& on_fire) {
    if (target < now_) {
      throw SchedulingError("cannot advance to t=" + std::to_string(target.t_ms) +
                            " before now=" + std::to_string(now_.t_ms));
    }
    std::vector<Event> fired;
    while (!queue_.empty() && queue_.begin()->first.first <= target) {
      auto node = queue_.extract(queue_.begin());
      index_.erase(node.key().second);
      now_ = node.key().first;
      Event ev{node.key().first, node.key().second, std::move(node.mapped())};
      on_fire(static_cast<const Event&>(ev));
      fired.push_back(std::move(ev));
    }
    now_ = target;
    return fired;
  }

  std::vector<Event> advance_to(SimTime target) {
    return advance_to(target, [](const Event&) {});
  }

 private:
  using Key = std::pair<SimTime, std::uint64_t>;

  SimTime now_{};
  std::uint64_t next_seq_ = 0;
  std::map<Key, Payload> queue_;
  std::unordered_map<std::uint64_t, SimTime> index_;
};

/// 8N1 frame: start bit, 8 data bits, stop bit.
inline constexpr int kBitsPerFrame = 10;
inline constexpr std::uint32_t kDefaultBaud = 9600;

/// floor(1000 * bits_per_frame / baud), in ms.
Millis per_byte_latency_for(std::uint32_t baud);

/// One direction of a UART link. Lossless; bytes become deliverable one
/// frame time apart, and a burst queues behind whatever is still on the wire.
class SerialChannel {
 public:
  explicit SerialChannel(std::uint32_t baud = kDefaultBaud);

  std::uint32_t baud() const { return baud_; }
  Millis per_byte_latency() const { return per_byte_latency_; }

  void send(std::string_view bytes, SimTime now);
  std::string drain(SimTime now);

  bool empty() const { return in_flight_.empty(); }
  std::size_t in_flight() const { return in_flight_.size(); }
  std::optional<SimTime> next_delivery() const;
  /// Distinct deliverable_at times of bytes still in flight, ascending.
  std::vector<SimTime> delivery_times() const;

 private:
  struct InFlight {
    char byte;
    SimTime deliverable_at;
  };

  std::uint32_t baud_;
  Millis per_byte_latency_;
  SimTime wire_free_at_{};
  std::deque<InFlight> in_flight_;
};

}  // namespace gsmids

#endif  // GSMIDS_SIM_KERNEL_HPP
