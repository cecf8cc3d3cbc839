#ifndef GSMIDS_SENSORS_HPP
#define GSMIDS_SENSORS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gsmids/sim_kernel.hpp"

namespace gsmids {

enum class PinLevel : std::uint8_t { Low = 0, High = 1 };

constexpr int to_int(PinLevel p) { return static_cast<int>(p); }

/// 10-bit ADC sample. Construction clamps into [0, kMax].
class AdcReading {
 public:
  static constexpr int kMax = 1023;

  constexpr AdcReading() = default;
  constexpr explicit AdcReading(std::int64_t counts)
      : counts_(static_cast<int>(counts < 0 ? 0 : (counts > kMax ? kMax : counts))) {}

  constexpr int counts() const { return counts_; }
  constexpr auto operator<=>(const AdcReading&) const = default;

 private:
  int counts_ = 0;
};

/// Planar position in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

/// Detection sector of a PIR module. Bearings are degrees counter-clockwise
/// from +x.
struct PirGeometry {
  Point position{};
  double facing_deg = 0.0;
  double half_angle_deg = 45.0;
  double range_m = 6.1;

  /// Throws std::invalid_argument on non-finite values, half angle outside
  /// (0, 180) or non-positive range.
  void validate() const;
  bool covers(Point p) const;
};

/// A set of intruder positions holding from `since` until the next entry.
struct IntruderSegment {
  SimTime since;
  std::vector<Point> intruders;
};

struct PirSensor {
  PirGeometry geometry{};
  Millis hold_ms = 2000;
  std::vector<IntruderSegment> track;

  /// Appends a new segment; `at` must not precede the last segment.
  void set_intruders(SimTime at, std::vector<Point> intruders);
};

/// Instantaneous: asserted (Low) iff any intruder lies in the sector.
PinLevel pir_read(const PirGeometry& geometry, std::span<const Point> intruders);

/// Active-low with hold: Low iff an intruder was inside the sector at some
/// instant of [now - hold_ms, now].
PinLevel pir_read(const PirSensor& sensor, SimTime now);

struct SoundBurst {
  std::int64_t amplitude_counts = 0;
  SimTime start{};
  Millis duration_ms = 0;
};

struct SoundSensor {
  AdcReading baseline{};
  std::optional<SoundBurst> stimulus;
};

/// clamp(baseline + amplitude) inside [start, start + duration), baseline otherwise.
AdcReading sound_read(const SoundSensor& sensor, SimTime now);

enum class DoorState { Closed, Open };

/// Reed contact on a pull-up input. A cut wire reads like an open door.
struct MagneticSwitch {
  DoorState door = DoorState::Closed;
  bool wiring_intact = true;
};

PinLevel door_read(const MagneticSwitch& sw);

struct SensorInputs {
  AdcReading sound{};
  PinLevel pir = PinLevel::High;
  PinLevel magnetic = PinLevel::Low;
  bool operator==(const SensorInputs&) const = default;
};

struct SensorWorld {
  PirSensor pir{};
  SoundSensor sound{};
  MagneticSwitch door{};

  SensorInputs sample(SimTime now) const;
};

}  // namespace gsmids

#endif  // GSMIDS_SENSORS_HPP
