#include "gsmids/sensors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gsmids {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Maps an angle in degrees onto (-180, 180].
double wrap_degrees(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r <= -180.0) r += 360.0;
  if (r > 180.0) r -= 360.0;
  return r;
}

}  // namespace

void PirGeometry::validate() const {
  if (!std::isfinite(position.x) || !std::isfinite(position.y) || !std::isfinite(facing_deg) ||
      !std::isfinite(half_angle_deg) || !std::isfinite(range_m)) {
    throw std::invalid_argument("PIR geometry must be finite");
  }
  if (!(half_angle_deg > 0.0 && half_angle_deg < 180.0)) {
    throw std::invalid_argument("PIR half angle must be in (0, 180) degrees");
  }
  if (!(range_m > 0.0)) throw std::invalid_argument("PIR range must be positive");
}

bool PirGeometry::covers(Point p) const {
  const double dx = p.x - position.x;
  const double dy = p.y - position.y;
  const double dist = std::hypot(dx, dy);
  if (dist > range_m) return false;
  // Bearing is undefined at the sensor itself; treat it as seen.
  if (dist == 0.0) return true;
  const double bearing = std::atan2(dy, dx) * kRadToDeg;
  return std::abs(wrap_degrees(bearing - facing_deg)) <= half_angle_deg;
}

void PirSensor::set_intruders(SimTime at, std::vector<Point> intruders) {
  if (!track.empty() && at < track.back().since) {
    throw std::invalid_argument("intruder track must be chronological");
  }
  if (!track.empty() && track.back().since == at) {
    track.back().intruders = std::move(intruders);
    return;
  }
  track.push_back({at, std::move(intruders)});
}

PinLevel pir_read(const PirGeometry& geometry, std::span<const Point> intruders) {
  for (const Point& p : intruders) {
    if (geometry.covers(p)) return PinLevel::Low;
  }
  return PinLevel::High;
}

PinLevel pir_read(const PirSensor& sensor, SimTime now) {
  const SimTime window_start = now - sensor.hold_ms;
  for (std::size_t i = 0; i < sensor.track.size(); ++i) {
    const auto& seg = sensor.track[i];
    if (seg.since > now) break;
    // Segment i covers [since, next.since).
    if (i + 1 < sensor.track.size() && sensor.track[i + 1].since <= window_start) continue;
    if (pir_read(sensor.geometry, seg.intruders) == PinLevel::Low) return PinLevel::Low;
  }
  return PinLevel::High;
}

AdcReading sound_read(const SoundSensor& sensor, SimTime now) {
  if (sensor.stimulus) {
    const auto& s = *sensor.stimulus;
    if (s.start <= now && now < s.start + s.duration_ms) {
      // Anything past full scale clamps anyway; cap before adding.
      const std::int64_t amplitude = std::min<std::int64_t>(s.amplitude_counts, AdcReading::kMax + 1);
      return AdcReading{sensor.baseline.counts() + amplitude};
    }
  }
  return sensor.baseline;
}

PinLevel door_read(const MagneticSwitch& sw) {
  const bool circuit_closed = sw.door == DoorState::Closed && sw.wiring_intact;
  return circuit_closed ? PinLevel::Low : PinLevel::High;
}

SensorInputs SensorWorld::sample(SimTime now) const {
  return {sound_read(sound, now), pir_read(pir, now), door_read(door)};
}

}  // namespace gsmids
