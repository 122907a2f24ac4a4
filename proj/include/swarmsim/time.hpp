#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>

namespace swarmsim {

// Simulated time stored as fixed-point milliseconds. Integer storage keeps
// the event queue ordering exact; configs and reports speak in minutes.
class SimTime {
 public:
  constexpr SimTime() = default;

  static SimTime from_ms(std::int64_t ms) {
    if (ms < 0) throw std::logic_error("SimTime: negative time");
    return SimTime(ms);
  }

  static SimTime from_minutes(double m) {
    return from_ms(static_cast<std::int64_t>(std::llround(m * 60000.0)));
  }

  constexpr std::int64_t ms() const { return ms_; }
  double minutes() const { return static_cast<double>(ms_) / 60000.0; }

  friend constexpr auto operator<=>(SimTime a, SimTime b) = default;

  SimTime operator+(SimTime o) const { return from_ms(ms_ + o.ms_); }
  SimTime operator-(SimTime o) const { return from_ms(ms_ - o.ms_); }

 private:
  constexpr explicit SimTime(std::int64_t ms) : ms_(ms) {}
  std::int64_t ms_ = 0;
};

inline SimTime minutes(double m) { return SimTime::from_minutes(m); }

}  // namespace swarmsim
