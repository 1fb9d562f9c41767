#ifndef KADCON_SIM_TIME_HPP
#define KADCON_SIM_TIME_HPP

#include <cstdint>

namespace kadcon {

// Simulated time in microseconds. Integer arithmetic keeps event ordering
// exact and runs bit-reproducible.
using SimTime = int64_t;

constexpr SimTime kMillisecond = 1000;
constexpr SimTime kSecond = 1000 * kMillisecond;
constexpr SimTime kMinute = 60 * kSecond;

constexpr SimTime minutes(int64_t m) { return m * kMinute; }
constexpr double to_minutes(SimTime t) { return static_cast<double>(t) / kMinute; }

}  // namespace kadcon

#endif
