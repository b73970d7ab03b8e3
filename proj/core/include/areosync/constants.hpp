#pragma once

namespace areosync::constants {

/// Mean Martian solar day in seconds. Used for reporting only; all internal
/// time is in seconds.
inline constexpr double kSecondsPerSol = 88775.244;

// "mars-example" constant set. All values overridable through config.
inline constexpr double kMuMars = 4.282837e13;    // m^3/s^2
inline constexpr double kMuPhobos = 7.161e5;      // m^3/s^2
inline constexpr double kMuDeimos = 1.041e5;      // m^3/s^2
inline constexpr double kPhobosOrbitRadius = 9234.42e3;   // m, periapsis
inline constexpr double kDeimosOrbitRadius = 23455.50e3;  // m, periapsis
inline constexpr double kMarsEquatorialRadius = 3396.2e3; // m
inline constexpr double kAreostationaryRadius = 20428.2e3;  // m

inline constexpr double kDefaultSatelliteMass = 100.0;  // kg
inline constexpr double kDefaultTauMax = 0.1;           // N, per axis

inline constexpr double sols_to_seconds(double sols) { return sols * kSecondsPerSol; }
inline constexpr double seconds_to_sols(double s) { return s / kSecondsPerSol; }

}  // namespace areosync::constants
