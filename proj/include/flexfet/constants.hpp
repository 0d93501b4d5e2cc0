#pragma once

// CODATA 2018 exact / recommended values, SI.
namespace flexfet::phys {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double e_euler = 2.71828182845904523536;
inline constexpr double eps0 = 8.8541878128e-12;        // F/m
inline constexpr double q = 1.602176634e-19;            // C
inline constexpr double k_B = 1.380649e-23;             // J/K

/// Thermal voltage k_B T / q in volts.
constexpr double thermal_voltage(double temperature) { return k_B * temperature / q; }

} // namespace flexfet::phys
