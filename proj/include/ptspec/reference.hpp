#pragma once

#include <array>

#include "ptspec/potential.hpp"

// Published reference values for the quintic oscillator V = (ix)^5 and the
// asymptotic line lists used to check the Stokes geometry.
namespace ptspec::reference {

/// Off-axis wedges of (ix)^5 (equivalently -(ix)^5 with its lower-half
/// wedges), high-precision Riccati-Pade values, n = 0..3.
inline constexpr std::array<double, 4> ix5_off_axis = {
    1.9082645781707777079714407742647568531562,
    8.58722083620722180027956616257834275867345,
    17.710809011731145002460444521074221024,
    28.595103311735974787298524540082589714,
};

/// Leading WKB energies with lower-half turning points, N = 2, n = 0..3.
inline constexpr std::array<double, 4> bb_n2 = {1.771244715, 8.509035978, 17.65253759, 28.54706617};

/// Real-axis wedges of (ix)^5: oscillator-basis diagonalization, n = 0..10.
inline constexpr std::array<double, 11> ix5_diagonalization = {
    1.16477040794341, 4.36378436771211, 8.95516699824067, 14.4177548302741,
    20.6101375100489, 27.4284077210062, 34.8037156407346, 42.6845638108818,
    51.030837828189,  59.81014759020,   68.9956534721,
};

/// Real-axis wedges of (ix)^5: numerical integration along the rays, n = 0..10.
inline constexpr std::array<double, 11> ix5_integration = {
    1.164771, 4.363785, 8.955167, 14.417755, 20.610138, 27.428408,
    34.803715, 42.684564, 51.030837, 59.810150, 68.995644,
};

/// Leading term of the asymptotic energy expansion, N = 2, n = 0..10.
inline constexpr std::array<double, 11> nm_n2 = {
    0.8906863480, 4.278845331, 8.876737420, 14.35514917, 20.55551587, 27.37969662,
    34.75941365,  42.64372812, 50.99281286, 59.77445901, 68.96194510,
};

/// E_bb / E_nm for N = 1, 2, 3.
inline constexpr std::array<double, 3> bb_over_nm = {1.0, 1.988629015, 3.523156867};

/// Six directions drawn for one potential, as numerators of pi/14.
struct LineList {
  const char* label;
  PotentialSpec spec;
  std::array<int, 6> numerators;
};

inline constexpr int line_list_denominator = 14;

inline const std::array<LineList, 4> quintic_line_lists = {{
    {"(ix)^5 A", ix_power(5), {1, 13, 15, 17, 25, 27}},
    {"(ix)^5 B", ix_power(5), {1, 3, 5, 9, 11, 13}},
    {"-(ix)^5 A", neg_ix_power(5), {15, 17, 19, 23, 25, 27}},
    {"-(ix)^5 B", neg_ix_power(5), {1, 3, 11, 13, 15, 27}},
}};

}  // namespace ptspec::reference
