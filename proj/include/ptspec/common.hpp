#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ptspec {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Method { wkb_bb, wkb_nm, wkb_general, shooting, diagonalization };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::wkb_bb: return "wkb-bb";
    case Method::wkb_nm: return "wkb-nm";
    case Method::wkb_general: return "wkb-general";
    case Method::shooting: return "shooting";
    case Method::diagonalization: return "diagonalization";
  }
  return "unknown";
}

/// One computed level. `n < 0` marks a level that could not be labeled.
struct EnergyLevel {
  int n = -1;
  double value = 0.0;
  Method method = Method::wkb_general;
  double err_estimate = 0.0;
};

/// Reduce an angle into [0, 2pi).
inline double wrap_angle(double theta) {
  double r = std::fmod(theta, 2.0 * pi);
  if (r < 0.0) r += 2.0 * pi;
  if (r >= 2.0 * pi) r -= 2.0 * pi;
  return r;
}

/// Smallest absolute separation of two angles on the circle.
inline double angle_distance(double a, double b) {
  double d = wrap_angle(a - b);
  return std::min(d, 2.0 * pi - d);
}

/// z^k for integer k >= 0 by repeated squaring.
inline cplx ipow(cplx z, int k) {
  cplx result{1.0, 0.0};
  while (k > 0) {
    if (k & 1) result *= z;
    z *= z;
    k >>= 1;
  }
  return result;
}

/// i^k exactly, for integer k (any sign).
inline cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace ptspec
