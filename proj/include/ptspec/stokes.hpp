#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "ptspec/common.hpp"
#include "ptspec/potential.hpp"

namespace ptspec::stokes {

// Convention: an anti-Stokes direction is one along which the WKB action
// S = int sqrt(V - E) dx is asymptotically real (pure exponential growth or
// decay, the centre of a Stokes wedge). A Stokes direction has S purely
// imaginary (oscillatory, a wedge boundary).
enum class Kind { stokes, antistokes };

inline std::string_view to_string(Kind k) { return k == Kind::stokes ? "stokes" : "antistokes"; }

/// An angle stored exactly as (numerator / denominator) * pi, in [0, 2pi).
struct Line {
  int numerator = 0;
  int denominator = 1;
  Kind kind = Kind::antistokes;

  double angle() const { return pi * double(numerator) / double(denominator); }

  /// Reduced (p, q) with angle = p*pi/q.
  std::pair<int, int> reduced() const {
    const int g = std::gcd(numerator, denominator);
    return {numerator / g, denominator / g};
  }
};

struct StokesDiagram {
  int K = 0;
  std::vector<Line> lines;  // sorted by angle

  std::vector<double> angles(Kind kind) const {
    std::vector<double> out;
    for (const Line& l : lines)
      if (l.kind == kind) out.push_back(l.angle());
    return out;
  }

  /// Line matching `theta` to within `tol`, if any.
  std::optional<Line> find(double theta, double tol = 1e-12) const {
    for (const Line& l : lines)
      if (angle_distance(l.angle(), theta) < tol) return l;
    return std::nullopt;
  }
};

/// Directions at infinity for the leading monomial s*i^eps*x^K. With
/// phi0 = eps*pi/4 + (1-s)*pi/4 the anti-Stokes angles solve
/// (K+2)theta/2 + phi0 = 0 (mod pi) and the Stokes angles
/// (K+2)theta/2 + phi0 = pi/2 (mod pi). In units of pi/(2(K+2)) these are
/// the integers 4k - eps - 1 + s and 4k + 2 - eps - 1 + s.
inline StokesDiagram asymptotic_lines(const PotentialSpec& spec) {
  spec.validate();
  const int K = spec.degree();
  const int den = 2 * (K + 2);
  const int period = 2 * den;
  const int offset = -spec.epsilon - 1 + spec.sign;
  StokesDiagram d;
  d.K = K;
  for (int k = 0; k < K + 2; ++k) {
    const int anti = (((4 * k + offset) % period) + period) % period;
    const int st = (((4 * k + 2 + offset) % period) + period) % period;
    d.lines.push_back({anti, den, Kind::antistokes});
    d.lines.push_back({st, den, Kind::stokes});
  }
  std::sort(d.lines.begin(), d.lines.end(), [](const Line& a, const Line& b) { return a.numerator < b.numerator; });
  return d;
}

/// A PT-mirrored pair of integration rays, theta_left = pi - theta_right.
struct RayPair {
  double theta_right = 0.0;
  double theta_left = pi;
};

/// Rays arg z = -pi/2 +- 2pi/(m+2) on which the eigenfunctions of -(iz)^m
/// are required to vanish.
inline RayPair bb_rays(int m) {
  if (m < 2) throw Error("bb_rays: m must be >= 2");
  const double d = 2.0 * pi / (m + 2);
  return {wrap_angle(-0.5 * pi + d), wrap_angle(-0.5 * pi - d)};
}

enum class WedgeMode { contains_real_axis, off_axis };

/// Selects a PT-mirrored anti-Stokes pair. `contains_real_axis` takes the
/// pair closest to the real axis; `off_axis` the closest pair lying in the
/// opposite half plane. theta_right is the member with cos(theta) > 0.
inline RayPair wedge_rays(const PotentialSpec& spec, WedgeMode mode) {
  const StokesDiagram d = asymptotic_lines(spec);
  const std::vector<double> anti = d.angles(Kind::antistokes);

  std::vector<RayPair> pairs;
  for (double th : anti) {
    if (std::cos(th) <= 1e-12) continue;
    const double mirror = wrap_angle(pi - th);
    if (d.find(mirror) && d.find(mirror)->kind == Kind::antistokes) pairs.push_back({th, mirror});
  }
  if (pairs.empty()) throw Error("wedge_rays: no PT-mirrored anti-Stokes pair");

  auto closeness = [](const RayPair& p) { return std::abs(std::sin(p.theta_right)); };
  std::sort(pairs.begin(), pairs.end(), [&](const RayPair& a, const RayPair& b) { return closeness(a) < closeness(b); });
  if (mode == WedgeMode::contains_real_axis) return pairs.front();

  const bool first_upper = std::sin(pairs.front().theta_right) > 0.0;
  for (const RayPair& p : pairs)
    if ((std::sin(p.theta_right) > 0.0) != first_upper) return p;
  throw Error("wedge_rays: no off-axis anti-Stokes pair on the opposite side of the real axis");
}

struct Trace {
  std::vector<cplx> points;
  std::vector<cplx> action;  // S = int_{turning point}^{x} sqrt(V - E) dx at each point
};

/// Traces the Stokes or anti-Stokes line leaving the turning point `start`
/// along its `branch`-th local direction (0, 1 or 2, counter-clockwise).
/// Flow: dx/ds = u * conj(w)/|w|, w = sqrt(V - E) continued along the path,
/// u = 1 (anti-Stokes, S real) or i (Stokes, S imaginary). The sign is fixed
/// so that the trace moves away from `start`.
inline Trace trace_line(const PotentialSpec& spec, double E, cplx start, Kind kind, int branch, double arc_length) {
  spec.validate();
  if (spec.b != 0.0) throw Error("trace_line: requires b = 0");
  if (!(arc_length > 0.0)) throw Error("trace_line: arc_length must be positive");
  if (branch < 0 || branch > 2) throw Error("trace_line: branch must be 0, 1 or 2");
  const int K = spec.degree();
  const double scale = std::pow(E, 1.0 / K);
  if (std::abs(E - evaluate(spec, start)) > 1e-9 * E) throw Error("trace_line: start is not a turning point");

  const std::vector<cplx> turning = monomial_roots(spec, E);
  const cplx c = spec.leading_coefficient();
  const cplx slope = c * double(K) * ipow(start, K - 1);
  const double phase = kind == Kind::antistokes ? 0.0 : pi;
  const double dir_angle = (phase + 2.0 * pi * branch - std::arg(slope)) / 3.0;
  const cplx dir = std::polar(1.0, dir_angle);
  const cplx u = kind == Kind::antistokes ? cplx{1.0, 0.0} : I;

  auto w_near = [&](cplx x, cplx ref) {
    cplx w = std::sqrt(evaluate(spec, x) - E);
    if (std::abs(w - ref) > std::abs(w + ref)) w = -w;
    return w;
  };

  cplx x = start + 1e-4 * scale * dir;
  cplx w = std::sqrt(evaluate(spec, x) - E);
  double sgn = std::real(std::conj(dir) * u * std::conj(w)) >= 0.0 ? 1.0 : -1.0;
  auto velocity = [&](cplx at, cplx wref, cplx& w_out) {
    w_out = w_near(at, wref);
    return sgn * u * std::conj(w_out) / std::abs(w_out);
  };

  Trace out;
  out.points.push_back(x);
  cplx S = (2.0 / 3.0) * w * (x - start);
  out.action.push_back(S);

  bool left_start_disc = false;
  const double h_max = 2e-3 * scale;
  double travelled = 0.0;
  while (travelled < arc_length) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const cplx& t : turning) nearest = std::min(nearest, std::abs(x - t));
    const double h = std::min({h_max, 0.1 * nearest, arc_length - travelled});

    cplx w1, w2, w3, w4;
    const cplx k1 = velocity(x, w, w1);
    const cplx k2 = velocity(x + 0.5 * h * k1, w1, w2);
    const cplx k3 = velocity(x + 0.5 * h * k2, w2, w3);
    const cplx k4 = velocity(x + h * k3, w3, w4);
    const cplx x_new = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const cplx w_mid = w_near(0.5 * (x + x_new), w);
    const cplx w_new = w_near(x_new, w_mid);
    S += (x_new - x) / 6.0 * (w + 4.0 * w_mid + w_new);

    x = x_new;
    w = w_new;
    travelled += h;
    out.points.push_back(x);
    out.action.push_back(S);

    for (const cplx& t : turning) {
      const double dist = std::abs(x - t);
      const bool is_start = std::abs(t - start) < 1e-9 * scale;
      if (is_start) {
        if (dist > 2e-3) left_start_disc = true;
        else if (left_start_disc) throw Error("trace_line: line returned to its starting turning point");
      } else if (dist < 1e-3) {
        throw Error("trace_line: line ran into another turning point");
      }
    }
  }
  return out;
}

}  // namespace ptspec::stokes
