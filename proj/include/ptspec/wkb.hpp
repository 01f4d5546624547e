#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "ptspec/common.hpp"
#include "ptspec/potential.hpp"

namespace ptspec::wkb {

// Leading-order semiclassical energies. All three have the form
// C * (n + 1/2)^p, with p = (4M + 2 eps) / (2M + eps + 2).

/// Leading term of the asymptotic energy expansion for (ix)^{2N+1}.
inline double energy_nm(int n, int N) {
  if (n < 0 || N < 1) throw Error("energy_nm: requires n >= 0 and N >= 1");
  const double K = 2.0 * N + 1.0;
  const double c = std::sqrt(pi) * (2.0 * N + 3.0) * std::tgamma(0.5 + 1.0 / K) /
                   (2.0 * std::cos(pi / (4.0 * N + 2.0)) * std::tgamma(1.0 / K));
  return std::pow(c * (n + 0.5), (4.0 * N + 2.0) / (2.0 * N + 3.0));
}

/// WKB energy for -(ix)^{2N+1} with turning points in the lower half plane.
inline double energy_bb(int n, int N) {
  if (n < 0 || N < 1) throw Error("energy_bb: requires n >= 0 and N >= 1");
  const double K = 2.0 * N + 1.0;
  const double c = std::sqrt(pi) * std::tgamma(1.5 + 1.0 / K) /
                   (std::sin(pi / K) * std::tgamma(1.0 + 1.0 / K));
  return std::pow(c * (n + 0.5), (4.0 * N + 2.0) / (2.0 * N + 3.0));
}

/// General formula for x^{2M} (ix)^eps; reduces to energy_bb at (1, 2N-1)
/// and to energy_nm at (N, 1).
inline double energy_general(int n, int M, int epsilon) {
  if (n < 0 || M < 1 || epsilon < 0) throw Error("energy_general: requires n >= 0, M >= 1, epsilon >= 0");
  const double K = 2.0 * M + epsilon;
  const double c = std::sqrt(pi) * std::tgamma(1.5 + 1.0 / K) /
                   (std::sin(pi * M / K) * std::tgamma(1.0 + 1.0 / K));
  return std::pow(c * (n + 0.5), (4.0 * M + 2.0 * epsilon) / (K + 2.0));
}

/// Exponent p of E ~ (n + 1/2)^p for a degree-K monomial.
inline double level_exponent(int K) { return 2.0 * K / (K + 2.0); }

namespace detail {

// Gauss-Chebyshev (second kind) estimate of
//   int_{x_-}^{x_+} sqrt(E - V(x)) dx
// on the straight chord. With x = mid + half*t the integrand factors as
// sqrt(1 - t^2) * sqrt(g(t)), g analytic and zero-free on [-1, 1] when both
// endpoints are simple roots. The branch of sqrt(g) is tracked outward from
// t = 0, where Re sqrt > 0.
inline cplx chord_action(const PotentialSpec& spec, double E, cplx x_minus, cplx x_plus, int nodes) {
  const cplx mid = 0.5 * (x_plus + x_minus);
  const cplx half = 0.5 * (x_plus - x_minus);
  auto g = [&](double t) { return (E - evaluate(spec, mid + half * t)) / (1.0 - t * t); };

  auto track = [&](cplx prev, double t) {
    const cplx gt = g(t);
    if (std::abs(gt) < 1e-12 * (1.0 + E)) throw Error("quantization_integral: E - V vanishes inside the chord");
    cplx s = std::sqrt(gt);
    if (std::abs(s - prev) > std::abs(s + prev)) s = -s;
    // A zero of g near the chord shows up as a quarter-turn of the phase.
    if (std::abs(std::arg(s / prev)) > pi / 4.0)
      throw Error("quantization_integral: branch tracking failed (turning point on the chord)");
    return s;
  };

  const int n = nodes;
  const double step = pi / (n + 1);
  // Nodes t_k = cos(k*step), k = 1..n, are descending in t. Walk from the
  // centre outward in both directions.
  std::vector<cplx> root(n + 1);
  cplx anchor = std::sqrt(g(0.0));
  if (anchor.real() < 0.0) anchor = -anchor;
  const int centre = (n + 1) / 2;  // first k with t_k <= 0 (n odd: t = 0)
  cplx prev = anchor;
  for (int k = centre; k >= 1; --k) root[k] = prev = track(prev, std::cos(k * step));
  prev = anchor;
  for (int k = centre + 1; k <= n; ++k) root[k] = prev = track(prev, std::cos(k * step));

  cplx sum{0.0, 0.0};
  for (int k = 1; k <= n; ++k) {
    const double s = std::sin(k * step);
    sum += step * s * s * root[k];
  }
  return half * sum;
}

}  // namespace detail

/// Complex action between two turning points, with node doubling until two
/// successive estimates agree to ~1e-12 relative.
inline cplx action_between(const PotentialSpec& spec, double E, cplx x_minus, cplx x_plus) {
  if (std::abs(x_plus - x_minus) < 1e-14) throw Error("quantization_integral: coincident turning points");
  int nodes = 127;
  cplx prev = detail::chord_action(spec, E, x_minus, x_plus, nodes);
  for (int iter = 0; iter < 8; ++iter) {
    nodes = 2 * nodes + 1;
    const cplx next = detail::chord_action(spec, E, x_minus, x_plus, nodes);
    if (std::abs(next - prev) <= 1e-13 * (1.0 + std::abs(next))) return next;
    prev = next;
  }
  return prev;
}

/// Real part of the action between x_- = -conj(x_0) and x_+ = x_0.
inline double quantization_integral(const PotentialSpec& spec, double E) {
  const TurningPointSet tp = turning_points(spec, E);
  const cplx value = action_between(spec, E, tp.pair_minus, tp.pair_plus);
  if (std::abs(value.imag()) >= 1e-8 * (1.0 + std::abs(value.real())))
    throw Error("quantization_integral: action has a non-negligible imaginary part");
  return value.real();
}

inline double quantum_number(const PotentialSpec& spec, double E) {
  return quantization_integral(spec, E) / pi - 0.5;
}

/// Rounds a semiclassical quantum number to an integer label, or -1 when it
/// is more than 0.2 away from every integer.
inline int round_label(double q) {
  const double r = std::round(q);
  if (std::abs(q - r) > 0.2 || r < 0.0) return -1;
  return int(r);
}

/// Semiclassical reference attached to an integration ray: the turning
/// point closest in angle to `theta_right` and its PT mirror. Works for any
/// representation (M, eps, s); the linear term is ignored.
struct RayReference {
  PotentialSpec monomial;  // spec with b = 0
  double theta_right = 0.0;
  double action_at_unit_energy = 0.0;  // Re S(E = 1), S(E) = S(1) E^{(K+2)/(2K)}

  RayReference(const PotentialSpec& spec, double theta) : monomial(spec), theta_right(theta) {
    monomial.b = 0.0;
    const auto [xm, xp] = pair(1.0);
    const cplx s = action_between(monomial, 1.0, xm, xp);
    if (std::abs(s.imag()) >= 1e-8 * (1.0 + std::abs(s.real())) || !(s.real() > 0.0))
      throw Error("wkb: no real positive action for the turning-point pair of this ray");
    action_at_unit_energy = s.real();
  }

  /// (x_-, x_+) at energy E.
  std::pair<cplx, cplx> pair(double E) const {
    const std::vector<cplx> roots = monomial_roots(monomial, E);
    cplx best = roots.front();
    for (const cplx& r : roots)
      if (angle_distance(std::arg(r), theta_right) < angle_distance(std::arg(best), theta_right)) best = r;
    const cplx mirror = -std::conj(best);
    if (std::abs(mirror - best) < 1e-12 * std::abs(best))
      throw Error("wkb: nearest turning point is self-mirrored; no WKB pair for this ray");
    return {mirror, best};
  }

  int degree() const { return monomial.degree(); }

  double quantum_number(double E) const {
    const double p = (degree() + 2.0) / (2.0 * degree());
    return action_at_unit_energy * std::pow(E, p) / pi - 0.5;
  }

  double energy(double n) const {
    return std::pow((n + 0.5) * pi / action_at_unit_energy, level_exponent(degree()));
  }

  /// dE/dn at energy E.
  double spacing(double E) const {
    const double q = std::max(quantum_number(E), 0.0) + 0.5;
    return level_exponent(degree()) * E / q;
  }
};

}  // namespace ptspec::wkb
