#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <random>
#include <vector>

#include "ptspec/common.hpp"

namespace ptspec {

/// The potential family V(x) = s * x^{2M} * (ix)^eps + i*b*x.
///
/// Exponents are integers, so (ix)^eps needs no branch choice. The sign is
/// kept explicitly so that -(ix)^K and +(ix)^K are both representable
/// verbatim; `canonicalize` moves a negative sign into the exponents when
/// that is possible.
struct PotentialSpec {
  int M = 0;
  int epsilon = 0;
  int sign = +1;
  double b = 0.0;

  int degree() const { return 2 * M + epsilon; }

  void validate() const {
    if (M < 0 || epsilon < 0) throw Error("potential: M and epsilon must be non-negative");
    if (sign != 1 && sign != -1) throw Error("potential: sign must be +1 or -1");
    if (degree() < 2) throw Error("potential: degree 2M+epsilon must be at least 2");
  }

  /// Coefficient c of the leading monomial, V = c*x^K + i*b*x.
  cplx leading_coefficient() const { return double(sign) * i_power(epsilon); }

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;
};

/// (M=0, eps=K, s=+1): V = (ix)^K.
inline PotentialSpec ix_power(int K, double b = 0.0) { return {0, K, +1, b}; }

/// V = -(ix)^K, written as x^2 (ix)^{K-2}.
inline PotentialSpec neg_ix_power(int K, double b = 0.0) { return {1, K - 2, +1, b}; }

inline cplx evaluate(const PotentialSpec& spec, cplx x) {
  const cplx lead = ipow(x, 2 * spec.M) * ipow(I * x, spec.epsilon);
  return double(spec.sign) * lead + I * spec.b * x;
}

/// Uses -x^{2M}(ix)^eps = x^{2M+2}(ix)^{eps-2} to remove a negative sign.
inline PotentialSpec canonicalize(const PotentialSpec& spec) {
  if (spec.sign == -1 && spec.epsilon >= 2) return {spec.M + 1, spec.epsilon - 2, +1, spec.b};
  return spec;
}

/// Checks conj(V(-conj x)) == V(x) at random points of the disc |x| < radius.
template <std::invocable<cplx> Potential>
bool pt_check(Potential&& v, int n_samples, unsigned seed = 12345, double radius = 3.0) {
  if (n_samples < 1) throw Error("pt_check: n_samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  for (int k = 0; k < n_samples; ++k) {
    const cplx x{u(rng), u(rng)};
    const cplx vx = v(x);
    const cplx mirrored = std::conj(v(-std::conj(x)));
    if (std::abs(mirrored - vx) >= 1e-12 * (1.0 + std::abs(vx))) return false;
  }
  return true;
}

inline bool pt_check(const PotentialSpec& spec, int n_samples, unsigned seed = 12345) {
  return pt_check([&](cplx x) { return evaluate(spec, x); }, n_samples, seed);
}

struct TurningPointSet {
  double energy = 0.0;
  std::vector<cplx> points;    // x_j, j = 0..K-1
  std::vector<double> angles;  // arg x_j in [0, 2pi)
  cplx pair_plus;              // x_+ = x_0
  cplx pair_minus;             // x_- = -conj(x_0)
};

/// Lower half-plane test used for turning-point classification; an exact
/// zero imaginary part counts as lower.
inline bool in_lower_half(double angle) { return std::sin(angle) <= 0.0; }

/// x_j = exp(-i pi (eps - 4j) / (2(2M+eps))) E^{1/(2M+eps)}, j = 0..K-1.
inline TurningPointSet turning_points(const PotentialSpec& spec, double E) {
  spec.validate();
  if (spec.sign != 1) throw Error("turning_points: sign must be +1 (canonicalize first)");
  if (spec.b != 0.0) throw Error("turning_points: requires b = 0");
  if (!(E > 0.0)) throw Error("turning_points: energy must be positive");

  const int K = spec.degree();
  const double radius = std::pow(E, 1.0 / K);
  TurningPointSet tp;
  tp.energy = E;
  for (int j = 0; j < K; ++j) {
    const double angle = wrap_angle(-pi * double(spec.epsilon - 4 * j) / (2.0 * K));
    tp.angles.push_back(angle);
    tp.points.push_back(std::polar(radius, angle));
  }
  tp.pair_plus = tp.points.front();
  tp.pair_minus = -std::conj(tp.pair_plus);
  return tp;
}

/// All K roots of E = c x^K for the leading monomial of any representation
/// (b is ignored), sorted by angle in [0, 2pi).
inline std::vector<cplx> monomial_roots(const PotentialSpec& spec, double E) {
  spec.validate();
  if (!(E > 0.0)) throw Error("monomial_roots: energy must be positive");
  const int K = spec.degree();
  const double base = std::arg(E / spec.leading_coefficient());
  const double radius = std::pow(E, 1.0 / K);
  std::vector<double> angles;
  for (int j = 0; j < K; ++j) angles.push_back(wrap_angle((base + 2.0 * pi * j) / K));
  std::sort(angles.begin(), angles.end());
  std::vector<cplx> roots;
  for (double a : angles) roots.push_back(std::polar(radius, a));
  return roots;
}

}  // namespace ptspec
