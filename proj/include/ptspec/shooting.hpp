#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "ptspec/common.hpp"
#include "ptspec/potential.hpp"
#include "ptspec/stokes.hpp"
#include "ptspec/wkb.hpp"

namespace ptspec::shooting {

struct ShootingConfig {
  /// Ray truncation radius; 0 selects it per energy so that the decay
  /// action from the origin reaches `action_target`.
  double rho_max = 0.0;
  double action_target = 40.0;
  double ode_rel_tol = 1e-12;
  double ode_abs_tol = 1e-14;
  /// Energy scan step as a fraction of the local semiclassical level spacing.
  double scan_step = 0.05;
  /// Absolute energy tolerance of the bisection.
  double root_tol = 1e-10;
  int max_bisections = 200;
};

/// Re int_0^rho sqrt(e^{2i theta}(V(r e^{i theta}) - E)) dr with the
/// principal root, whose real part is non-negative everywhere.
inline double decay_action(const PotentialSpec& spec, double E, double theta, double rho) {
  const cplx rot = std::polar(1.0, 2.0 * theta);
  const cplx ray = std::polar(1.0, theta);
  auto f = [&](double r) { return std::sqrt(rot * (evaluate(spec, r * ray) - E)).real(); };
  // Composite 5-point Gauss-Legendre; the integrand is smooth but has kinks
  // where the principal root crosses its cut, so use many panels.
  static constexpr std::array<double, 5> node{0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                               0.9061798459386640};
  static constexpr std::array<double, 5> weight{0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                                 0.2369268850561891, 0.2369268850561891};
  const int panels = 200;
  const double h = rho / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (std::size_t k = 0; k < node.size(); ++k) sum += weight[k] * f(mid + 0.5 * h * node[k]);
  }
  return 0.5 * h * sum;
}

/// Radius at which decay_action reaches `target`, by bracketing + bisection.
inline double radius_for_action(const PotentialSpec& spec, double E, double theta, double target) {
  double hi = std::max(1.0, std::pow(std::abs(E), 1.0 / spec.degree()));
  while (decay_action(spec, E, theta, hi) < target) {
    hi *= 1.5;
    if (hi > 1e6) throw Error("shooting: decay action does not grow along this ray (not an anti-Stokes direction?)");
  }
  double lo = 0.0;
  for (int it = 0; it < 60 && hi - lo > 1e-6 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (decay_action(spec, E, theta, mid) < target ? lo : hi) = mid;
  }
  return hi;
}

struct RayResult {
  cplx psi;        // psi(x_end), scaled by exp(-log_scale)
  cplx dpsi_dx;    // dpsi/dx at x_end, same scaling
  double log_scale = 0.0;
  double rho_max = 0.0;
  long steps = 0;
  std::vector<std::string> warnings;
};

/// Integrates psi'' = e^{2i theta}(V(rho e^{i theta}) - E) psi inward along
/// the ray from rho_max to rho_end, seeded with the outward-decaying WKB
/// behaviour psi = 1, psi_rho = -sqrt(e^{2i theta}(V - E)).
inline RayResult integrate_ray(const PotentialSpec& spec, double E, double theta, const ShootingConfig& config,
                               double rho_end = 0.0) {
  spec.validate();
  RayResult out;
  const stokes::StokesDiagram diagram = stokes::asymptotic_lines(spec);
  const auto line = diagram.find(theta, 1e-9);
  if (!line || line->kind != stokes::Kind::antistokes)
    out.warnings.push_back("integrate_ray: theta is not an anti-Stokes direction");

  const double rho_max = config.rho_max > 0.0 ? config.rho_max
                                              : radius_for_action(spec, E, theta, config.action_target);
  if (rho_end >= rho_max) throw Error("integrate_ray: rho_end must be below rho_max");
  out.rho_max = rho_max;

  const cplx ray = std::polar(1.0, theta);
  const cplx rot = ray * ray;
  using State = std::array<cplx, 2>;
  auto rhs = [&](const State& y, State& dy, double rho) {
    dy[0] = y[1];
    dy[1] = rot * (evaluate(spec, rho * ray) - E) * y[0];
  };

  const cplx q = rot * (evaluate(spec, rho_max * ray) - E);
  if (std::abs(q) < 1e-12) throw Error("integrate_ray: V - E vanishes at rho_max; seed branch is ambiguous");
  State y{cplx{1.0, 0.0}, -std::sqrt(q)};

  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(config.ode_abs_tol, config.ode_rel_tol);

  double rho = rho_max;
  double dt = -1e-3 * rho_max;
  const double dt_floor = 1e-14 * rho_max;
  while (rho > rho_end) {
    if (rho + dt < rho_end) dt = rho_end - rho;
    if (stepper.try_step(rhs, y, rho, dt) == odeint::success) {
      ++out.steps;
      const double m = std::max(std::abs(y[0]), std::abs(y[1]));
      if (m > 1e100) {
        y[0] /= m;
        y[1] /= m;
        out.log_scale += std::log(m);
      }
    } else if (std::abs(dt) < dt_floor) {
      throw Error("integrate_ray: step size underflow at rho = " + std::to_string(rho));
    }
    if (rho_end - rho > -1e-15 * rho_max) break;
  }
  out.psi = y[0];
  out.dpsi_dx = y[1] / ray;
  return out;
}

/// Normalized PT-reduced Wronskian at the origin,
///   F(E) = Re[conj(psi(0)) psi'(0)] / (|psi(0)|^2 + |psi'(0)|^2).
/// The denominator keeps F in [-1/2, 1/2] and lets F pass through zero
/// continuously when psi'(0) or psi(0) itself vanishes.
/// The left solution is the PT image of the right one, so F = 0 exactly
/// when the two are linearly dependent.
inline double matching(const PotentialSpec& spec, double E, double theta_right, const ShootingConfig& config) {
  const RayResult r = integrate_ray(spec, E, theta_right, config);
  const double scale = std::max(std::abs(r.psi), std::abs(r.dpsi_dx));
  if (!(scale > 0.0)) throw Error("matching: psi and psi' both vanish at the origin");
  const cplx p = r.psi / scale, dp = r.dpsi_dx / scale;
  const double f = std::real(std::conj(p) * dp) / (std::norm(p) + std::norm(dp));
  return std::clamp(f, -1.0, 1.0);
}

struct SpectrumResult {
  std::vector<EnergyLevel> levels;
  std::vector<std::string> warnings;
  stokes::RayPair rays;
};

/// Scans F(E) between 0.1 E_wkb(0) and 1.5 E_wkb(n_max), bisects every
/// sign change and labels the roots with the semiclassical quantum number
/// of the turning-point pair attached to the rays.
inline SpectrumResult find_eigenvalues(const PotentialSpec& spec, const stokes::RayPair& rays, int n_max,
                                       const ShootingConfig& config) {
  if (n_max < 0) throw Error("find_eigenvalues: n_max must be >= 0");
  if (angle_distance(rays.theta_left, pi - rays.theta_right) > 1e-12)
    throw Error("find_eigenvalues: rays are not a PT-mirrored pair");

  SpectrumResult out;
  out.rays = rays;
  const wkb::RayReference ref(spec, rays.theta_right);
  const double e_lo = 0.1 * ref.energy(0);
  const double e_hi = 1.5 * ref.energy(n_max);
  if (config.rho_max > 0.0 &&
      decay_action(spec, e_hi, rays.theta_right, config.rho_max) < 35.0)
    throw Error("find_eigenvalues: rho_max too small for the scanned energy range");

  auto F = [&](double E) { return matching(spec, E, rays.theta_right, config); };

  std::vector<std::pair<double, double>> roots;  // (value, bracket width)
  double e_prev = e_lo;
  double f_prev = F(e_prev);
  while (e_prev < e_hi) {
    const double e_next = std::min(e_hi, e_prev + config.scan_step * ref.spacing(e_prev));
    const double f_next = F(e_next);
    if (f_prev == 0.0) {
      roots.emplace_back(e_prev, 0.0);
    } else if ((f_prev < 0.0) != (f_next < 0.0) && f_next != 0.0) {
      double lo = e_prev, hi = e_next, f_lo = f_prev;
      for (int it = 0; it < config.max_bisections && hi - lo > config.root_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = F(mid);
        if (f_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
      roots.emplace_back(0.5 * (lo + hi), hi - lo);
    }
    e_prev = e_next;
    f_prev = f_next;
  }

  std::vector<int> seen(n_max + 1, 0);
  for (const auto& [value, width] : roots) {
    if (!out.levels.empty() && value - out.levels.back().value < 10.0 * config.root_tol) continue;
    const int n = wkb::round_label(ref.quantum_number(value));
    if (n > n_max) continue;
    if (n < 0) out.warnings.push_back("unlabeled root at E = " + std::to_string(value));
    else if (seen[n]++) out.warnings.push_back("label collision at n = " + std::to_string(n));
    out.levels.push_back({n, value, Method::shooting, width});
  }
  for (int n = 0; n <= n_max; ++n)
    if (!seen[n]) out.warnings.push_back("no root found for n = " + std::to_string(n));
  return out;
}

}  // namespace ptspec::shooting
