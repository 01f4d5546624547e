#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ptspec/diag.hpp"
#include "ptspec/reference.hpp"
#include "ptspec/shooting.hpp"
#include "ptspec/stokes.hpp"
#include "ptspec/wkb.hpp"

// Comparisons of computed spectra and line geometry against the published
// reference values. Shared by `ptspec reproduce` and the acceptance suite.
namespace ptspec::reproduce {

enum class Measure { absolute, relative, exact };

inline std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::absolute: return "abs";
    case Measure::relative: return "rel";
    default: return "exact";
  }
}

struct Check {
  std::string group;
  std::string label;
  double computed = std::numeric_limits<double>::quiet_NaN();
  double expected = std::numeric_limits<double>::quiet_NaN();
  double tolerance = 0.0;
  Measure measure = Measure::exact;
  bool pass = false;
  std::string note;

  double abs_dev() const { return std::abs(computed - expected); }
  double rel_dev() const { return abs_dev() / std::abs(expected); }
};

inline Check numeric(std::string group, std::string label, double computed, double expected, double tol,
                     Measure m) {
  Check c{std::move(group), std::move(label), computed, expected, tol, m};
  const double dev = m == Measure::relative ? c.rel_dev() : c.abs_dev();
  c.pass = std::isfinite(computed) && dev < tol;
  return c;
}

inline Check flag(std::string group, std::string label, bool ok, std::string note = {}) {
  Check c{std::move(group), std::move(label)};
  c.pass = ok;
  c.note = std::move(note);
  return c;
}

struct CheckSet {
  std::vector<Check> checks;
  std::vector<std::string> warnings;

  bool passed() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
  void append(const CheckSet& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
  }
};

inline std::string level_label(int n) { return "n=" + std::to_string(n); }

inline CheckSet closed_form_bb() {
  CheckSet out;
  for (int n = 0; n < int(reference::bb_n2.size()); ++n)
    out.checks.push_back(numeric("E_bb(N=2)", level_label(n), wkb::energy_bb(n, 2), reference::bb_n2[n], 5e-9,
                                 Measure::relative));
  return out;
}

inline CheckSet closed_form_nm() {
  CheckSet out;
  for (int n = 0; n < int(reference::nm_n2.size()); ++n)
    out.checks.push_back(numeric("E_nm(N=2)", level_label(n), wkb::energy_nm(n, 2), reference::nm_n2[n], 5e-9,
                                 Measure::relative));
  return out;
}

/// Shooting levels 0..n_max, or NaN for a level the solver did not return.
inline std::vector<double> shooting_levels(const PotentialSpec& spec, const stokes::RayPair& rays, int n_max,
                                           std::vector<std::string>& warnings,
                                           const shooting::ShootingConfig& config = {}) {
  const auto r = shooting::find_eigenvalues(spec, rays, n_max, config);
  std::vector<double> v(n_max + 1, std::numeric_limits<double>::quiet_NaN());
  for (const auto& l : r.levels)
    if (l.n >= 0 && l.n <= n_max) v[l.n] = l.value;
  warnings.insert(warnings.end(), r.warnings.begin(), r.warnings.end());
  return v;
}

inline CheckSet shooting_real_axis() {
  CheckSet out;
  const auto s = ix_power(5);
  const auto v = shooting_levels(s, stokes::wedge_rays(s, stokes::WedgeMode::contains_real_axis),
                                 int(reference::ix5_integration.size()) - 1, out.warnings);
  for (int n = 0; n < int(v.size()); ++n)
    out.checks.push_back(numeric("shooting, real-axis wedges", level_label(n), v[n], reference::ix5_integration[n],
                                 2e-5, Measure::absolute));
  return out;
}

inline CheckSet shooting_off_axis() {
  CheckSet out;
  const auto s = ix_power(5);
  const auto v = shooting_levels(s, stokes::wedge_rays(s, stokes::WedgeMode::off_axis),
                                 int(reference::ix5_off_axis.size()) - 1, out.warnings);
  for (int n = 0; n < int(v.size()); ++n)
    out.checks.push_back(numeric("shooting, off-axis wedges", level_label(n), v[n], reference::ix5_off_axis[n], 1e-6,
                                 Measure::relative));
  return out;
}

inline const std::vector<int>& diagonalization_sizes() {
  static const std::vector<int> sizes{80, 120, 160, 200};
  return sizes;
}

inline double diagonalization_tolerance(int n) { return n <= 3 ? 1e-7 : n <= 8 ? 1e-5 : 1e-4; }

/// Uses the largest-size value of every level; the stabilization flag of the
/// diagonalization is reported as a note.
inline CheckSet diagonalization() {
  CheckSet out;
  const int n_max = int(reference::ix5_diagonalization.size()) - 1;
  const auto r = diag::real_spectrum(ix_power(5), diagonalization_sizes(), n_max);
  std::vector<double> v(n_max + 1, std::numeric_limits<double>::quiet_NaN());
  for (const auto& l : r.all_levels) v[l.n] = l.value;
  for (int n = 0; n <= n_max; ++n) {
    Check c = numeric("diagonalization, alpha=1", level_label(n), v[n], reference::ix5_diagonalization[n],
                      diagonalization_tolerance(n), Measure::relative);
    if (std::find(r.unstable.begin(), r.unstable.end(), n) != r.unstable.end()) c.note = "not stabilized";
    out.checks.push_back(std::move(c));
  }
  return out;
}

inline CheckSet figure_lines() {
  CheckSet out;
  const int q = reference::line_list_denominator;
  for (const auto& list : reference::quintic_line_lists) {
    const auto d = stokes::asymptotic_lines(list.spec);
    int anti = 0, st = 0;
    for (int p : list.numerators) {
      const auto line = d.find(pi * p / q);
      const std::string label = std::string(list.label) + " " + std::to_string(p) + "pi/14";
      if (!line) {
        out.checks.push_back(flag("line lists", label, false, "missing"));
        continue;
      }
      const auto [rn, rq] = line->reduced();
      const bool exact = long(rn) * q == long(p) * rq;
      (line->kind == stokes::Kind::antistokes ? anti : st)++;
      out.checks.push_back(flag("line lists", label, exact, std::string(stokes::to_string(line->kind))));
    }
    out.checks.push_back(flag("line lists", std::string(list.label) + " kinds", anti == 2 && st == 4,
                              std::to_string(anti) + " antistokes, " + std::to_string(st) + " stokes"));
  }
  const auto bb = stokes::bb_rays(5);
  out.checks.push_back(numeric("lower-half rays", "theta_left", bb.theta_left, 17 * pi / 14, 1e-14, Measure::absolute));
  out.checks.push_back(
      numeric("lower-half rays", "theta_right", bb.theta_right, 25 * pi / 14, 1e-14, Measure::absolute));
  return out;
}

inline CheckSet table1() {
  CheckSet out = closed_form_bb();
  out.append(shooting_off_axis());
  return out;
}

inline CheckSet table2() {
  CheckSet out = closed_form_nm();
  out.append(shooting_real_axis());
  out.append(diagonalization());
  return out;
}

}  // namespace ptspec::reproduce
