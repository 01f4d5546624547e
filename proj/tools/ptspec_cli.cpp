#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptspec/diag.hpp"
#include "ptspec/report.hpp"
#include "ptspec/reproduce.hpp"
#include "ptspec/shooting.hpp"
#include "ptspec/stokes.hpp"
#include "ptspec/wkb.hpp"

#ifndef PTSPEC_VERSION
#define PTSPEC_VERSION "unknown"
#endif

using namespace ptspec;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, acceptance_failure = 1, usage = 2, convergence = 3 };

struct OutputFlags {
  std::string format = "csv";
  std::string output;
  int digits = 12;
};

void add_output_flags(CLI::App* app, OutputFlags& f, std::vector<std::string> formats = {"csv", "json"}) {
  app->add_option("--format", f.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  app->add_option("--output", f.output, "Output file (stdout if omitted)");
  app->add_option("--digits", f.digits, "Significant digits")->check(CLI::Range(1, 17))->capture_default_str();
}

struct SpecFlags {
  std::optional<int> M, epsilon, ixK, neg_ixK;
  std::optional<std::string> sign;
  double b = 0.0;
};

void add_spec_flags(CLI::App* app, SpecFlags& f) {
  app->add_option("--M", f.M, "Exponent M in x^{2M}");
  app->add_option("--epsilon", f.epsilon, "Exponent epsilon in (ix)^epsilon");
  app->add_option("--sign", f.sign, "Overall sign s")->check(CLI::IsMember({"+", "-", "+1", "-1", "1"}));
  app->add_option("--b", f.b, "Coefficient of the linear term i b x");
  app->add_option("--ixK", f.ixK, "Shorthand for V = (ix)^K");
  app->add_option("--neg-ixK", f.neg_ixK, "Shorthand for V = -(ix)^K");
}

PotentialSpec make_spec(const SpecFlags& f) {
  const int shorthands = int(f.ixK.has_value()) + int(f.neg_ixK.has_value());
  if (shorthands > 1 || (shorthands == 1 && (f.M || f.epsilon || f.sign)))
    throw CLI::ValidationError("potential", "give either --M/--epsilon/--sign or one of --ixK/--neg-ixK");
  PotentialSpec s;
  if (f.ixK) {
    s = ix_power(*f.ixK, f.b);
  } else if (f.neg_ixK) {
    s = neg_ix_power(*f.neg_ixK, f.b);
  } else {
    if (!f.M || !f.epsilon) throw CLI::ValidationError("potential", "--M and --epsilon are required");
    s = {*f.M, *f.epsilon, f.sign && (*f.sign)[0] == '-' ? -1 : 1, f.b};
  }
  s.validate();
  return s;
}

json spec_json(const PotentialSpec& s) { return {{"M", s.M}, {"epsilon", s.epsilon}, {"sign", s.sign}, {"b", s.b}}; }

std::string angle_text(double theta, int K) {
  return report::pi_fraction(theta, 4 * (K + 2), 1e-9).value_or("");
}

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

struct Result {
  std::string command;
  json parameters = json::object();
  std::vector<std::pair<std::string, report::Table>> tables;
  std::vector<std::string> warnings;
  std::string svg;

  json manifest() const {
    return {{"command", command},
            {"parameters", parameters},
            {"version", PTSPEC_VERSION},
            {"timestamp", timestamp()},
            {"warnings", warnings}};
  }
};

fs::path resolve(const std::string& path) {
  fs::path p(path);
  if (const char* dir = std::getenv("PTSPEC_OUTPUT_DIR"); dir && *dir && p.is_relative()) p = fs::path(dir) / p;
  return p;
}

std::ofstream open_file(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream os(p);
  if (!os) throw Error("cannot open " + p.string() + " for writing");
  return os;
}

fs::path sibling(const fs::path& p, const std::string& suffix) {
  return p.parent_path() / (p.stem().string() + "_" + suffix + p.extension().string());
}

void write(const Result& r, const OutputFlags& flags) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  const bool to_file = !flags.output.empty();
  const fs::path path = to_file ? resolve(flags.output) : fs::path();

  if (flags.format == "json") {
    json doc{{"manifest", r.manifest()}};
    for (const auto& [name, t] : r.tables) doc[name] = t.to_json();
    if (to_file) {
      auto os = open_file(path);
      os << doc.dump(2) << '\n';
    } else {
      std::cout << doc.dump(2) << '\n';
    }
    return;
  }

  if (flags.format == "svg") {
    if (to_file) {
      auto os = open_file(path);
      os << r.svg;
      auto ms = open_file(path.string() + ".manifest.json");
      ms << r.manifest().dump(2) << '\n';
    } else {
      std::cout << r.svg;
    }
    return;
  }

  if (to_file) {
    for (std::size_t i = 0; i < r.tables.size(); ++i) {
      auto os = open_file(i == 0 ? path : sibling(path, r.tables[i].first));
      r.tables[i].second.write_csv(os);
    }
    auto ms = open_file(path.string() + ".manifest.json");
    ms << r.manifest().dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < r.tables.size(); ++i) {
      if (i) std::cout << '\n';
      r.tables[i].second.write_csv(std::cout);
    }
  }
}

// wkb -----------------------------------------------------------------------

struct WkbArgs {
  OutputFlags out;
  std::string method = "general";
  std::optional<int> N, M, epsilon;
  std::string range = "0..5";
};

Result run_wkb(const WkbArgs& a) {
  const auto [lo, hi] = report::parse_range(a.range);
  Result r{"wkb"};
  r.parameters = {{"method", a.method}, {"n", a.range}};
  std::function<double(int)> energy;
  if (a.method == "general") {
    if (!a.M || !a.epsilon) throw CLI::ValidationError("wkb", "--method general needs --M and --epsilon");
    if (a.N) throw CLI::ValidationError("wkb", "--N is not used by --method general");
    r.parameters["M"] = *a.M;
    r.parameters["epsilon"] = *a.epsilon;
    energy = [&](int n) { return wkb::energy_general(n, *a.M, *a.epsilon); };
  } else {
    if (!a.N) throw CLI::ValidationError("wkb", "--method " + a.method + " needs --N");
    if (a.M || a.epsilon) throw CLI::ValidationError("wkb", "--M/--epsilon are only used by --method general");
    r.parameters["N"] = *a.N;
    if (a.method == "bb")
      energy = [&](int n) { return wkb::energy_bb(n, *a.N); };
    else
      energy = [&](int n) { return wkb::energy_nm(n, *a.N); };
  }
  report::Table t{{"n", "E"}, {}, a.out.digits};
  for (int n = lo; n <= hi; ++n) t.add({long(n), energy(n)});
  r.tables.emplace_back("levels", std::move(t));
  return r;
}

// spectrum ------------------------------------------------------------------

struct SpectrumArgs {
  OutputFlags out;
  SpecFlags spec;
  std::string solver;
  std::string rays = "contains-real-axis";
  int n_max = 5;
  std::vector<int> sizes{80, 120, 160, 200};
  double alpha = 1.0;
  shooting::ShootingConfig shoot;
};

Result run_spectrum(const SpectrumArgs& a, bool& unconverged) {
  const PotentialSpec spec = make_spec(a.spec);
  if (a.n_max < 0) throw CLI::ValidationError("--nmax", "must be >= 0");
  Result r{"spectrum " + a.solver};
  r.parameters = {{"solver", a.solver}, {"potential", spec_json(spec)}, {"nmax", a.n_max}};
  report::Table t{{"n", "E", "err_estimate", "method", "status"}, {}, a.out.digits};
  const double nan = std::numeric_limits<double>::quiet_NaN();

  if (a.solver == "shoot") {
    stokes::RayPair rays;
    if (a.rays == "bb")
      rays = stokes::bb_rays(spec.degree());
    else
      rays = stokes::wedge_rays(spec, a.rays == "off-axis" ? stokes::WedgeMode::off_axis
                                                           : stokes::WedgeMode::contains_real_axis);
    r.parameters["rays"] = a.rays;
    r.parameters["rho_max"] = a.shoot.rho_max;
    r.parameters["ode_rtol"] = a.shoot.ode_rel_tol;
    r.parameters["ode_atol"] = a.shoot.ode_abs_tol;
    r.parameters["scan_step"] = a.shoot.scan_step;
    r.parameters["root_tol"] = a.shoot.root_tol;
    const auto res = shooting::find_eigenvalues(spec, rays, a.n_max, a.shoot);
    r.warnings = res.warnings;
    for (int n = 0; n <= a.n_max; ++n) {
      auto it = std::find_if(res.levels.begin(), res.levels.end(), [&](const EnergyLevel& l) { return l.n == n; });
      if (it == res.levels.end()) {
        unconverged = true;
        t.add({long(n), nan, nan, std::string(to_string(Method::shooting)), std::string("missing")});
      } else {
        t.add({long(n), it->value, it->err_estimate, std::string(to_string(it->method)), std::string("ok")});
      }
    }
    for (const auto& l : res.levels)
      if (l.n < 0) {
        unconverged = true;
        t.add({long(l.n), l.value, l.err_estimate, std::string(to_string(l.method)), std::string("unlabeled")});
      }
    if (!r.warnings.empty()) unconverged = true;
    report::Table rt{{"side", "theta", "theta_pi"}, {}, a.out.digits};
    rt.add({std::string("right"), rays.theta_right, angle_text(rays.theta_right, spec.degree())});
    rt.add({std::string("left"), rays.theta_left, angle_text(rays.theta_left, spec.degree())});
    r.tables.emplace_back("levels", std::move(t));
    r.tables.emplace_back("rays", std::move(rt));
    return r;
  }

  diag::BasisConfig basis;
  basis.alpha = a.alpha;
  r.parameters["sizes"] = a.sizes;
  r.parameters["alpha"] = a.alpha;
  const auto res = diag::real_spectrum(spec, a.sizes, a.n_max, basis);
  r.warnings = res.warnings;
  for (int n = 0; n <= a.n_max; ++n) {
    auto it = std::find_if(res.all_levels.begin(), res.all_levels.end(), [&](const EnergyLevel& l) { return l.n == n; });
    const bool stable = std::find(res.unstable.begin(), res.unstable.end(), n) == res.unstable.end();
    if (!stable) unconverged = true;
    if (it == res.all_levels.end())
      t.add({long(n), nan, nan, std::string(to_string(Method::diagonalization)), std::string("missing")});
    else
      t.add({long(n), it->value, it->err_estimate, std::string(to_string(it->method)),
             std::string(stable ? "ok" : "unstable")});
  }
  r.tables.emplace_back("levels", std::move(t));
  return r;
}

// stokes --------------------------------------------------------------------

struct StokesArgs {
  OutputFlags out;
  SpecFlags spec;
  double E = 1.0;
  bool trace = false;
  double arc_length = 8.0;
};

struct TracedLine {
  int point;
  stokes::Kind kind;
  std::vector<cplx> points;
};

std::string render_svg(const stokes::StokesDiagram& d, const std::vector<cplx>& roots,
                       const std::vector<TracedLine>& lines, double radius) {
  const double size = 600.0, half = size / 2.0, scale = half / (1.1 * radius);
  auto px = [&](cplx z) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::fixed << std::setprecision(2) << half + scale * z.real() << ',' << half - scale * z.imag();
    return os.str();
  };
  auto style = [](stokes::Kind k) {
    return k == stokes::Kind::antistokes ? std::string(R"(stroke="#1f4e9a" stroke-width="1.6")")
                                         : std::string(R"(stroke="#b03a2e" stroke-width="1.2" stroke-dasharray="6,4")");
  };
  std::ostringstream os;
  os << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << size << R"(" height=")" << size << R"(" viewBox="0 0 )"
     << size << ' ' << size << "\">\n";
  os << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
  os << R"(<line x1="0" y1=")" << half << R"(" x2=")" << size << R"(" y2=")" << half << R"(" stroke="#999"/>)" << '\n';
  os << R"(<line x1=")" << half << R"(" y1="0" x2=")" << half << R"(" y2=")" << size << R"(" stroke="#999"/>)" << '\n';
  const bool traced = !lines.empty();
  for (const auto& l : d.lines) {
    os << R"(<polyline fill="none" )" << style(l.kind) << (traced ? R"( opacity="0.25")" : "") << " points=\""
       << px(0.0) << ' ' << px(std::polar(radius, l.angle())) << "\"/>\n";
  }
  for (const auto& t : lines) {
    os << R"(<polyline fill="none" )" << style(t.kind) << " points=\"";
    for (std::size_t i = 0; i < t.points.size(); i += std::max<std::size_t>(1, t.points.size() / 400))
      os << px(t.points[i]) << ' ';
    os << px(t.points.back()) << "\"/>\n";
  }
  for (const cplx& z : roots) {
    const auto xy = px(z);
    const auto comma = xy.find(',');
    os << R"(<circle cx=")" << xy.substr(0, comma) << R"(" cy=")" << xy.substr(comma + 1) << R"(" r="3" fill="black"/>)"
       << '\n';
  }
  os << "</svg>\n";
  return os.str();
}

Result run_stokes(const StokesArgs& a) {
  const PotentialSpec spec = make_spec(a.spec);
  const int K = spec.degree();
  Result r{"stokes"};
  r.parameters = {{"potential", spec_json(spec)}, {"trace", a.trace}};
  const auto d = stokes::asymptotic_lines(spec);

  report::Table lt{{"angle", "angle_pi", "kind"}, {}, a.out.digits};
  for (const auto& l : d.lines) lt.add({l.angle(), angle_text(l.angle(), K), std::string(to_string(l.kind))});
  r.tables.emplace_back("lines", std::move(lt));

  std::vector<cplx> roots;
  std::vector<TracedLine> traced;
  double radius = 2.0;
  if (a.trace) {
    if (!(a.E > 0.0)) throw CLI::ValidationError("--E", "must be positive when tracing");
    if (!(a.arc_length > 0.0)) throw CLI::ValidationError("--arc-length", "must be positive");
    if (spec.b != 0.0) throw CLI::ValidationError("--b", "tracing requires b = 0");
    r.parameters["E"] = a.E;
    r.parameters["arc_length"] = a.arc_length;
    roots = monomial_roots(spec, a.E);
    report::Table st{{"turning_point", "x_re", "x_im", "kind", "branch", "status", "end_angle", "asymptote_pi",
                      "message"},
                     {},
                     a.out.digits};
    report::Table pt{{"line", "turning_point", "kind", "branch", "index", "re", "im"}, {}, a.out.digits};
    long line_id = 0;
    for (int j = 0; j < int(roots.size()); ++j)
      for (stokes::Kind kind : {stokes::Kind::antistokes, stokes::Kind::stokes})
        for (int branch = 0; branch < 3; ++branch) {
          const std::string kname(to_string(kind));
          try {
            const auto t = stokes::trace_line(spec, a.E, roots[j], kind, branch, a.arc_length);
            const double end = wrap_angle(std::arg(t.points.back()));
            double best = 1e9, best_angle = 0.0;
            for (double th : d.angles(kind))
              if (angle_distance(th, end) < best) best = angle_distance(th, end), best_angle = th;
            st.add({long(j), roots[j].real(), roots[j].imag(), kname, long(branch), std::string("ok"), end,
                    angle_text(best_angle, K), std::string()});
            for (std::size_t i = 0; i < t.points.size(); ++i)
              pt.add({line_id, long(j), kname, long(branch), long(i), t.points[i].real(), t.points[i].imag()});
            ++line_id;
            for (const cplx& p : t.points) radius = std::max(radius, std::abs(p));
            traced.push_back({j, kind, t.points});
          } catch (const Error& e) {
            st.add({long(j), roots[j].real(), roots[j].imag(), kname, long(branch), std::string("failed"),
                    std::numeric_limits<double>::quiet_NaN(), std::string(), std::string(e.what())});
          }
        }
    r.tables.emplace_back("traces", std::move(st));
    r.tables.emplace_back("trace_points", std::move(pt));
  }
  if (a.out.format == "svg") r.svg = render_svg(d, roots, traced, radius);
  return r;
}

// reproduce -----------------------------------------------------------------

struct ReproduceArgs {
  OutputFlags out;
  std::string target;
};

Result run_reproduce(const ReproduceArgs& a, bool& failed) {
  Result r{"reproduce " + a.target};
  r.parameters = {{"target", a.target}};
  reproduce::CheckSet set = a.target == "table1"   ? reproduce::table1()
                            : a.target == "table2" ? reproduce::table2()
                                                   : reproduce::figure_lines();
  r.warnings = set.warnings;
  report::Table t{{"group", "label", "computed", "expected", "abs_dev", "rel_dev", "tolerance", "measure", "status",
                   "note"},
                  {},
                  a.out.digits};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& c : set.checks) {
    const bool num = c.measure != reproduce::Measure::exact;
    t.add({c.group, c.label, c.computed, c.expected, num ? c.abs_dev() : nan, num ? c.rel_dev() : nan,
           num ? c.tolerance : nan, std::string(reproduce::to_string(c.measure)), std::string(c.pass ? "pass" : "FAIL"),
           c.note});
    if (!c.pass) std::cerr << "FAIL " << c.group << ": " << c.label << '\n';
  }
  failed = !set.passed();
  r.tables.emplace_back("checks", std::move(t));
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalues and Stokes geometry of PT-symmetric oscillators"};
  app.set_version_flag("--version", PTSPEC_VERSION);
  app.require_subcommand(1);

  WkbArgs wkb_args;
  auto* wkb_cmd = app.add_subcommand("wkb", "Leading-order WKB energies");
  add_output_flags(wkb_cmd, wkb_args.out);
  wkb_cmd->add_option("--method", wkb_args.method)->check(CLI::IsMember({"bb", "nm", "general"}))->capture_default_str();
  wkb_cmd->add_option("--N", wkb_args.N, "Degree parameter of x^2 (ix)^{2N-1} / x^{2N} (ix)");
  wkb_cmd->add_option("--M", wkb_args.M);
  wkb_cmd->add_option("--epsilon", wkb_args.epsilon);
  wkb_cmd->add_option("--n", wkb_args.range, "Level range a..b")->capture_default_str();

  SpectrumArgs sp;
  auto* sp_cmd = app.add_subcommand("spectrum", "Numerical eigenvalues by shooting or diagonalization");
  add_output_flags(sp_cmd, sp.out);
  add_spec_flags(sp_cmd, sp.spec);
  sp_cmd->add_option("solver", sp.solver)->required()->check(CLI::IsMember({"shoot", "diag"}));
  sp_cmd->add_option("--rays", sp.rays)
      ->check(CLI::IsMember({"contains-real-axis", "off-axis", "bb"}))
      ->capture_default_str();
  sp_cmd->add_option("--nmax", sp.n_max)->capture_default_str();
  sp_cmd->add_option("--sizes", sp.sizes, "Basis sizes, ascending")->delimiter(',');
  sp_cmd->add_option("--alpha", sp.alpha, "Basis length scale")->capture_default_str();
  sp_cmd->add_option("--rho-max", sp.shoot.rho_max, "Ray length (0 picks it per energy)");
  sp_cmd->add_option("--ode-rtol", sp.shoot.ode_rel_tol)->capture_default_str();
  sp_cmd->add_option("--ode-atol", sp.shoot.ode_abs_tol)->capture_default_str();
  sp_cmd->add_option("--scan-step", sp.shoot.scan_step, "Scan step in units of the level spacing")
      ->capture_default_str();
  sp_cmd->add_option("--root-tol", sp.shoot.root_tol)->capture_default_str();

  StokesArgs st;
  auto* st_cmd = app.add_subcommand("stokes", "Stokes and anti-Stokes lines");
  add_output_flags(st_cmd, st.out, {"csv", "json", "svg"});
  add_spec_flags(st_cmd, st.spec);
  st_cmd->add_option("--E", st.E, "Energy used for the turning points")->capture_default_str();
  st_cmd->add_flag("--trace", st.trace, "Trace the lines leaving every turning point");
  st_cmd->add_option("--arc-length", st.arc_length)->capture_default_str();

  ReproduceArgs rp;
  auto* rp_cmd = app.add_subcommand("reproduce", "Compare against the published reference values");
  add_output_flags(rp_cmd, rp.out);
  rp_cmd->add_option("target", rp.target)->required()->check(CLI::IsMember({"table1", "table2", "figures"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (wkb_cmd->parsed()) {
      write(run_wkb(wkb_args), wkb_args.out);
      return ok;
    }
    if (sp_cmd->parsed()) {
      bool unconverged = false;
      write(run_spectrum(sp, unconverged), sp.out);
      return unconverged ? convergence : ok;
    }
    if (st_cmd->parsed()) {
      write(run_stokes(st), st.out);
      return ok;
    }
    bool failed = false;
    write(run_reproduce(rp, failed), rp.out);
    return failed ? acceptance_failure : ok;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  }
}
