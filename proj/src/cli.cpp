#include "weylab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "weylab/abdensity.hpp"
#include "weylab/bohmian.hpp"
#include "weylab/constants.hpp"
#include "weylab/errors.hpp"
#include "weylab/oscillator.hpp"
#include "weylab/parallel.hpp"
#include "weylab/spectroscopy.hpp"

namespace weylab::cli {
namespace {

using osc::cplx;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

bool finite(double v) { return std::isfinite(v); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

double to_double(const std::string& s, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(flag + ": not a number: '" + s + "'");
}

std::vector<double> parse_list(const std::string& s, std::size_t count, const std::string& flag) {
  const auto parts = split(s, ',');
  require(parts.size() == count, flag + " expects " + std::to_string(count) + " comma-separated values");
  std::vector<double> out;
  for (const auto& p : parts) {
    out.push_back(to_double(p, flag));
    require(finite(out.back()), flag + ": values must be finite");
  }
  return out;
}

std::pair<double, double> parse_range(const std::string& s, const std::string& flag) {
  const auto v = parse_list(s, 2, flag);
  require(v[0] < v[1], flag + ": lower bound must be below upper bound");
  return {v[0], v[1]};
}

osc::Quanta parse_quanta(const std::string& s, const std::string& flag) {
  const auto v = parse_list(s, 3, flag);
  osc::Quanta q{};
  for (int j = 0; j < 3; ++j) {
    require(v[j] >= 0.0 && v[j] == std::floor(v[j]) && v[j] <= 60.0, flag + ": quanta must be integers in [0, 60]");
    q[j] = static_cast<int>(v[j]);
  }
  return q;
}

cplx parse_complex(const std::string& s, const std::string& flag) {
  const auto parts = split(s, ',');
  require(parts.size() == 1 || parts.size() == 2, flag + " expects 're' or 're,im'");
  const double re = to_double(parts[0], flag);
  const double im = parts.size() == 2 ? to_double(parts[1], flag) : 0.0;
  require(finite(re) && finite(im), flag + ": values must be finite");
  return {re, im};
}

UnitMode parse_units(const std::string& s) { return s == "cgs" ? UnitMode::cgs : UnitMode::natural; }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  return xs;
}

void add_units(CLI::App* sub, std::string& units, const char* fallback) {
  units = fallback;
  sub->add_option("--units", units, "Unit system: cgs (CODATA 2018, Gaussian) or natural (c = hbar = G = 1)")
      ->check(CLI::IsMember({"cgs", "natural"}))
      ->capture_default_str();
}

// ---- constants --------------------------------------------------------------

struct ConstantsArgs {
  std::string units;
  double scale = 1.1;
};

std::string run_constants(const ConstantsArgs& a, std::ostream&) {
  require(finite(a.scale) && a.scale > 0.0, "--scale must be > 0");
  const PhysicalConstants k = constants_for(parse_units(a.units));
  const bool cgs = a.units == "cgs";
  auto unit = [&](const char* u) { return cgs ? std::string(u) : std::string("natural"); };
  std::ostringstream s;
  s << "name,value,unit\n";
  auto row = [&](const char* name, double v, const std::string& u) { s << name << ',' << num(v) << ',' << u << '\n'; };
  row("c", k.c, unit("cm/s"));
  row("hbar", k.hbar, unit("erg*s"));
  row("h", k.h, unit("erg*s"));
  row("G", k.G, unit("cm^3/(g*s^2)"));
  row("e", k.e, unit("esu"));
  row("m_e", k.m_e, unit("g"));
  row("alpha", alpha(k), "1");
  row("alpha_G", alpha_g(k), "1");
  row("alpha_S", alpha_s(k), "1");
  row("alpha_S_over_alpha", alpha_s(k) / alpha(k), "1");
  row("e_I_electron", imaginary_coupling(k.m_e, k), unit("esu"));
  row("flux_quantum", flux_quantum(k), unit("G*cm^2"));
  row("mass_times_flux_for_scale", k.m_e * flux_for_scale(k.m_e, a.scale, k), unit("g*esu"));
  return s.str();
}

// ---- shared particle/flux flags ---------------------------------------------

struct ParticleArgs {
  double flux = std::numbers::pi / 4.0;
  double charge = 0.0;
  double mass = std::numeric_limits<double>::quiet_NaN();
  double e_imag = std::numeric_limits<double>::quiet_NaN();
  CLI::Option* mass_opt = nullptr;
  CLI::Option* e_imag_opt = nullptr;

  void add(CLI::App* sub) {
    sub->add_option("--flux", flux, "Loop flux Phi_L around the solenoid")->capture_default_str();
    sub->add_option("--charge", charge, "Particle charge (0 for a neutral molecule)")->capture_default_str();
    mass_opt = sub->add_option("--mass", mass, "Particle mass (default: m_e of the unit system)");
    e_imag_opt = sub->add_option("--eI-override", e_imag, "Imaginary coupling e_I (default: mass * sqrt(G))");
  }

  GaugeCoupling coupling(const PhysicalConstants& k) const {
    require(finite(flux), "--flux must be finite");
    require(finite(charge), "--charge must be finite");
    const double m = mass_opt->count() ? mass : k.m_e;
    require(finite(m) && m >= 0.0, "--mass must be finite and >= 0");
    double ei = imaginary_coupling(m, k);
    if (e_imag_opt->count()) {
      require(finite(e_imag), "--eI-override must be finite");
      ei = e_imag;
    }
    return {charge, ei};
  }
};

// ---- ab ---------------------------------------------------------------------

struct AbArgs {
  std::string units;
  ParticleArgs particle;
  double t = 0.7;
  double y = 3.5;
  std::string x_range = "-6,6";
  int samples = 241;
  double p_a = 0.5;
  double tol = 1e-6;
};

std::string run_ab(const AbArgs& a, std::ostream& err) {
  const PhysicalConstants k = constants_for(parse_units(a.units));
  const GaugeCoupling g = a.particle.coupling(k);
  require(finite(a.t) && a.t >= 0.0, "--t must be >= 0");
  require(finite(a.y), "--y must be finite");
  require(a.samples >= 2, "--samples must be >= 2");
  require(a.p_a >= 0.0 && a.p_a <= 1.0, "--p-a must lie in [0, 1]");
  require(finite(a.tol) && a.tol > 0.0, "--tol must be > 0");
  const auto [lo, hi] = parse_range(a.x_range, "--x-range");

  const FluxConfig flux(a.particle.flux);
  const SlitState state = double_slit_state();
  const auto xs = linspace(lo, hi, a.samples);
  const ab::ScreenProfile prof = ab::screen_profile(a.t, a.y, xs, state, g, flux, k, a.p_a, a.tol);

  std::ostringstream s;
  s << "x,density_orthodox,density_pilot,which_way,density_averaged\n";
  double ip = 0.0, io = 0.0;
  const double dx = xs[1] - xs[0];
  for (const ab::ScreenRow& r : prof.rows) {
    s << num(r.x) << ',' << num(r.orthodox) << ',' << num(r.pilot) << ','
      << (r.ambiguous ? "ambiguous" : to_string(r.which_way)) << ',' << num(r.averaged) << '\n';
    if (!std::isnan(r.pilot)) ip += r.pilot * dx;
    io += r.orthodox * dx;
  }
  const ab::LoopExponents ex = ab::loop_exponents(g, flux, k);
  err << "INFO loop_exponents theta=" << num(ex.theta) << " sigma=" << num(ex.sigma) << '\n';
  if (prof.separatrix) {
    err << "INFO separatrix x=" << num(*prof.separatrix) << " label_changes=" << prof.label_changes << '\n';
  } else {
    err << "INFO separatrix none label_changes=0\n";
  }
  err << "INFO screen_integral pilot=" << num(ip) << " orthodox=" << num(io) << '\n';
  return s.str();
}

// ---- trajectories -----------------------------------------------------------

struct TrajectoryArgs {
  std::string units;
  ParticleArgs particle;
  int count = 100;
  std::uint64_t seed = 1;
  double t = 0.7;
  double dt = 0.05;
};

std::string run_trajectories(const TrajectoryArgs& a, std::ostream& err) {
  const PhysicalConstants k = constants_for(parse_units(a.units));
  const GaugeCoupling g = a.particle.coupling(k);
  require(a.count >= 1, "--count must be >= 1");
  require(finite(a.t) && a.t > 0.0, "--t must be > 0");
  require(finite(a.dt) && a.dt > 0.0, "--dt must be > 0");

  const SlitState guide = ab::guiding_state(double_slit_state(), g, FluxConfig(a.particle.flux), k);
  const auto starts = bohmian::sample_initial_positions(guide, static_cast<std::size_t>(a.count), a.seed);
  std::vector<bohmian::Trajectory> paths(starts.size());
  std::vector<char> failed(starts.size(), 0);
  parallel_for(starts.size(), [&](std::size_t i) {
    try {
      paths[i] = bohmian::integrate(starts[i].x, starts[i].y, 0.0, a.t, a.dt, guide);
    } catch (const bohmian::TrajectoryNodeError& e) {
      paths[i] = e.partial();
      paths[i].which_way = Slit::undecided;
      failed[i] = 1;
    }
  });

  std::ostringstream s;
  s << "trajectory_id,t,x,y,which_way\n";
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (failed[i]) err << "WARN trajectory " << i << " stopped at a node\n";
    for (const bohmian::Sample& p : paths[i].samples) {
      s << i << ',' << num(p.t) << ',' << num(p.x) << ',' << num(p.y) << ',' << to_string(paths[i].which_way) << '\n';
    }
  }
  return s.str();
}

// ---- oscillator -------------------------------------------------------------

struct OscillatorArgs {
  std::string units;
  std::string lambda = "1,1,1";
  double charge = std::numeric_limits<double>::quiet_NaN();
  double mass = std::numeric_limits<double>::quiet_NaN();
  double e_imag = std::numeric_limits<double>::quiet_NaN();
  CLI::Option* charge_opt = nullptr;
  CLI::Option* mass_opt = nullptr;
  CLI::Option* e_imag_opt = nullptr;
  int max_n = 2;
  std::string eigenfunction;
  std::string x_range = "-5,5";
  int samples = 101;
};

std::string run_oscillator(const OscillatorArgs& a, std::ostream& err) {
  const PhysicalConstants k = constants_for(parse_units(a.units));
  const auto lambda = parse_list(a.lambda, 3, "--lambda");
  for (double l : lambda) require(l > 0.0, "--lambda values must be > 0");
  const double m = a.mass_opt->count() ? a.mass : k.m_e;
  require(finite(m) && m > 0.0, "--mass must be finite and > 0");
  const double q = a.charge_opt->count() ? a.charge : k.e;
  require(finite(q) && q > 0.0, "--charge must be finite and > 0");
  double ei = imaginary_coupling(m, k);
  if (a.e_imag_opt->count()) {
    require(finite(a.e_imag), "--eI-override must be finite");
    ei = a.e_imag;
  }
  require(a.max_n >= 0 && a.max_n <= 60, "--max-n must lie in [0, 60]");
  require(a.samples >= 2, "--samples must be >= 2");

  const cplx ec{q, ei};
  osc::Omega3 w{};
  for (int j = 0; j < 3; ++j) w[j] = osc::complex_frequency(lambda[j], ec, m);
  err << "INFO omega=" << num(w[0].real()) << ',' << num(w[1].real()) << ',' << num(w[2].real())
      << " ratio_imag=" << num(w[0].imag() / w[0].real()) << '\n';

  std::ostringstream s;
  if (!a.eigenfunction.empty()) {
    const osc::Quanta n = parse_quanta(a.eigenfunction, "--eigenfunction");
    const auto [lo, hi] = parse_range(a.x_range, "--x-range");
    s << "x,re_phi,im_phi\n";
    for (double x : linspace(lo, hi, a.samples)) {
      const cplx v = osc::eigenfunction(n, w, {x, 0.0, 0.0}, m, k.hbar);
      s << num(x) << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
    }
    return s.str();
  }
  s << "nx,ny,nz,re_E,im_E\n";
  for (int i = 0; i <= a.max_n; ++i) {
    for (int j = 0; j <= a.max_n; ++j) {
      for (int l = 0; l <= a.max_n; ++l) {
        const osc::ComplexLevel lvl = osc::ComplexLevel::make(w, {i, j, l}, k.hbar);
        s << i << ',' << j << ',' << l << ',' << num(lvl.energy_real()) << ',' << num(lvl.energy_imag()) << '\n';
      }
    }
  }
  return s.str();
}

// ---- spectrum ---------------------------------------------------------------

struct SpectrumArgs {
  std::string units;
  std::string n = "1,0,0";
  std::string p = "0,0,0";
  std::string omega_osc = "1,1.7,2.3";
  std::string omega_range;
  int samples = 401;
  double t = 10.0;
  double ratio_imag = 1e-21;
  double history_scale = 1.0;
  bool long_time = false;
  double a0 = 1.0;
  std::string v;
  std::string v_bar;
  double mass = std::numeric_limits<double>::quiet_NaN();
  double charge = std::numeric_limits<double>::quiet_NaN();
  CLI::Option* mass_opt = nullptr;
  CLI::Option* charge_opt = nullptr;
};

std::string run_spectrum(const SpectrumArgs& a, std::ostream& err) {
  const PhysicalConstants k = constants_for(parse_units(a.units));
  const osc::Quanta n = parse_quanta(a.n, "--n");
  const osc::Quanta p = parse_quanta(a.p, "--p");
  require(n != p, "--n and --p must differ");
  const auto wr = parse_list(a.omega_osc, 3, "--omega-osc");
  for (double w : wr) require(w > 0.0, "--omega-osc values must be > 0");
  require(finite(a.ratio_imag) && a.ratio_imag >= 0.0 && a.ratio_imag < 1.0, "--ratio-imag must lie in [0, 1)");
  require(a.samples >= 2, "--samples must be >= 2");
  require(finite(a.t) && a.t > 0.0, "--t must be > 0");
  require(finite(a.history_scale) && a.history_scale > 0.0, "--history-scale must be > 0");
  require(finite(a.a0), "--a0 must be finite");
  const double m = a.mass_opt->count() ? a.mass : k.m_e;
  require(finite(m) && m > 0.0, "--mass must be finite and > 0");
  const double q = a.charge_opt->count() ? a.charge : k.e;
  require(finite(q) && q > 0.0, "--charge must be finite and > 0");

  spec::OscillatorSystem sys;
  for (int j = 0; j < 3; ++j) sys.omega[j] = wr[j] * cplx{1.0, a.ratio_imag};
  sys.mass = m;
  sys.hbar = k.hbar;
  sys.c = k.c;
  // omega ~ sqrt(e_C), so w^I/w^R = r corresponds to e_C = e (1 + i r)^2
  sys.e_complex = q * cplx{1.0, a.ratio_imag} * cplx{1.0, a.ratio_imag};

  const spec::TransitionPair base = spec::make_transition(n, p, sys, {});
  double lo = 0.5 * std::abs(base.omega_r), hi = 1.5 * std::abs(base.omega_r);
  if (!a.omega_range.empty()) std::tie(lo, hi) = parse_range(a.omega_range, "--omega-range");
  const std::optional<cplx> v_fix = a.v.empty() ? std::nullopt : std::optional(parse_complex(a.v, "--v"));
  const std::optional<cplx> vb_fix = a.v_bar.empty() ? std::nullopt : std::optional(parse_complex(a.v_bar, "--vbar"));
  const double norm_n = spec::norm_integral(n, sys);

  const auto omegas = linspace(lo, hi, a.samples);
  struct Row {
    double c1sq;
    double prob;
    spec::Regime regime;
  };
  std::vector<Row> rows(omegas.size());
  parallel_for(omegas.size(), [&](std::size_t i) {
    const spec::DriveField drive{a.a0, omegas[i]};
    spec::MatrixElements me{};
    if (!v_fix || !vb_fix) me = spec::matrix_element(n, p, sys, drive);
    if (v_fix) me.v = *v_fix;
    if (vb_fix) me.v_bar = *vb_fix;
    spec::TransitionPair pair = base;
    pair.elements = me;
    if (a.long_time) {
      const spec::Lineshape l = spec::c1_squared_long_t(a.t, pair, drive, sys);
      const double growth = std::exp(2.0 * pair.energy_n.imag() * a.t / sys.hbar);
      rows[i] = {l.value, l.value * growth * norm_n / (a.history_scale * a.history_scale), l.regime};
    } else {
      rows[i] = {std::norm(spec::c1(a.t, pair, drive, sys)),
                 spec::transition_probability(a.t, pair, drive, sys, a.history_scale, norm_n), spec::Regime::ok};
    }
  });

  std::ostringstream s;
  s << "omega,c1sq,probability,regime_flag\n";
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const char* flag = a.long_time ? (rows[i].regime == spec::Regime::ok ? "ok" : "outside") : "exact";
    s << num(omegas[i]) << ',' << num(rows[i].c1sq) << ',' << num(rows[i].prob) << ',' << flag << '\n';
    if (rows[i].c1sq > rows[best].c1sq) best = i;
  }
  err << "INFO transition omega_r=" << num(base.omega_r) << " omega_i=" << num(base.omega_i)
      << " fwhm=" << num(spec::lorentzian_width(base)) << '\n';
  err << "INFO argmax omega=" << num(omegas[best]) << " index=" << best << '\n';
  return s.str();
}

// ---- plumbing ---------------------------------------------------------------

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::ios_base::failure("cannot open " + tmp.string() + " for writing");
    f << text;
    f.flush();
    if (!f) throw std::ios_base::failure("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::ios_base::failure("cannot rename into " + target.string() + ": " + ec.message());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"weylab: scale-invariant pilot-wave simulations (AB double slit, complex-frequency spectroscopy)",
               "weylab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  app.add_option("-o,--output", output, "Write CSV here (atomically) instead of stdout");

  ConstantsArgs ca;
  auto* c_cmd = app.add_subcommand("constants", "Coupling constants, ratios and flux thresholds");
  add_units(c_cmd, ca.units, "cgs");
  c_cmd->add_option("--scale", ca.scale, "Amplitude scale change for the mass*flux row")->capture_default_str();

  AbArgs aa;
  auto* ab_cmd = app.add_subcommand("ab", "Aharonov-Bohm double-slit screen densities");
  add_units(ab_cmd, aa.units, "natural");
  aa.particle.add(ab_cmd);
  ab_cmd->add_option("--t", aa.t, "Screen time")->capture_default_str();
  ab_cmd->add_option("--y", aa.y, "Screen line y")->capture_default_str();
  ab_cmd->add_option("--x-range", aa.x_range, "Screen x range lo,hi")->capture_default_str();
  ab_cmd->add_option("--samples", aa.samples, "Number of screen points")->capture_default_str();
  ab_cmd->add_option("--p-a", aa.p_a, "Slit-A weight of the averaged density")->capture_default_str();
  ab_cmd->add_option("--tol", aa.tol, "Separatrix bisection tolerance")->capture_default_str();

  TrajectoryArgs ta;
  auto* t_cmd = app.add_subcommand("trajectories", "|psi|^2-sampled pilot-wave trajectories");
  add_units(t_cmd, ta.units, "natural");
  ta.particle.add(t_cmd);
  t_cmd->add_option("--count", ta.count, "Number of trajectories")->capture_default_str();
  t_cmd->add_option("--seed", ta.seed, "Sampling seed")->capture_default_str();
  t_cmd->add_option("--t", ta.t, "Final time")->capture_default_str();
  t_cmd->add_option("--dt", ta.dt, "Initial and maximum step")->capture_default_str();

  OscillatorArgs oa;
  auto* o_cmd = app.add_subcommand("oscillator", "Complex-frequency oscillator levels and eigenfunctions");
  add_units(o_cmd, oa.units, "natural");
  o_cmd->add_option("--lambda", oa.lambda, "Spring constants lambda_x,lambda_y,lambda_z")->capture_default_str();
  oa.charge_opt = o_cmd->add_option("--charge", oa.charge, "Real coupling e (default: e of the unit system)");
  oa.mass_opt = o_cmd->add_option("--mass", oa.mass, "Mass (default: m_e of the unit system)");
  oa.e_imag_opt = o_cmd->add_option("--eI-override", oa.e_imag, "Imaginary coupling (default: mass * sqrt(G))");
  o_cmd->add_option("--max-n", oa.max_n, "List levels with every n_j <= max-n")->capture_default_str();
  o_cmd->add_option("--eigenfunction", oa.eigenfunction, "Sample phi_n along x instead: nx,ny,nz");
  o_cmd->add_option("--x-range", oa.x_range, "Sampling range lo,hi")->capture_default_str();
  o_cmd->add_option("--samples", oa.samples, "Number of eigenfunction samples")->capture_default_str();

  SpectrumArgs sa;
  auto* s_cmd = app.add_subcommand("spectrum", "First-order resonance scan of a driven complex oscillator");
  add_units(s_cmd, sa.units, "natural");
  s_cmd->add_option("--n", sa.n, "Final level nx,ny,nz")->capture_default_str();
  s_cmd->add_option("--p", sa.p, "Initial level nx,ny,nz")->capture_default_str();
  s_cmd->add_option("--omega-osc", sa.omega_osc, "Real oscillator frequencies")->capture_default_str();
  s_cmd->add_option("--omega-range", sa.omega_range, "Drive frequency range lo,hi (default 0.5..1.5 w^R_np)");
  s_cmd->add_option("--samples", sa.samples, "Number of drive frequencies")->capture_default_str();
  s_cmd->add_option("--t", sa.t, "Half-width of the interaction window (-t, t)")->capture_default_str();
  s_cmd->add_option("--ratio-imag", sa.ratio_imag, "w^I/w^R of the oscillator")->capture_default_str();
  s_cmd->add_option("--history-scale", sa.history_scale, "Pre-interaction scale factor")->capture_default_str();
  s_cmd->add_flag("--long-time", sa.long_time, "Use the long-time Lorentzian for c1sq");
  s_cmd->add_option("--a0", sa.a0, "Drive amplitude A0")->capture_default_str();
  s_cmd->add_option("--v", sa.v, "Override V_np: re or re,im");
  s_cmd->add_option("--vbar", sa.v_bar, "Override Vbar_np: re or re,im");
  sa.mass_opt = s_cmd->add_option("--mass", sa.mass, "Oscillator mass (default: m_e of the unit system)");
  sa.charge_opt = s_cmd->add_option("--charge", sa.charge, "Real coupling e (default: e of the unit system)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "ERROR usage " << one_line(e.what()) << '\n';
    return kUsageError;
  }

  try {
    std::string text;
    if (c_cmd->parsed()) text = run_constants(ca, err);
    if (ab_cmd->parsed()) text = run_ab(aa, err);
    if (t_cmd->parsed()) text = run_trajectories(ta, err);
    if (o_cmd->parsed()) text = run_oscillator(oa, err);
    if (s_cmd->parsed()) text = run_spectrum(sa, err);
    if (output.empty()) {
      out << text;
      out.flush();
    } else {
      write_atomically(output, text);
    }
    return kSuccess;
  } catch (const UsageError& e) {
    err << "ERROR usage " << one_line(e.what()) << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "ERROR domain " << one_line(e.what()) << '\n';
    return kUsageError;
  } catch (const AccuracyError& e) {
    err << "ERROR accuracy " << one_line(e.what()) << '\n';
  } catch (const NodeError& e) {
    err << "ERROR node " << one_line(e.what()) << '\n';
  } catch (const BracketError& e) {
    err << "ERROR bracket " << one_line(e.what()) << '\n';
  } catch (const std::ios_base::failure& e) {
    err << "ERROR io " << one_line(e.what()) << '\n';
  } catch (const std::exception& e) {
    err << "ERROR internal " << one_line(e.what()) << '\n';
  }
  return kNumericalFailure;
}

}  // namespace weylab::cli
