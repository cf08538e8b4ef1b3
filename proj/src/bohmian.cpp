#include "weylab/bohmian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "weylab/parallel.hpp"

namespace weylab::bohmian {
namespace {

struct State2 {
  double x;
  double y;
};


// Classical RK4 step given the slope at the start point.
State2 rk4_step(const SlitState& s, double t, const State2& p, const Point2& k1, double h) {
  const Point2 k2 = velocity(s, p.x + 0.5 * h * k1.x, p.y + 0.5 * h * k1.y, t + 0.5 * h);
  const Point2 k3 = velocity(s, p.x + 0.5 * h * k2.x, p.y + 0.5 * h * k2.y, t + 0.5 * h);
  const Point2 k4 = velocity(s, p.x + h * k3.x, p.y + h * k3.y, t + h);
  return {p.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          p.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
}

// Integrates from the last sample of `path` to t_to, appending samples.
void integrate_segment(std::vector<Sample>& path, double t_to, double dt, const SlitState& state,
                       const IntegrationOptions& opts) {
  double t = path.back().t;
  State2 p{path.back().x, path.back().y};
  const double dir = t_to >= t ? 1.0 : -1.0;
  double h = dt;
  while (dir * (t_to - t) > 0.0) {
    h = std::min(h, dir * (t_to - t));
    const Point2 k1 = velocity(state, p.x, p.y, t);
    const double hs = dir * h;
    const State2 full = rk4_step(state, t, p, k1, hs);
    const State2 mid = rk4_step(state, t, p, k1, 0.5 * hs);
    const Point2 km = velocity(state, mid.x, mid.y, t + 0.5 * hs);
    const State2 fine = rk4_step(state, t + 0.5 * hs, mid, km, 0.5 * hs);
    const double err = std::max(std::abs(fine.x - full.x), std::abs(fine.y - full.y)) / 15.0;
    const double allowed = opts.tolerance * h;
    const bool accepted = err <= allowed;
    if (accepted) {
      // snap to the segment end so exact-time samples exist (t = 0, t1)
      t = (dir * (t_to - (t + hs)) <= 1e-14 * std::max(1.0, std::abs(t_to))) ? t_to : t + hs;
      p = fine;
      path.push_back({t, p.x, p.y});
    }
    const double factor = err > 0.0 ? 0.9 * std::pow(allowed / err, 0.25) : 4.0;
    h = std::min(dt, h * std::clamp(factor, 0.2, 4.0));
    if (!accepted && h < opts.min_step) {
      std::ostringstream msg;
      msg << "integrate: step size underflow near (" << p.x << ", " << p.y << ", t=" << t << ")";
      throw NodeError(msg.str());
    }
  }
}

}  // namespace

const Sample& Trajectory::at_time(double t) const {
  for (const Sample& s : samples) {
    if (s.t == t) return s;
  }
  throw DomainError("Trajectory: no sample at the requested time");
}

Point2 velocity(const SlitState& state, double x, double y, double t) {
  const PsiSample s = state.sample(x, y, t);
  const double ref = state.reference_amplitude(t) / std::numbers::sqrt2;
  if (!(std::abs(s.psi) >= kNodeThreshold * ref)) {
    std::ostringstream msg;
    msg << "velocity: node of psi at (" << x << ", " << y << ", t=" << t << ")";
    throw NodeError(msg.str());
  }
  const double scale = state.kin.hbar / state.kin.mass;
  return {scale * (s.dx / s.psi).imag(), scale * (s.dy / s.psi).imag()};
}

Point2 velocity(const SpectralInterpolant& field, double x, double y, const Kinematics& kin) {
  const PsiSample s = field.sample(x, y);
  if (!(std::abs(s.psi) >= kNodeThreshold * field.max_abs())) {
    throw NodeError("velocity: node of the sampled field");
  }
  const double scale = kin.hbar / kin.mass;
  return {scale * (s.dx / s.psi).imag(), scale * (s.dy / s.psi).imag()};
}

Trajectory integrate(double x0, double y0, double t0, double t1, double dt, const SlitState& state,
                     const IntegrationOptions& opts) {
  state.validate();
  if (!(dt > 0.0)) throw DomainError("integrate: dt must be > 0");
  if (!(t0 >= 0.0) || !(t1 >= 0.0)) throw DomainError("integrate: the state is defined for t >= 0 only");

  std::vector<Sample> path{{t0, x0, y0}};
  const bool backward = t1 < t0;
  auto finish = [&](std::vector<Sample>&& samples) {
    Trajectory tr;
    tr.samples = std::move(samples);
    if (backward) std::reverse(tr.samples.begin(), tr.samples.end());
    for (const Sample& s : tr.samples) {
      if (s.t == 0.0) {
        tr.which_way = s.x > 0.0 ? Slit::A : (s.x < 0.0 ? Slit::B : Slit::undecided);
      }
    }
    return tr;
  };

  try {
    velocity(state, x0, y0, t0);
    integrate_segment(path, t1, dt, state, opts);
  } catch (const NodeError& err) {
    throw TrajectoryNodeError(err.what(), finish(std::move(path)));
  }
  return finish(std::move(path));
}

namespace {

// Label of the path through (x, y, t); nullopt when it lands exactly on x = 0.
std::optional<Slit> trace_label(double x, double y, double t, const SlitState& state, double dt) {
  Trajectory tr;
  try {
    tr = integrate(x, y, t, 0.0, dt, state);
  } catch (const TrajectoryNodeError& err) {
    throw NodeError(std::string("which_way undecided: ") + err.what());
  }
  if (tr.which_way == Slit::undecided) return std::nullopt;
  return tr.which_way;
}

}  // namespace

Slit which_way(double x, double y, double t, const SlitState& state, double dt) {
  const auto label = trace_label(x, y, t, state, dt);
  if (!label) throw NodeError("which_way undecided: path ends on x = 0");
  return *label;
}

double separatrix(double t, double y, double x_lo, double x_hi, double tol, const SlitState& state) {
  if (!(tol > 0.0)) throw DomainError("separatrix: tol must be > 0");
  if (x_hi < x_lo) std::swap(x_lo, x_hi);
  const Slit lo = which_way(x_lo, y, t, state);
  const Slit hi = which_way(x_hi, y, t, state);
  if (lo == hi) throw BracketError(std::string("separatrix: both ends labelled ") + to_string(lo));
  while (x_hi - x_lo >= tol) {
    const double mid = 0.5 * (x_lo + x_hi);
    const auto label = trace_label(mid, y, t, state, 0.05);
    if (!label) return mid;  // the path through mid is the dividing one
    if (*label == lo) {
      x_lo = mid;
    } else {
      x_hi = mid;
    }
  }
  return 0.5 * (x_lo + x_hi);
}

std::vector<Point2> sample_initial_positions(const SlitState& state, std::size_t count, std::uint64_t seed) {
  state.validate();
  struct Component {
    GaussianPacket packet;
    cplx weight;
  };
  std::vector<Component> comps;
  for (const auto& p : state.psi_A) comps.push_back({p, state.weight_A});
  for (const auto& p : state.psi_B) comps.push_back({p, state.weight_B});

  std::vector<double> mass;
  for (const auto& c : comps) {
    const double ax = c.packet.x_axis().A.real();
    const double ay = c.packet.y_axis().A.real();
    const double peak = std::abs(c.weight) * c.packet.peak_amplitude();
    mass.push_back(peak * peak * std::numbers::pi / (2.0 * std::sqrt(ax * ay)));
  }

  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(mass.begin(), mass.end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double n = static_cast<double>(comps.size());

  std::vector<Point2> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto& c = comps[pick(rng)];
    const Point2 mu = c.packet.center();
    std::normal_distribution<double> gx(mu.x, std::sqrt(1.0 / (4.0 * c.packet.x_axis().A.real())));
    std::normal_distribution<double> gy(mu.y, std::sqrt(1.0 / (4.0 * c.packet.y_axis().A.real())));
    const double x = gx(rng);
    const double y = gy(rng);
    cplx total{};
    double bound = 0.0;
    for (const auto& d : comps) {
      const cplx v = d.weight * d.packet.value(x, y);
      total += v;
      bound += std::norm(v);
    }
    if (unit(rng) * n * bound <= std::norm(total)) out.push_back({x, y});
  }
  return out;
}

std::vector<EnsembleMember> forward_ensemble(const SlitState& state, std::size_t count, std::uint64_t seed,
                                             double t1, double dt) {
  const auto starts = sample_initial_positions(state, count, seed);
  std::vector<EnsembleMember> out(count);
  parallel_for(count, [&](std::size_t i) {
    const Point2 s = starts[i];
    try {
      const Trajectory tr = integrate(s.x, s.y, 0.0, t1, dt, state);
      const Sample& e = tr.samples.back();
      out[i] = {s, {e.x, e.y}, tr.which_way};
    } catch (const NodeError&) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      out[i] = {s, {nan, nan}, Slit::undecided};
    }
  });
  return out;
}

Slit nearest_passage_label(const std::vector<EnsembleMember>& ensemble, double x, double y, double band) {
  double best = std::numeric_limits<double>::infinity();
  Slit label = Slit::undecided;
  for (const auto& m : ensemble) {
    if (m.which_way == Slit::undecided || !(std::abs(m.end.y - y) <= band)) continue;
    const double d = std::abs(m.end.x - x);
    if (d < best) {
      best = d;
      label = m.which_way;
    }
  }
  return label;
}

}  // namespace weylab::bohmian
