#include "weylab/abdensity.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "weylab/bohmian.hpp"
#include "weylab/errors.hpp"
#include "weylab/parallel.hpp"

namespace weylab::ab {
namespace {

constexpr cplx I{0.0, 1.0};

Slit try_which_way(double x, double y, double t, const SlitState& guide) {
  try {
    return bohmian::which_way(x, y, t, guide);
  } catch (const NodeError&) {
    return Slit::undecided;
  }
}

}  // namespace

LoopExponents loop_exponents(const GaugeCoupling& g, const FluxConfig& flux, const PhysicalConstants& k) {
  const double hc = k.hbar * k.c;
  return {g.e * flux.loop_flux() / hc, g.e_imag * flux.loop_flux() / hc};
}

SlitState guiding_state(const SlitState& state, const GaugeCoupling& g, const FluxConfig& flux,
                        const PhysicalConstants& k) {
  const LoopExponents ex = loop_exponents(g, flux, k);
  return state.with_weights(state.weight_A, state.weight_B * std::exp(cplx{-ex.sigma, ex.theta}));
}

DressedState::DressedState(SlitState state, GaugeCoupling g, FluxConfig flux, PhysicalConstants k)
    : state_(std::move(state)), g_(g), flux_(std::move(flux)), k_(k) {
  state_.validate();
}

cplx DressedState::path_factor(double line_integral) const {
  const double hc = k_.hbar * k_.c;
  return std::exp(I * (g_.e / hc) * line_integral) * std::exp(-(g_.e_imag / hc) * line_integral);
}

cplx DressedState::evaluate(double x, double y, double t) const {
  const auto br = state_.branches(x, y, t);
  const cplx a = br.a.psi * path_factor(flux_.line_integral_a(x, y, t));
  const cplx b = br.b.psi * path_factor(flux_.line_integral_b(x, y, t));
  return (a + b) / std::numbers::sqrt2;
}

cplx DressedState::evaluate_factored_a(double x, double y, double t) const {
  const auto br = state_.branches(x, y, t);
  const LoopExponents ex = loop_exponents(g_, flux_, k_);
  const cplx loop = std::exp(I * ex.theta) * std::exp(-ex.sigma);
  return (br.a.psi + br.b.psi * loop) / std::numbers::sqrt2 * path_factor(flux_.line_integral_a(x, y, t));
}

cplx DressedState::evaluate_factored_b(double x, double y, double t) const {
  const auto br = state_.branches(x, y, t);
  const LoopExponents ex = loop_exponents(g_, flux_, k_);
  const cplx loop = std::exp(-I * ex.theta) * std::exp(ex.sigma);
  return (br.a.psi * loop + br.b.psi) / std::numbers::sqrt2 * path_factor(flux_.line_integral_b(x, y, t));
}

double DressedState::scale(Slit slit, double x, double y, double t) const {
  return scale_factor(g_.e_imag, flux_.line_integral(slit, x, y, t), k_);
}

DressedState dress(const SlitState& state, const GaugeCoupling& g, const FluxConfig& flux,
                   const PhysicalConstants& k) {
  return DressedState(state, g, flux, k);
}

BranchDensities branch_densities(double x, double y, double t, const SlitState& state, const LoopExponents& ex) {
  const auto br = state.branches(x, y, t);
  const cplx phase = std::exp(I * ex.theta);
  const cplx a = br.a.psi + br.b.psi * phase * std::exp(-ex.sigma);
  const cplx b = br.a.psi * std::conj(phase) * std::exp(ex.sigma) + br.b.psi;
  return {std::norm(a) / 2.0, std::norm(b) / 2.0};
}

PilotDensity density_pilot(double x, double y, double t, const SlitState& state, const GaugeCoupling& g,
                           const FluxConfig& flux, const PhysicalConstants& k) {
  const LoopExponents ex = loop_exponents(g, flux, k);
  const BranchDensities d = branch_densities(x, y, t, state, ex);
  const SlitState guide = guiding_state(state, g, flux, k);
  try {
    const Slit label = bohmian::which_way(x, y, t, guide);
    return {label == Slit::A ? d.a : d.b, label};
  } catch (const NodeError&) {
    const double ref = guide.reference_amplitude(t) / std::numbers::sqrt2;
    const bool at_node = std::abs(guide.evaluate(x, y, t)) < bohmian::kNodeThreshold * ref;
    if (ex.sigma == 0.0 || at_node) return {d.a, Slit::undecided};
    throw;
  }
}

double density_orthodox(double x, double y, double t, const SlitState& state, double charge,
                        const FluxConfig& flux, const PhysicalConstants& k) {
  const double theta = charge * flux.loop_flux() / (k.hbar * k.c);
  const auto br = state.branches(x, y, t);
  return std::norm(br.a.psi + br.b.psi * std::exp(I * theta)) / 2.0;
}

double density_averaged(double x, double y, double t, const SlitState& state, const GaugeCoupling& g,
                        const FluxConfig& flux, const PhysicalConstants& k, double p_a) {
  if (!(p_a >= 0.0 && p_a <= 1.0)) throw DomainError("density_averaged: p_A must lie in [0, 1]");
  const BranchDensities d = branch_densities(x, y, t, state, loop_exponents(g, flux, k));
  return p_a * d.a + (1.0 - p_a) * d.b;
}

double separatrix(double t, double y, double x_lo, double x_hi, double tol, const SlitState& state,
                  const GaugeCoupling& g, const FluxConfig& flux, const PhysicalConstants& k) {
  return bohmian::separatrix(t, y, x_lo, x_hi, tol, guiding_state(state, g, flux, k));
}

ScreenProfile screen_profile(double t, double y, std::span<const double> xs, const SlitState& state,
                             const GaugeCoupling& g, const FluxConfig& flux, const PhysicalConstants& k,
                             double p_a, double tol) {
  if (!(p_a >= 0.0 && p_a <= 1.0)) throw DomainError("screen_profile: p_A must lie in [0, 1]");
  const LoopExponents ex = loop_exponents(g, flux, k);
  const SlitState guide = guiding_state(state, g, flux, k);

  ScreenProfile prof;
  prof.rows.resize(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const double x = xs[i];
    const BranchDensities d = branch_densities(x, y, t, state, ex);
    const Slit label = try_which_way(x, y, t, guide);
    double pilot = d.a;
    if (label == Slit::B) {
      pilot = d.b;
    } else if (label == Slit::undecided && ex.sigma != 0.0) {
      const double ref = guide.reference_amplitude(t) / std::numbers::sqrt2;
      if (std::abs(guide.evaluate(x, y, t)) >= bohmian::kNodeThreshold * ref) {
        pilot = std::numeric_limits<double>::quiet_NaN();
      }
    }
    prof.rows[i] = {x, density_orthodox(x, y, t, state, g.e, flux, k), pilot, label, false,
                    p_a * d.a + (1.0 - p_a) * d.b};
  });

  // label switches, skipping undecided samples
  std::optional<std::size_t> prev;
  std::optional<std::pair<double, double>> bracket;
  for (std::size_t i = 0; i < prof.rows.size(); ++i) {
    if (prof.rows[i].which_way == Slit::undecided) continue;
    if (prev && prof.rows[*prev].which_way != prof.rows[i].which_way) {
      ++prof.label_changes;
      if (!bracket) bracket = std::pair{prof.rows[*prev].x, prof.rows[i].x};
    }
    prev = i;
  }
  if (bracket) {
    prof.separatrix = bohmian::separatrix(t, y, bracket->first, bracket->second, tol, guide);
    for (auto& row : prof.rows) {
      if (ex.sigma != 0.0 && std::abs(row.x - *prof.separatrix) < tol) {
        row.ambiguous = true;
        row.pilot = std::numeric_limits<double>::quiet_NaN();
      }
    }
  }
  return prof;
}

}  // namespace weylab::ab
