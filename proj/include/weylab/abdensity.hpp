#pragma once

#include <optional>
#include <span>
#include <vector>

#include "weylab/constants.hpp"
#include "weylab/flux.hpp"
#include "weylab/wavepacket.hpp"

namespace weylab::ab {

/// Loop exponents theta = e Phi_L/(hbar c) (phase) and
/// sigma = e_I Phi_L/(hbar c) (scale). Everything observable depends on
/// the flux only through these two numbers.
struct LoopExponents {
  double theta = 0.0;
  double sigma = 0.0;
};

LoopExponents loop_exponents(const GaugeCoupling& g, const FluxConfig& flux, const PhysicalConstants& k);

/// Gauge-invariant guidance state: branch B carries exp(i theta - sigma)
/// relative to branch A (gauge I_A = 0).
SlitState guiding_state(const SlitState& state, const GaugeCoupling& g, const FluxConfig& flux,
                        const PhysicalConstants& k);

/// Partial wavepackets dressed with their path factors
///   psi'_X = psi_X exp(i (e/hbar c) I_X) exp(-(e_I/hbar c) I_X).
class DressedState {
 public:
  DressedState(SlitState state, GaugeCoupling g, FluxConfig flux, PhysicalConstants k);

  // (psi'_A + psi'_B)/sqrt(2) summed directly.
  cplx evaluate(double x, double y, double t) const;
  // Loop-flux factorization pulling out the path-A factor.
  cplx evaluate_factored_a(double x, double y, double t) const;
  // Loop-flux factorization pulling out the path-B factor.
  cplx evaluate_factored_b(double x, double y, double t) const;

  // Scale factor along the path through `slit` to (x, y, t).
  double scale(Slit slit, double x, double y, double t) const;

 private:
  cplx path_factor(double line_integral) const;

  SlitState state_;
  GaugeCoupling g_;
  FluxConfig flux_;
  PhysicalConstants k_;
};

DressedState dress(const SlitState& state, const GaugeCoupling& g, const FluxConfig& flux,
                   const PhysicalConstants& k);

/// The two case expressions of the which-way density:
///   a = |psi_A + psi_B e^{i theta} e^{-sigma}|^2 / 2
///   b = |psi_A e^{-i theta} e^{+sigma} + psi_B|^2 / 2
struct BranchDensities {
  double a;
  double b;
};

BranchDensities branch_densities(double x, double y, double t, const SlitState& state, const LoopExponents& ex);

struct PilotDensity {
  double value;
  Slit which_way;  // undecided only at nodes or when sigma == 0 made the label irrelevant
};

/// Trajectory-dependent equilibrium density: expression a if the trajectory
/// through (x, y, t) crossed slit A, b if it crossed B. Unnormalized.
PilotDensity density_pilot(double x, double y, double t, const SlitState& state, const GaugeCoupling& g,
                           const FluxConfig& flux, const PhysicalConstants& k);

/// |psi_A + psi_B e^{i theta}|^2 / 2, charge-only phases.
double density_orthodox(double x, double y, double t, const SlitState& state, double charge,
                        const FluxConfig& flux, const PhysicalConstants& k);

/// p_A * a + (1 - p_A) * b, the trajectory-averaged comparison density.
double density_averaged(double x, double y, double t, const SlitState& state, const GaugeCoupling& g,
                        const FluxConfig& flux, const PhysicalConstants& k, double p_a);

double separatrix(double t, double y, double x_lo, double x_hi, double tol, const SlitState& state,
                  const GaugeCoupling& g, const FluxConfig& flux, const PhysicalConstants& k);

struct ScreenRow {
  double x;
  double orthodox;
  double pilot;  // NaN when ambiguous
  Slit which_way;
  bool ambiguous;
  double averaged;
};

struct ScreenProfile {
  std::vector<ScreenRow> rows;
  std::optional<double> separatrix;
  int label_changes = 0;  // A/B switches along the scan (undecided points skipped)
};

/// Orthodox, pilot and averaged densities along the screen line (t, y).
/// Points within tol of the separatrix are flagged ambiguous when sigma != 0.
ScreenProfile screen_profile(double t, double y, std::span<const double> xs, const SlitState& state,
                             const GaugeCoupling& g, const FluxConfig& flux, const PhysicalConstants& k,
                             double p_a = 0.5, double tol = 1e-6);

}  // namespace weylab::ab
