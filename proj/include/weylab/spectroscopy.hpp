#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "weylab/oscillator.hpp"

namespace weylab::spec {

using osc::cplx;
using osc::Omega3;
using osc::Quanta;
using osc::Vec3;

/// Monochromatic plane wave A = eps A0 cos((w/c) k.x - w t).
struct DriveField {
  double amplitude = 0.0;  // A0
  double omega = 1.0;      // rad/s
  Vec3 k_hat{0.0, 0.0, 1.0};
  Vec3 polarization{1.0, 0.0, 0.0};

  // Unit vectors, eps.k = 0 to 1e-12; DomainError otherwise.
  void validate() const;
};

/// Oscillator the drive acts on, with the constants needed to build its
/// eigenfunctions and the coupling prefactor.
struct OscillatorSystem {
  Omega3 omega;
  double mass = 1.0;
  double hbar = 1.0;
  double c = 1.0;
  cplx e_complex{1.0, 0.0};
};

struct MatrixElements {
  cplx v;      // with e^{+i (w/c) k.x}
  cplx v_bar;  // with e^{-i (w/c) k.x}; not conj(v) in general
};

struct QuadratureOptions {
  double rel_tol = 1e-13;
  std::size_t max_points = std::size_t{1} << 20;
};

/// int conj(phi_n) e^{+-i (w/c) k.x} (eps.grad) phi_p d^3x, each factor by
/// trapezoid quadrature with point doubling. Throws AccuracyError when the
/// doubling does not converge.
MatrixElements matrix_element(const Quanta& n, const Quanta& p, const OscillatorSystem& sys,
                              const DriveField& drive, const QuadratureOptions& q = {});

/// int |phi_n|^2 d^3x (1 for real frequencies).
double norm_integral(const Quanta& n, const OscillatorSystem& sys, const QuadratureOptions& q = {});

/// Transition p -> n. omega_r/omega_i are (E_n - E_p)/hbar split into
/// parts, carried with their sign.
struct TransitionPair {
  Quanta p;
  Quanta n;
  double omega_r;
  double omega_i;
  cplx energy_n;
  MatrixElements elements;
};

TransitionPair make_transition(const Quanta& n, const Quanta& p, const OscillatorSystem& sys,
                               MatrixElements elements);

/// The two terms of the first-order coefficient: antiresonant (V, w^R + w)
/// and resonant (Vbar, w^R - w). Evaluated with 2 t sinhc(z t) so the
/// ratio w^I/w^R ~ 1e-21 survives in double precision.
struct C1Terms {
  cplx antiresonant;
  cplx resonant;
};

C1Terms c1_terms(double t, const TransitionPair& pair, const DriveField& drive, const OscillatorSystem& sys);

/// First-order coefficient for a perturbation acting over (-t, t).
cplx c1(double t, const TransitionPair& pair, const DriveField& drive, const OscillatorSystem& sys);

enum class Regime { ok, outside };

struct Lineshape {
  double value;
  Regime regime;
};

// Flag limits for the approximate lineshapes.
inline constexpr double kSmallTimeLimit = 0.1;  // |w^I t| above this: small-t flagged
inline constexpr double kLongTimeLimit = 1.0;   // |w^I t| below this: long-t flagged

/// |c1|^2 for small |w^I t|, case selected by the nearer resonance:
/// |e_C|^2 A0^2/(m c)^2 (sin^2(D t) + (w^I t)^2)/(D^2 + (w^I)^2) |V or Vbar|^2.
Lineshape c1_squared_small_t(double t, const TransitionPair& pair, const DriveField& drive,
                             const OscillatorSystem& sys);

/// Long-time Lorentzian: |e_C|^2 A0^2/(2 (m c)^2) cosh(2 w^I t)/(D^2 + (w^I)^2) |V or Vbar|^2.
Lineshape c1_squared_long_t(double t, const TransitionPair& pair, const DriveField& drive,
                            const OscillatorSystem& sys);

/// FWHM of the long-time line, 2 |w^I_np|.
double lorentzian_width(const TransitionPair& pair);

/// |c1|^2 e^{2 E^I_n t / hbar} int|phi_n|^2 / history_scale^2. history_scale
/// is the pre-interaction value of the trajectory scale factor.
double transition_probability(double t, const TransitionPair& pair, const DriveField& drive,
                              const OscillatorSystem& sys, double history_scale, double norm_n);

/// Truncated-basis interaction-picture system
///   c_n' = (e_C A0/2mc) sum_m (V_nm e^{i w t} + Vbar_nm e^{-i w t}) e^{(i w^R_nm - w^I_nm) t} c_m
/// over all levels with n_j <= max_quanta[j].
class ExactSystem {
 public:
  ExactSystem(const Quanta& max_quanta, const OscillatorSystem& sys, const DriveField& drive);

  const std::vector<Quanta>& basis() const { return basis_; }
  std::size_t index_of(const Quanta& n) const;

  /// Integrates from -t to t starting in basis level `initial`, with
  /// step doubling until two RK4 solutions agree to 1e-12. Throws
  /// AccuracyError when the truncation edge holds more than 1e-8 population.
  std::vector<cplx> integrate(double t, const Quanta& initial) const;

 private:
  std::vector<cplx> run(double t, std::size_t initial, std::size_t steps) const;

  std::vector<Quanta> basis_;
  Quanta max_;
  std::vector<cplx> v_;      // row-major n x m
  std::vector<cplx> v_bar_;
  std::vector<cplx> rate_;   // (i w^R_n - w^I_n), w_n = E_n / hbar
  cplx prefactor_;
  double drive_omega_;
};

std::vector<cplx> integrate_exact(double t, const Quanta& max_quanta, const Quanta& initial,
                                  const OscillatorSystem& sys, const DriveField& drive);

}  // namespace weylab::spec
