#pragma once

#include <numbers>

namespace weylab {

/// Fundamental constants in a consistent unit system.
///
/// `cgs()` is CODATA 2018 in CGS-Gaussian units (charge and flux in esu).
/// `natural()` sets c = hbar = G = 1, the system used for the double-slit
/// illustration; e and m_e are 1 there and carry no physical meaning.
struct PhysicalConstants {
  double c;     // cm/s
  double hbar;  // erg s
  double h;     // erg s
  double G;     // cm^3 g^-1 s^-2
  double e;     // esu
  double m_e;   // g

  static PhysicalConstants cgs() noexcept;
  static PhysicalConstants natural() noexcept;

  // Throws DomainError when a field is non-positive or h != 2 pi hbar.
  void validate() const;
};

enum class UnitMode { cgs, natural };

PhysicalConstants constants_for(UnitMode mode) noexcept;

/// A quantum particle. The imaginary coupling e_I = mass * sqrt(G) is
/// always derived, never stored.
struct Particle {
  double mass = 0.0;    // g
  double charge = 0.0;  // esu

  double e_imag(const PhysicalConstants& k) const;
};

/// Complex gauge coupling e_C = e + i e_I as used by the dressing and the
/// oscillator. Built from a Particle, or set directly to switch e_I off.
struct GaugeCoupling {
  double e = 0.0;
  double e_imag = 0.0;

  static GaugeCoupling of(const Particle& p, const PhysicalConstants& k) {
    return {p.charge, p.e_imag(k)};
  }
};

// Scale fine-structure constant e m_e sqrt(G) / (c hbar).
double alpha_s(const PhysicalConstants& k);

// e^2 / (hbar c)
double alpha(const PhysicalConstants& k);

// G m_e^2 / (hbar c)
double alpha_g(const PhysicalConstants& k);

// mass * sqrt(G). Throws DomainError for negative or non-finite mass.
double imaginary_coupling(double mass, const PhysicalConstants& k);

/// Loop flux producing an amplitude scale change by `scale`:
/// hbar c |ln scale| / (mass sqrt(G)). Returns the magnitude; a positive
/// line integral of that size suppresses by 1/max(scale, 1/scale).
double flux_for_scale(double mass, double scale, const PhysicalConstants& k);

// exp(-e_I * line_integral / (hbar c)), the trajectory scale factor.
double scale_factor(const Particle& p, double line_integral, const PhysicalConstants& k);
double scale_factor(double e_imag, double line_integral, const PhysicalConstants& k);

// h c / e
double flux_quantum(const PhysicalConstants& k);

}  // namespace weylab
