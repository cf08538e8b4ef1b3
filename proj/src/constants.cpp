#include "weylab/constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "weylab/errors.hpp"

namespace weylab {

PhysicalConstants PhysicalConstants::cgs() noexcept {
  // h is exact; the tabulated hbar (1.054571817e-27) is h/2pi rounded to 10 digits.
  constexpr double h = 6.62607015e-27;
  return {
      .c = 2.99792458e10,
      .hbar = h / (2.0 * std::numbers::pi),
      .h = h,
      .G = 6.67430e-8,
      // 1.602176634e-19 C * 2.99792458e9 esu/C
      .e = 4.803204712570263e-10,
      .m_e = 9.1093837015e-28,
  };
}

PhysicalConstants PhysicalConstants::natural() noexcept {
  return {.c = 1.0, .hbar = 1.0, .h = 2.0 * std::numbers::pi, .G = 1.0, .e = 1.0, .m_e = 1.0};
}

void PhysicalConstants::validate() const {
  const double fields[] = {c, hbar, h, G, e, m_e};
  for (double f : fields) {
    if (!(f > 0.0) || !std::isfinite(f)) {
      throw DomainError("physical constants must be finite and strictly positive");
    }
  }
  if (std::abs(h - 2.0 * std::numbers::pi * hbar) > 1e-12 * h) {
    throw DomainError("h and 2*pi*hbar disagree beyond 1e-12 relative");
  }
}

PhysicalConstants constants_for(UnitMode mode) noexcept {
  return mode == UnitMode::cgs ? PhysicalConstants::cgs() : PhysicalConstants::natural();
}

double Particle::e_imag(const PhysicalConstants& k) const { return imaginary_coupling(mass, k); }

double alpha_s(const PhysicalConstants& k) { return k.e * k.m_e * std::sqrt(k.G) / (k.c * k.hbar); }

double alpha(const PhysicalConstants& k) { return k.e * k.e / (k.hbar * k.c); }

double alpha_g(const PhysicalConstants& k) { return k.G * k.m_e * k.m_e / (k.hbar * k.c); }

double imaginary_coupling(double mass, const PhysicalConstants& k) {
  if (!(mass >= 0.0) || !std::isfinite(mass)) {
    throw DomainError("imaginary_coupling: mass must be finite and >= 0, got " + std::to_string(mass));
  }
  return mass * std::sqrt(k.G);
}

double flux_for_scale(double mass, double scale, const PhysicalConstants& k) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw DomainError("flux_for_scale: mass must be > 0 (zero mass needs infinite flux)");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("flux_for_scale: scale must be > 0");
  }
  return k.hbar * k.c * std::abs(std::log(scale)) / (mass * std::sqrt(k.G));
}

double scale_factor(double e_imag, double line_integral, const PhysicalConstants& k) {
  return std::exp(-e_imag * line_integral / (k.hbar * k.c));
}

double scale_factor(const Particle& p, double line_integral, const PhysicalConstants& k) {
  return scale_factor(p.e_imag(k), line_integral, k);
}

double flux_quantum(const PhysicalConstants& k) { return k.h * k.c / k.e; }

}  // namespace weylab
