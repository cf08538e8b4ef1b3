#pragma once

#include <array>
#include <complex>
#include <vector>

namespace weylab::osc {

using cplx = std::complex<double>;
using Omega3 = std::array<cplx, 3>;
using Quanta = std::array<int, 3>;
using Vec3 = std::array<double, 3>;

/// Principal root of e_C lambda^2 / m. Requires lambda > 0, Re(e_C) > 0,
/// mass > 0 (DomainError otherwise); the result has Re > 0.
cplx complex_frequency(double lambda, cplx e_complex, double mass);

/// hbar * sum_j omega_j (n_j + 1/2).
cplx eigenvalue(const Quanta& n, const Omega3& omega, double hbar);

/// One level of the complex-frequency oscillator; energy is stored exactly
/// as eigenvalue(n, omega, hbar).
struct ComplexLevel {
  Omega3 omega;
  Quanta n;
  cplx energy;

  static ComplexLevel make(const Omega3& omega, const Quanta& n, double hbar);
  double energy_real() const { return energy.real(); }
  double energy_imag() const { return energy.imag(); }
};

/// H_n(z) from H_{k+1} = 2 z H_k - 2 k H_{k-1}. Overflows double for large
/// |z| and n (|H_n| ~ (2|z|)^n).
cplx hermite(int n, cplx z);

// H_0 .. H_n at z.
std::vector<cplx> hermite_table(int n, cplx z);

/// (m omega / (pi hbar))^{1/4} / sqrt(2^n n!), principal branch; the
/// analytic continuation of the real-frequency constant.
cplx normalization(int n, cplx omega, double mass, double hbar);

struct Phi1 {
  cplx value;
  cplx derivative;
};

/// N_n exp(-m omega x^2 / 2 hbar) H_n(sqrt(m omega / hbar) x) and its x-derivative.
/// Throws DomainError when Re(omega) <= 0 (principal branch of the root breaks down).
Phi1 eigenfunction_1d(int n, cplx omega, double x, double mass, double hbar);

/// Product over the three axes.
cplx eigenfunction(const Quanta& n, const Omega3& omega, const Vec3& x, double mass, double hbar);

}  // namespace weylab::osc
