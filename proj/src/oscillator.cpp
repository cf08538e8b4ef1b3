#include "weylab/oscillator.hpp"

#include <cmath>
#include <numbers>

#include "weylab/errors.hpp"

namespace weylab::osc {
namespace {

void require_quanta(int n) {
  if (n < 0) throw DomainError("oscillator: quantum numbers must be >= 0");
}

void require_frequency(cplx omega) {
  if (!(omega.real() > 0.0)) throw DomainError("oscillator: Re(omega) must be > 0 (branch cut of the root)");
}

}  // namespace

cplx complex_frequency(double lambda, cplx e_complex, double mass) {
  if (!(lambda > 0.0)) throw DomainError("complex_frequency: lambda must be > 0");
  if (!(e_complex.real() > 0.0)) throw DomainError("complex_frequency: Re(e_C) must be > 0");
  if (!(mass > 0.0)) throw DomainError("complex_frequency: mass must be > 0");
  return std::sqrt(e_complex * (lambda * lambda / mass));
}

cplx eigenvalue(const Quanta& n, const Omega3& omega, double hbar) {
  cplx sum{};
  for (int j = 0; j < 3; ++j) {
    require_quanta(n[j]);
    sum += omega[j] * (n[j] + 0.5);
  }
  return hbar * sum;
}

ComplexLevel ComplexLevel::make(const Omega3& omega, const Quanta& n, double hbar) {
  for (const cplx& w : omega) require_frequency(w);
  return {omega, n, eigenvalue(n, omega, hbar)};
}

cplx hermite(int n, cplx z) {
  require_quanta(n);
  if (n == 0) return 1.0;
  cplx prev = 1.0;
  cplx cur = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const cplx next = 2.0 * z * cur - 2.0 * static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<cplx> hermite_table(int n, cplx z) {
  require_quanta(n);
  std::vector<cplx> h(static_cast<std::size_t>(n) + 1);
  h[0] = 1.0;
  if (n >= 1) h[1] = 2.0 * z;
  for (int k = 1; k < n; ++k) h[k + 1] = 2.0 * z * h[k] - 2.0 * static_cast<double>(k) * h[k - 1];
  return h;
}

cplx normalization(int n, cplx omega, double mass, double hbar) {
  require_quanta(n);
  require_frequency(omega);
  const cplx base = std::pow(mass * omega / (std::numbers::pi * hbar), 0.25);
  return base * std::exp(-0.5 * (n * std::numbers::ln2 + std::lgamma(n + 1.0)));
}

Phi1 eigenfunction_1d(int n, cplx omega, double x, double mass, double hbar) {
  require_quanta(n);
  require_frequency(omega);
  const cplx scale = std::sqrt(mass * omega / hbar);
  const cplx xi = scale * x;
  const auto h = hermite_table(n, xi);
  const cplx gauss = normalization(n, omega, mass, hbar) * std::exp(-0.5 * xi * xi);
  const cplx dh = n > 0 ? 2.0 * static_cast<double>(n) * h[n - 1] : cplx{};
  return {gauss * h[n], scale * gauss * (dh - xi * h[n])};
}

cplx eigenfunction(const Quanta& n, const Omega3& omega, const Vec3& x, double mass, double hbar) {
  cplx v = 1.0;
  for (int j = 0; j < 3; ++j) v *= eigenfunction_1d(n[j], omega[j], x[j], mass, hbar).value;
  return v;
}

}  // namespace weylab::osc
