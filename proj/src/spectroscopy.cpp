#include "weylab/spectroscopy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "weylab/errors.hpp"

namespace weylab::spec {
namespace {

constexpr cplx I{0.0, 1.0};

// sinh(w)/w, series near the origin.
cplx sinhc(cplx w) {
  if (std::abs(w) < 1e-2) {
    const cplx w2 = w * w;
    return 1.0 + w2 / 6.0 * (1.0 + w2 / 20.0 * (1.0 + w2 / 42.0 * (1.0 + w2 / 72.0)));
  }
  return std::sinh(w) / w;
}

// Trapezoid rule on [-L, L] with point doubling; f decays to ~0 at the ends.
cplx integrate_line(const std::function<cplx(double)>& f, double half_width, const QuadratureOptions& q) {
  std::size_t intervals = 128;
  double h = 2.0 * half_width / static_cast<double>(intervals);
  cplx sum{};
  double abs_sum = 0.0;
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double w = (i == 0 || i == intervals) ? 0.5 : 1.0;
    const cplx v = f(-half_width + static_cast<double>(i) * h);
    sum += w * v;
    abs_sum += w * std::abs(v);
  }
  cplx prev = sum * h;
  while (intervals < q.max_points) {
    intervals *= 2;
    h *= 0.5;
    for (std::size_t i = 1; i < intervals; i += 2) {
      const cplx v = f(-half_width + static_cast<double>(i) * h);
      sum += v;
      abs_sum += std::abs(v);
    }
    const cplx cur = sum * h;
    if (std::abs(cur - prev) <= q.rel_tol * std::max(std::abs(cur), abs_sum * h)) return cur;
    prev = cur;
  }
  throw AccuracyError("matrix_element: quadrature did not converge");
}

double support_half_width(int n, int p, cplx omega, double mass, double hbar) {
  const double ell = std::sqrt(hbar / (mass * omega.real()));
  return ell * (std::sqrt(2.0 * std::max(n, p) + 1.0) + 7.0);
}

struct AxisIntegrals {
  cplx overlap;     // int conj(phi_n) e^{i kappa x} phi_p
  cplx derivative;  // int conj(phi_n) e^{i kappa x} phi_p'
};

AxisIntegrals axis_integrals(int n, int p, cplx omega, double kappa, const OscillatorSystem& sys,
                             const QuadratureOptions& q, bool need_derivative) {
  const double half = support_half_width(n, p, omega, sys.mass, sys.hbar);
  AxisIntegrals out{};
  out.overlap = integrate_line(
      [&](double x) {
        const cplx a = std::conj(osc::eigenfunction_1d(n, omega, x, sys.mass, sys.hbar).value);
        return a * std::exp(I * kappa * x) * osc::eigenfunction_1d(p, omega, x, sys.mass, sys.hbar).value;
      },
      half, q);
  if (need_derivative) {
    out.derivative = integrate_line(
        [&](double x) {
          const cplx a = std::conj(osc::eigenfunction_1d(n, omega, x, sys.mass, sys.hbar).value);
          return a * std::exp(I * kappa * x) * osc::eigenfunction_1d(p, omega, x, sys.mass, sys.hbar).derivative;
        },
        half, q);
  }
  return out;
}

// sum_j eps_j D_j prod_{l != j} O_l with kappa = sign (w/c) k_hat.
cplx plane_wave_element(const Quanta& n, const Quanta& p, const OscillatorSystem& sys, const DriveField& drive,
                        double sign, const QuadratureOptions& q) {
  std::array<AxisIntegrals, 3> ax{};
  for (int j = 0; j < 3; ++j) {
    const double kappa = sign * drive.omega / sys.c * drive.k_hat[j];
    ax[j] = axis_integrals(n[j], p[j], sys.omega[j], kappa, sys, q, drive.polarization[j] != 0.0);
  }
  cplx total{};
  for (int j = 0; j < 3; ++j) {
    if (drive.polarization[j] == 0.0) continue;
    cplx term = drive.polarization[j] * ax[j].derivative;
    for (int l = 0; l < 3; ++l) {
      if (l != j) term *= ax[l].overlap;
    }
    total += term;
  }
  return total;
}

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

// Picks the case nearer resonance: true for the antiresonant (w^R + w) side.
bool antiresonant_side(const TransitionPair& pair, const DriveField& drive) {
  return std::abs(pair.omega_r + drive.omega) < std::abs(pair.omega_r - drive.omega);
}

}  // namespace

void DriveField::validate() const {
  if (std::abs(norm3(k_hat) - 1.0) > 1e-12 || std::abs(norm3(polarization) - 1.0) > 1e-12) {
    throw DomainError("DriveField: k_hat and polarization must be unit vectors");
  }
  const double dot = k_hat[0] * polarization[0] + k_hat[1] * polarization[1] + k_hat[2] * polarization[2];
  if (std::abs(dot) > 1e-12) throw DomainError("DriveField: polarization must be transverse to k_hat");
  if (!std::isfinite(amplitude) || !std::isfinite(omega)) throw DomainError("DriveField: non-finite parameter");
}

MatrixElements matrix_element(const Quanta& n, const Quanta& p, const OscillatorSystem& sys,
                              const DriveField& drive, const QuadratureOptions& q) {
  drive.validate();
  return {plane_wave_element(n, p, sys, drive, +1.0, q), plane_wave_element(n, p, sys, drive, -1.0, q)};
}

double norm_integral(const Quanta& n, const OscillatorSystem& sys, const QuadratureOptions& q) {
  double total = 1.0;
  for (int j = 0; j < 3; ++j) {
    const double half = support_half_width(n[j], n[j], sys.omega[j], sys.mass, sys.hbar);
    total *= integrate_line(
                 [&](double x) {
                   return cplx{std::norm(osc::eigenfunction_1d(n[j], sys.omega[j], x, sys.mass, sys.hbar).value)};
                 },
                 half, q)
                 .real();
  }
  return total;
}

TransitionPair make_transition(const Quanta& n, const Quanta& p, const OscillatorSystem& sys,
                               MatrixElements elements) {
  const cplx en = osc::eigenvalue(n, sys.omega, sys.hbar);
  const cplx ep = osc::eigenvalue(p, sys.omega, sys.hbar);
  const cplx w = (en - ep) / sys.hbar;
  return {p, n, w.real(), w.imag(), en, elements};
}

C1Terms c1_terms(double t, const TransitionPair& pair, const DriveField& drive, const OscillatorSystem& sys) {
  const cplx pref = sys.e_complex * drive.amplitude / (2.0 * sys.mass * sys.c);
  const cplx z_plus{-pair.omega_i, pair.omega_r + drive.omega};
  const cplx z_minus{-pair.omega_i, pair.omega_r - drive.omega};
  return {pref * pair.elements.v * 2.0 * t * sinhc(z_plus * t),
          pref * pair.elements.v_bar * 2.0 * t * sinhc(z_minus * t)};
}

cplx c1(double t, const TransitionPair& pair, const DriveField& drive, const OscillatorSystem& sys) {
  const C1Terms terms = c1_terms(t, pair, drive, sys);
  return terms.antiresonant + terms.resonant;
}

Lineshape c1_squared_small_t(double t, const TransitionPair& pair, const DriveField& drive,
                             const OscillatorSystem& sys) {
  const bool anti = antiresonant_side(pair, drive);
  const double detuning = anti ? pair.omega_r + drive.omega : pair.omega_r - drive.omega;
  const double elem = std::norm(anti ? pair.elements.v : pair.elements.v_bar);
  const double pref = std::norm(sys.e_complex) * drive.amplitude * drive.amplitude / std::pow(sys.mass * sys.c, 2);
  const double wi = pair.omega_i;
  const double den = detuning * detuning + wi * wi;
  const double s = std::sin(detuning * t);
  const double shape = den == 0.0 ? t * t : (s * s + (wi * t) * (wi * t)) / den;
  return {pref * shape * elem, std::abs(wi * t) > kSmallTimeLimit ? Regime::outside : Regime::ok};
}

Lineshape c1_squared_long_t(double t, const TransitionPair& pair, const DriveField& drive,
                            const OscillatorSystem& sys) {
  const bool anti = antiresonant_side(pair, drive);
  const double detuning = anti ? pair.omega_r + drive.omega : pair.omega_r - drive.omega;
  const double elem = std::norm(anti ? pair.elements.v : pair.elements.v_bar);
  const double pref =
      std::norm(sys.e_complex) * drive.amplitude * drive.amplitude / (2.0 * std::pow(sys.mass * sys.c, 2));
  const double wi = pair.omega_i;
  const double value = pref * std::cosh(2.0 * wi * t) / (detuning * detuning + wi * wi) * elem;
  return {value, std::abs(wi * t) < kLongTimeLimit ? Regime::outside : Regime::ok};
}

double lorentzian_width(const TransitionPair& pair) { return 2.0 * std::abs(pair.omega_i); }

double transition_probability(double t, const TransitionPair& pair, const DriveField& drive,
                              const OscillatorSystem& sys, double history_scale, double norm_n) {
  if (!(history_scale > 0.0)) throw DomainError("transition_probability: history_scale must be > 0");
  const double growth = std::exp(2.0 * pair.energy_n.imag() * t / sys.hbar);
  return std::norm(c1(t, pair, drive, sys)) * growth * norm_n / (history_scale * history_scale);
}

ExactSystem::ExactSystem(const Quanta& max_quanta, const OscillatorSystem& sys, const DriveField& drive)
    : max_(max_quanta),
      prefactor_(sys.e_complex * drive.amplitude / (2.0 * sys.mass * sys.c)),
      drive_omega_(drive.omega) {
  drive.validate();
  for (int j = 0; j < 3; ++j) {
    if (max_quanta[j] < 0) throw DomainError("ExactSystem: truncation must be >= 0");
  }
  for (int a = 0; a <= max_quanta[0]; ++a) {
    for (int b = 0; b <= max_quanta[1]; ++b) {
      for (int c = 0; c <= max_quanta[2]; ++c) basis_.push_back({a, b, c});
    }
  }
  const std::size_t n = basis_.size();
  v_.resize(n * n);
  v_bar_.resize(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    rate_.push_back(I * osc::eigenvalue(basis_[r], sys.omega, sys.hbar) / sys.hbar);
    for (std::size_t m = 0; m < n; ++m) {
      const MatrixElements me = matrix_element(basis_[r], basis_[m], sys, drive);
      v_[r * n + m] = me.v;
      v_bar_[r * n + m] = me.v_bar;
    }
  }
}

std::size_t ExactSystem::index_of(const Quanta& q) const {
  const auto it = std::find(basis_.begin(), basis_.end(), q);
  if (it == basis_.end()) throw DomainError("ExactSystem: level outside the truncated basis");
  return static_cast<std::size_t>(it - basis_.begin());
}

std::vector<cplx> ExactSystem::run(double t, std::size_t initial, std::size_t steps) const {
  const std::size_t n = basis_.size();
  std::vector<cplx> c(n, 0.0);
  c[initial] = 1.0;
  std::vector<cplx> u(n);
  auto rhs = [&](double time, const std::vector<cplx>& in, std::vector<cplx>& out) {
    const cplx up = std::exp(I * drive_omega_ * time);
    const cplx down = std::conj(up);
    for (std::size_t m = 0; m < n; ++m) u[m] = std::exp(-rate_[m] * time) * in[m];
    for (std::size_t r = 0; r < n; ++r) {
      cplx acc{};
      const cplx* vr = &v_[r * n];
      const cplx* vb = &v_bar_[r * n];
      for (std::size_t m = 0; m < n; ++m) acc += (vr[m] * up + vb[m] * down) * u[m];
      out[r] = prefactor_ * std::exp(rate_[r] * time) * acc;
    }
  };
  std::vector<cplx> k1(n), k2(n), k3(n), k4(n), tmp(n);
  const double h = 2.0 * t / static_cast<double>(steps);
  for (std::size_t s = 0; s < steps; ++s) {
    const double time = -t + static_cast<double>(s) * h;
    rhs(time, c, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = c[i] + 0.5 * h * k1[i];
    rhs(time + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = c[i] + 0.5 * h * k2[i];
    rhs(time + 0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = c[i] + h * k3[i];
    rhs(time + h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) c[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return c;
}

std::vector<cplx> ExactSystem::integrate(double t, const Quanta& initial) const {
  if (!(t > 0.0)) throw DomainError("integrate_exact: t must be > 0");
  const std::size_t start = index_of(initial);
  double spread = std::abs(drive_omega_);
  for (const cplx& r : rate_) spread = std::max(spread, std::abs(r.imag() - rate_[start].imag()) + std::abs(drive_omega_));
  auto steps = static_cast<std::size_t>(std::ceil(2.0 * t * spread / 0.02)) + 16;
  std::vector<cplx> coarse = run(t, start, steps);
  for (int attempt = 0; attempt < 8; ++attempt) {
    steps *= 2;
    std::vector<cplx> fine = run(t, start, steps);
    double diff = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i) diff = std::max(diff, std::abs(fine[i] - coarse[i]));
    if (diff <= 1e-12) {
      double tail = 0.0;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        for (int j = 0; j < 3; ++j) {
          if (max_[j] > 0 && basis_[i][j] == max_[j]) {
            tail += std::norm(fine[i]);
            break;
          }
        }
      }
      if (tail > 1e-8) {
        std::ostringstream msg;
        msg << "integrate_exact: truncation edge population " << tail << " exceeds 1e-8";
        throw AccuracyError(msg.str());
      }
      return fine;
    }
    coarse = std::move(fine);
  }
  throw AccuracyError("integrate_exact: RK4 step doubling did not converge");
}

std::vector<cplx> integrate_exact(double t, const Quanta& max_quanta, const Quanta& initial,
                                  const OscillatorSystem& sys, const DriveField& drive) {
  return ExactSystem(max_quanta, sys, drive).integrate(t, initial);
}

}  // namespace weylab::spec
