#include "weylab/wavepacket.hpp"

#include <cmath>
#include <numbers>

#include "weylab/errors.hpp"

namespace weylab {
namespace {

constexpr cplx I{0.0, 1.0};

GaussianPacket::Axis evolve_axis(const GaussianPacket::Axis& ax, double t, const Kinematics& kin,
                                 cplx& log_amp) {
  const cplx tau = 1.0 + 2.0 * I * ax.A * kin.hbar * t / kin.mass;
  GaussianPacket::Axis out{ax.origin, ax.A / tau, ax.B / tau};
  log_amp += I * kin.hbar * t * ax.B * ax.B / (2.0 * kin.mass * tau) - 0.5 * std::log(tau);
  return out;
}

// max over real u of Re(-A u^2 + B u), and its argmax.
std::pair<double, double> axis_peak(const GaussianPacket::Axis& ax) {
  const double u = ax.B.real() / (2.0 * ax.A.real());
  return {u, -ax.A.real() * u * u + ax.B.real() * u};
}

}  // namespace

GaussianPacket GaussianPacket::make(double x0, double y0, double a, double kx, double ky, cplx amplitude) {
  if (!(a > 0.0)) throw DomainError("GaussianPacket: width parameter must be > 0");
  if (amplitude == 0.0) throw DomainError("GaussianPacket: amplitude must be nonzero");
  return GaussianPacket(Axis{x0, a, I * kx}, Axis{y0, a, I * ky}, std::log(amplitude));
}

GaussianPacket::GaussianPacket(Axis x, Axis y, cplx log_amplitude)
    : x_(x), y_(y), log_amp_(log_amplitude) {
  if (!(x_.A.real() > 0.0) || !(y_.A.real() > 0.0)) {
    throw DomainError("GaussianPacket: Re(A) must be > 0 on both axes");
  }
}

cplx GaussianPacket::value(double x, double y) const {
  const double u = x - x_.origin;
  const double v = y - y_.origin;
  return std::exp(log_amp_ - x_.A * u * u + x_.B * u - y_.A * v * v + y_.B * v);
}

PsiSample GaussianPacket::sample(double x, double y) const {
  const double u = x - x_.origin;
  const double v = y - y_.origin;
  const cplx psi = std::exp(log_amp_ - x_.A * u * u + x_.B * u - y_.A * v * v + y_.B * v);
  return {psi, psi * (-2.0 * x_.A * u + x_.B), psi * (-2.0 * y_.A * v + y_.B)};
}

Point2 GaussianPacket::center() const {
  return {x_.origin + axis_peak(x_).first, y_.origin + axis_peak(y_).first};
}

double GaussianPacket::peak_amplitude() const {
  return std::exp(log_amp_.real() + axis_peak(x_).second + axis_peak(y_).second);
}

GaussianPacket evolve_gaussian(const GaussianPacket& p, double t, const Kinematics& kin) {
  if (!(t >= 0.0)) throw DomainError("evolve_gaussian: t must be >= 0");
  if (!(kin.mass > 0.0) || !(kin.hbar > 0.0)) throw DomainError("evolve_gaussian: mass and hbar must be > 0");
  if (t == 0.0) return p;
  cplx log_amp = p.log_amplitude();
  const auto ax = evolve_axis(p.x_axis(), t, kin, log_amp);
  const auto ay = evolve_axis(p.y_axis(), t, kin, log_amp);
  return GaussianPacket(ax, ay, log_amp);
}

void SlitState::validate() const {
  if (psi_A.empty() || psi_B.empty()) throw DomainError("SlitState: both branches must be non-empty");
  if (!(kin.mass > 0.0) || !(kin.hbar > 0.0)) throw DomainError("SlitState: mass and hbar must be > 0");
}

SlitState::Branches SlitState::branches(double x, double y, double t) const {
  Branches out{};
  for (const auto& p : psi_A) {
    const PsiSample s = evolve_gaussian(p, t, kin).sample(x, y);
    out.a.psi += s.psi;
    out.a.dx += s.dx;
    out.a.dy += s.dy;
  }
  for (const auto& p : psi_B) {
    const PsiSample s = evolve_gaussian(p, t, kin).sample(x, y);
    out.b.psi += s.psi;
    out.b.dx += s.dx;
    out.b.dy += s.dy;
  }
  return out;
}

cplx SlitState::evaluate(double x, double y, double t) const { return sample(x, y, t).psi; }

PsiSample SlitState::sample(double x, double y, double t) const {
  const Branches br = branches(x, y, t);
  const double r = std::numbers::sqrt2 / 2.0;
  return {r * (weight_A * br.a.psi + weight_B * br.b.psi), r * (weight_A * br.a.dx + weight_B * br.b.dx),
          r * (weight_A * br.a.dy + weight_B * br.b.dy)};
}

double SlitState::reference_amplitude(double t) const {
  double sum = 0.0;
  for (const auto& p : psi_A) sum += std::abs(weight_A) * evolve_gaussian(p, t, kin).peak_amplitude();
  for (const auto& p : psi_B) sum += std::abs(weight_B) * evolve_gaussian(p, t, kin).peak_amplitude();
  return sum;
}

SlitState SlitState::with_weights(cplx w_a, cplx w_b) const {
  SlitState s = *this;
  s.weight_A = w_a;
  s.weight_B = w_b;
  return s;
}

SlitState double_slit_state() {
  const cplx amp = std::numbers::sqrt2 * 8.0 / std::numbers::pi;
  SlitState s;
  s.psi_A = {GaussianPacket::make(1.5, 0.0, 8.0, 0.0, 5.0, amp)};
  s.psi_B = {GaussianPacket::make(-1.5, 0.0, 8.0, 0.0, 5.0, amp)};
  s.kin = Kinematics{1.0, 1.0};
  return s;
}

}  // namespace weylab
