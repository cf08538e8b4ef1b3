#pragma once

#include <complex>
#include <vector>

namespace weylab {

using cplx = std::complex<double>;

/// hbar and mass entering the free Schroedinger evolution of the packets.
struct Kinematics {
  double hbar = 1.0;
  double mass = 1.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// psi and its gradient at one point.
struct PsiSample {
  cplx psi;
  cplx dx;
  cplx dy;
};

/// 2D Gaussian packet
///   amp * exp(-a (x-x0)^2 + i kx (x-x0)) * exp(-a (y-y0)^2 + i ky (y-y0))
/// stored in the form exp(C - A_x u^2 + B_x u - A_y v^2 + B_y v) with
/// u = x - x0, v = y - y0 so that free evolution stays closed: only A, B
/// and C change. k is the wavenumber (momentum / hbar).
class GaussianPacket {
 public:
  struct Axis {
    double origin = 0.0;
    cplx A{1.0, 0.0};  // Re(A) > 0
    cplx B{0.0, 0.0};
  };

  static GaussianPacket make(double x0, double y0, double a, double kx, double ky, cplx amplitude);

  GaussianPacket(Axis x, Axis y, cplx log_amplitude);

  cplx value(double x, double y) const;
  PsiSample sample(double x, double y) const;

  // Location of max |psi|.
  Point2 center() const;
  // max |psi|, attained at center().
  double peak_amplitude() const;

  const Axis& x_axis() const { return x_; }
  const Axis& y_axis() const { return y_; }
  cplx log_amplitude() const { return log_amp_; }

 private:
  Axis x_;
  Axis y_;
  cplx log_amp_;
};

/// Closed-form free evolution by time t >= 0:
///   A -> A/tau, B -> B/tau, C -> C + i hbar t B^2/(2 m tau) - log(tau)/2,
///   tau = 1 + 2 i A hbar t / m (per axis).
GaussianPacket evolve_gaussian(const GaussianPacket& p, double t, const Kinematics& kin);

/// Partial wavepackets emerging from slits A and B, specified at t = 0.
/// The recombined wavefunction is (w_A psi_A + w_B psi_B)/sqrt(2); weights
/// default to 1 and carry the constant gauge/scale dressing when the state
/// is used as a guidance field.
struct SlitState {
  std::vector<GaussianPacket> psi_A;
  std::vector<GaussianPacket> psi_B;
  Kinematics kin{};
  cplx weight_A{1.0, 0.0};
  cplx weight_B{1.0, 0.0};

  struct Branches {
    PsiSample a;  // unweighted psi_A
    PsiSample b;  // unweighted psi_B
  };

  // Throws DomainError when a branch is empty or the kinematics are invalid.
  void validate() const;

  Branches branches(double x, double y, double t) const;
  cplx evaluate(double x, double y, double t) const;
  PsiSample sample(double x, double y, double t) const;

  // Sum of |w| * peak amplitude over packets at time t; an upper bound of max |psi| * sqrt(2).
  double reference_amplitude(double t) const;

  SlitState with_weights(cplx w_a, cplx w_b) const;
};

/// The double-slit state used for the neutral-molecule illustration:
///   psi(x, y, 0) = (8/pi)(e^{-8(x-1.5)^2} + e^{-8(x+1.5)^2}) e^{-8 y^2} e^{5 i y}
/// with m = hbar = 1. Slit A is the packet at x = +1.5, slit B at x = -1.5.
SlitState double_slit_state();

}  // namespace weylab
