#pragma once

#include <functional>

namespace weylab {

enum class Slit { A, B, undecided };

const char* to_string(Slit s) noexcept;

/// Loop flux around the solenoid plus the gauge line integrals along paths
/// through each slit. I_B is derived as I_A + loop_flux, so
/// I_B - I_A = loop_flux holds everywhere by construction.
class FluxConfig {
 public:
  using GaugeFunction = std::function<double(double x, double y, double t)>;

  explicit FluxConfig(double loop_flux = 0.0, GaugeFunction gauge_a = {});

  double loop_flux() const { return loop_flux_; }
  double line_integral_a(double x, double y, double t) const { return gauge_a_ ? gauge_a_(x, y, t) : 0.0; }
  double line_integral_b(double x, double y, double t) const { return line_integral_a(x, y, t) + loop_flux_; }
  double line_integral(Slit s, double x, double y, double t) const;

  // Same loop flux, gauge shifted by chi: I_A -> I_A + chi, I_B -> I_B + chi.
  FluxConfig with_gauge_shift(const GaugeFunction& chi) const;

 private:
  double loop_flux_;
  GaugeFunction gauge_a_;
};

}  // namespace weylab
