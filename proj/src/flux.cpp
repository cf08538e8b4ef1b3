#include "weylab/flux.hpp"

#include <cmath>

#include "weylab/errors.hpp"

namespace weylab {

const char* to_string(Slit s) noexcept {
  switch (s) {
    case Slit::A:
      return "A";
    case Slit::B:
      return "B";
    case Slit::undecided:
      break;
  }
  return "undecided";
}

FluxConfig::FluxConfig(double loop_flux, GaugeFunction gauge_a)
    : loop_flux_(loop_flux), gauge_a_(std::move(gauge_a)) {
  if (!std::isfinite(loop_flux_)) throw DomainError("FluxConfig: loop flux must be finite");
}

double FluxConfig::line_integral(Slit s, double x, double y, double t) const {
  switch (s) {
    case Slit::A:
      return line_integral_a(x, y, t);
    case Slit::B:
      return line_integral_b(x, y, t);
    case Slit::undecided:
      break;
  }
  throw DomainError("FluxConfig: no line integral for an undecided path");
}

FluxConfig FluxConfig::with_gauge_shift(const GaugeFunction& chi) const {
  GaugeFunction base = gauge_a_;
  return FluxConfig(loop_flux_, [base, chi](double x, double y, double t) {
    return (base ? base(x, y, t) : 0.0) + chi(x, y, t);
  });
}

}  // namespace weylab
