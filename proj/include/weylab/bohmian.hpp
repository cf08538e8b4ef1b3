#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "weylab/errors.hpp"
#include "weylab/flux.hpp"
#include "weylab/wavefield.hpp"
#include "weylab/wavepacket.hpp"

namespace weylab::bohmian {

// |psi| below this fraction of the reference amplitude counts as a node.
inline constexpr double kNodeThreshold = 1e-12;

struct Sample {
  double t;
  double x;
  double y;
};

/// Time-ordered path (samples strictly increasing in t, also for backward
/// integration). which_way is decided iff the path covers t = 0, where the
/// slit plane is crossed; line_integral is attached per label by
/// attach_line_integral.
struct Trajectory {
  std::vector<Sample> samples;
  Slit which_way = Slit::undecided;
  double line_integral = 0.0;

  const Sample& at_time(double t) const;  // exact sample at t; throws if absent
};

/// Thrown when integration runs into a node; carries what was integrated.
class TrajectoryNodeError : public NodeError {
 public:
  TrajectoryNodeError(const std::string& what, Trajectory partial)
      : NodeError(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// Guidance velocity (hbar/m) Im(grad psi / psi), analytic gradient.
/// Throws NodeError when |psi| < kNodeThreshold * max|psi| (bounded above by
/// the sum of packet peaks).
Point2 velocity(const SlitState& state, double x, double y, double t);

/// Same for a sampled field at its own timestamp, spectral gradient.
Point2 velocity(const SpectralInterpolant& field, double x, double y, const Kinematics& kin);

struct IntegrationOptions {
  double tolerance = 1e-8;  // step-doubling error estimate per unit time
  double min_step = 1e-12;
};

/// Adaptive classical RK4 with step doubling from (x0, y0, t0) to t1;
/// t1 < t0 integrates backward. dt is the initial and maximum step. When
/// t = 0 lies inside the span a sample is placed exactly on it and the slit
/// label is set from the sign of x there.
Trajectory integrate(double x0, double y0, double t0, double t1, double dt, const SlitState& state,
                     const IntegrationOptions& opts = {});

/// Slit crossed by the trajectory through (x, y, t): backward to t = 0,
/// A for x > 0, B for x < 0. Throws NodeError when the path is undecidable.
Slit which_way(double x, double y, double t, const SlitState& state, double dt = 0.05);

/// Boundary on the screen line (t, y) between A- and B-labelled points,
/// bisected to width < tol. Throws BracketError when both ends share a label.
double separatrix(double t, double y, double x_lo, double x_hi, double tol, const SlitState& state);

/// Exact draws from |psi(., 0)|^2 by rejection against the packet mixture.
std::vector<Point2> sample_initial_positions(const SlitState& state, std::size_t count, std::uint64_t seed);

struct EnsembleMember {
  Point2 start;
  Point2 end;
  Slit which_way;
};

/// |psi|^2-sampled trajectories launched at t = 0 and carried to t1.
std::vector<EnsembleMember> forward_ensemble(const SlitState& state, std::size_t count, std::uint64_t seed,
                                             double t1, double dt = 0.05);

/// Oracle label for a screen point from a forward ensemble: the member
/// nearest in x among those within `band` of y.
Slit nearest_passage_label(const std::vector<EnsembleMember>& ensemble, double x, double y, double band);

}  // namespace weylab::bohmian
