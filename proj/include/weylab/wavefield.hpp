#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "weylab/wavepacket.hpp"

namespace weylab {

/// Uniform periodic grid: x_i = x_min + i*dx, dx = (x_max - x_min)/nx,
/// i in [0, nx). x_max itself is the periodic image of x_min.
struct Grid2D {
  double x_min = -6.0;
  double x_max = 6.0;
  double y_min = -6.0;
  double y_max = 6.0;
  std::size_t nx = 512;
  std::size_t ny = 512;

  double dx() const { return (x_max - x_min) / static_cast<double>(nx); }
  double dy() const { return (y_max - y_min) / static_cast<double>(ny); }
  double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }
  double y(std::size_t j) const { return y_min + static_cast<double>(j) * dy(); }
  bool contains(double px, double py) const {
    return px >= x_min && px <= x_max && py >= y_min && py <= y_max;
  }

  void validate() const;
};

/// Sampled complex amplitude on a Grid2D at a given time. Storage is
/// row-major with x fastest: data[j * nx + i] = psi(x_i, y_j).
class WaveField {
 public:
  WaveField(Grid2D grid, std::vector<cplx> data, double time);

  const Grid2D& grid() const { return grid_; }
  double time() const { return time_; }
  const std::vector<cplx>& data() const { return data_; }
  cplx at(std::size_t i, std::size_t j) const { return data_[j * grid_.nx + i]; }

 private:
  Grid2D grid_;
  std::vector<cplx> data_;
  double time_;
};

// Discrete L2 norm sqrt(sum |psi|^2 dx dy) (trapezoid rule on the periodic grid).
double norm(const WaveField& field);

// Samples the analytic state onto the grid at time t.
WaveField sample(const SlitState& state, const Grid2D& grid, double t);
WaveField sample(const GaussianPacket& packet, const Grid2D& grid, double time = 0.0);

using Potential = std::function<double(double, double)>;

/// Split-step Fourier evolution by steps*dt under -hbar^2/(2m) lap + V.
/// Free evolution (empty potential) is exact per step. Throws
/// AccuracyError when more than 1e-6 of the norm sits in the outer 20% of
/// the spectrum or in the outer 1/16 of the box (wrap-around).
WaveField evolve_grid(const WaveField& field, double dt, int steps, const Kinematics& kin,
                      const Potential& potential = {});

/// Trigonometric interpolant of a WaveField; reproduces the samples and
/// gives spectrally accurate values and gradients between them.
class SpectralInterpolant {
 public:
  explicit SpectralInterpolant(const WaveField& field);

  // Throws DomainError outside the grid box.
  PsiSample sample(double x, double y) const;
  cplx evaluate(double x, double y) const { return sample(x, y).psi; }
  double time() const { return time_; }
  double max_abs() const { return max_abs_; }

 private:
  Grid2D grid_;
  double time_;
  double max_abs_;
  std::vector<double> kx_;
  std::vector<double> ky_;
  std::vector<cplx> coeff_;  // normalized spectrum, Nyquist split
};

cplx evaluate(const SpectralInterpolant& field, double x, double y);

// x,y,re,im with header, 17 significant digits.
void write_csv(const WaveField& field, std::ostream& out);

/// Little-endian binary dump:
///   char[8]  magic "WEYLWF1\0"
///   uint64   nx, ny
///   float64  x_min, x_max, y_min, y_max, time
///   float64  re, im  for each sample, row-major (x fastest)
void write_binary(const WaveField& field, std::ostream& out);
WaveField read_binary(std::istream& in);

}  // namespace weylab
