#include "weylab/wavefield.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "weylab/errors.hpp"

namespace weylab {
namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kTailLimit = 1e-6;

class Fft2D {
 public:
  Fft2D(std::size_t nx, std::size_t ny)
      : n_(nx * ny), buf_(fftw_alloc_complex(n_)) {
    const int rows = static_cast<int>(ny);
    const int cols = static_cast<int>(nx);
    fwd_ = fftw_plan_dft_2d(rows, cols, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_2d(rows, cols, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft2D() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
  }
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  cplx* data() { return reinterpret_cast<cplx*>(buf_); }
  void forward() { fftw_execute(fwd_); }
  void backward() { fftw_execute(bwd_); }

 private:
  std::size_t n_;
  fftw_complex* buf_;
  fftw_plan fwd_{};
  fftw_plan bwd_{};
};

std::vector<double> wavenumbers(std::size_t n, double length) {
  std::vector<double> k(n);
  const double dk = 2.0 * std::numbers::pi / length;
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = static_cast<std::ptrdiff_t>(i);
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    k[i] = dk * static_cast<double>(s < half ? s : s - static_cast<std::ptrdiff_t>(n));
  }
  return k;
}

bool outer_index(std::size_t i, std::size_t n, double frac) {
  const double half = static_cast<double>(n) / 2.0;
  const double s = static_cast<double>(i < n / 2 ? i : n - i);
  return s >= frac * half;
}

double edge_fraction(const Grid2D& g, const cplx* d) {
  const std::size_t bx = std::max<std::size_t>(1, g.nx / 16);
  const std::size_t by = std::max<std::size_t>(1, g.ny / 16);
  double total = 0.0;
  double edge = 0.0;
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double p = std::norm(d[j * g.nx + i]);
      total += p;
      if (i < bx || i >= g.nx - bx || j < by || j >= g.ny - by) edge += p;
    }
  }
  return edge / total;
}

// Expects the spectrum in `d`.
double spectral_tail_fraction(const Grid2D& g, const cplx* d) {
  double total = 0.0;
  double tail = 0.0;
  for (std::size_t j = 0; j < g.ny; ++j) {
    const bool oy = outer_index(j, g.ny, 0.8);
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double p = std::norm(d[j * g.nx + i]);
      total += p;
      if (oy || outer_index(i, g.nx, 0.8)) tail += p;
    }
  }
  return tail / total;
}

void check_resolution(const Grid2D& g, Fft2D& fft, const char* when) {
  const double edge = edge_fraction(g, fft.data());
  std::vector<cplx> keep(fft.data(), fft.data() + g.nx * g.ny);
  fft.forward();
  const double tail = spectral_tail_fraction(g, fft.data());
  std::copy(keep.begin(), keep.end(), fft.data());
  if (tail > kTailLimit || edge > kTailLimit) {
    std::ostringstream msg;
    msg << "evolve_grid: field under-resolved " << when << " (spectral tail " << tail << ", boundary mass " << edge
        << ", limit " << kTailLimit << ")";
    throw AccuracyError(msg.str());
  }
}

template <class T>
void put_le(std::ostream& out, T v) {
  static_assert(sizeof(T) == 8);
  auto bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
  out.write(bytes, 8);
}

template <class T>
T get_le(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (!in) throw std::runtime_error("read_binary: truncated input");
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  return std::bit_cast<T>(bits);
}

constexpr char kMagic[8] = {'W', 'E', 'Y', 'L', 'W', 'F', '1', '\0'};

// One entry per retained Fourier mode; the Nyquist mode is split into +/- halves.
struct Mode {
  std::size_t index;
  double k;
  double weight;
};

std::vector<Mode> interpolation_modes(std::size_t n, double length) {
  const auto k = wavenumbers(n, length);
  std::vector<Mode> modes;
  modes.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (n % 2 == 0 && i == n / 2) {
      modes.push_back({i, -k[i], 0.5});
      modes.push_back({i, k[i], 0.5});
    } else {
      modes.push_back({i, k[i], 1.0});
    }
  }
  return modes;
}

}  // namespace

void Grid2D::validate() const {
  if (nx < 16 || ny < 16) throw DomainError("Grid2D: nx and ny must be >= 16");
  if (!(x_max > x_min) || !(y_max > y_min)) throw DomainError("Grid2D: empty range");
}

WaveField::WaveField(Grid2D grid, std::vector<cplx> data, double time)
    : grid_(grid), data_(std::move(data)), time_(time) {
  grid_.validate();
  if (data_.size() != grid_.nx * grid_.ny) throw DomainError("WaveField: sample count does not match grid");
  const double n = norm(*this);
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("WaveField: L2 norm must be finite and positive");
}

double norm(const WaveField& field) {
  double sum = 0.0;
  for (const cplx& v : field.data()) sum += std::norm(v);
  return std::sqrt(sum * field.grid().dx() * field.grid().dy());
}

WaveField sample(const SlitState& state, const Grid2D& grid, double t) {
  grid.validate();
  std::vector<cplx> data(grid.nx * grid.ny);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) data[j * grid.nx + i] = state.evaluate(grid.x(i), grid.y(j), t);
  }
  return WaveField(grid, std::move(data), t);
}

WaveField sample(const GaussianPacket& packet, const Grid2D& grid, double time) {
  grid.validate();
  std::vector<cplx> data(grid.nx * grid.ny);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) data[j * grid.nx + i] = packet.value(grid.x(i), grid.y(j));
  }
  return WaveField(grid, std::move(data), time);
}

WaveField evolve_grid(const WaveField& field, double dt, int steps, const Kinematics& kin,
                      const Potential& potential) {
  if (steps < 0) throw DomainError("evolve_grid: steps must be >= 0");
  if (steps == 0) return field;
  if (!(kin.mass > 0.0) || !(kin.hbar > 0.0)) throw DomainError("evolve_grid: mass and hbar must be > 0");

  const Grid2D& g = field.grid();
  const std::size_t n = g.nx * g.ny;
  Fft2D fft(g.nx, g.ny);
  std::copy(field.data().begin(), field.data().end(), fft.data());
  check_resolution(g, fft, "at start");

  const auto kx = wavenumbers(g.nx, g.x_max - g.x_min);
  const auto ky = wavenumbers(g.ny, g.y_max - g.y_min);
  std::vector<cplx> kinetic(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double k2 = kx[i] * kx[i] + ky[j] * ky[j];
      kinetic[j * g.nx + i] = std::exp(-I * kin.hbar * k2 * dt / (2.0 * kin.mass)) * inv_n;
    }
  }
  std::vector<cplx> half_potential;
  if (potential) {
    half_potential.resize(n);
    for (std::size_t j = 0; j < g.ny; ++j) {
      for (std::size_t i = 0; i < g.nx; ++i) {
        half_potential[j * g.nx + i] = std::exp(-I * potential(g.x(i), g.y(j)) * dt / (2.0 * kin.hbar));
      }
    }
  }

  cplx* d = fft.data();
  for (int s = 0; s < steps; ++s) {
    if (potential) {
      for (std::size_t q = 0; q < n; ++q) d[q] *= half_potential[q];
    }
    fft.forward();
    for (std::size_t q = 0; q < n; ++q) d[q] *= kinetic[q];
    fft.backward();
    if (potential) {
      for (std::size_t q = 0; q < n; ++q) d[q] *= half_potential[q];
    }
  }
  check_resolution(g, fft, "after evolution");
  return WaveField(g, std::vector<cplx>(d, d + n), field.time() + dt * steps);
}

SpectralInterpolant::SpectralInterpolant(const WaveField& field)
    : grid_(field.grid()), time_(field.time()), max_abs_(0.0) {
  const std::size_t n = grid_.nx * grid_.ny;
  Fft2D fft(grid_.nx, grid_.ny);
  std::copy(field.data().begin(), field.data().end(), fft.data());
  for (const cplx& v : field.data()) max_abs_ = std::max(max_abs_, std::abs(v));
  fft.forward();
  coeff_.assign(fft.data(), fft.data() + n);
  for (cplx& c : coeff_) c /= static_cast<double>(n);
}

PsiSample SpectralInterpolant::sample(double x, double y) const {
  if (!grid_.contains(x, y)) throw DomainError("SpectralInterpolant: query point outside the grid");
  const auto mx = interpolation_modes(grid_.nx, grid_.x_max - grid_.x_min);
  const auto my = interpolation_modes(grid_.ny, grid_.y_max - grid_.y_min);
  std::vector<cplx> ex(mx.size());
  for (std::size_t m = 0; m < mx.size(); ++m) ex[m] = mx[m].weight * std::exp(I * mx[m].k * (x - grid_.x_min));

  PsiSample out{};
  for (const Mode& row : my) {
    const cplx ey = row.weight * std::exp(I * row.k * (y - grid_.y_min));
    const cplx* c = coeff_.data() + row.index * grid_.nx;
    cplx acc{};
    cplx acc_dx{};
    for (std::size_t m = 0; m < mx.size(); ++m) {
      const cplx term = c[mx[m].index] * ex[m];
      acc += term;
      acc_dx += I * mx[m].k * term;
    }
    out.psi += ey * acc;
    out.dx += ey * acc_dx;
    out.dy += I * row.k * ey * acc;
  }
  return out;
}

cplx evaluate(const SpectralInterpolant& field, double x, double y) { return field.evaluate(x, y); }

void write_csv(const WaveField& field, std::ostream& out) {
  const Grid2D& g = field.grid();
  out << "x,y,re,im\n";
  char line[128];
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      const cplx v = field.at(i, j);
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", g.x(i), g.y(j), v.real(), v.imag());
      out << line;
    }
  }
}

void write_binary(const WaveField& field, std::ostream& out) {
  const Grid2D& g = field.grid();
  out.write(kMagic, sizeof kMagic);
  put_le<std::uint64_t>(out, g.nx);
  put_le<std::uint64_t>(out, g.ny);
  for (double v : {g.x_min, g.x_max, g.y_min, g.y_max, field.time()}) put_le<double>(out, v);
  for (const cplx& v : field.data()) {
    put_le<double>(out, v.real());
    put_le<double>(out, v.imag());
  }
}

WaveField read_binary(std::istream& in) {
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw std::runtime_error("read_binary: bad magic");
  Grid2D g;
  g.nx = get_le<std::uint64_t>(in);
  g.ny = get_le<std::uint64_t>(in);
  g.x_min = get_le<double>(in);
  g.x_max = get_le<double>(in);
  g.y_min = get_le<double>(in);
  g.y_max = get_le<double>(in);
  const double t = get_le<double>(in);
  g.validate();
  std::vector<cplx> data(g.nx * g.ny);
  for (cplx& v : data) {
    const double re = get_le<double>(in);
    const double im = get_le<double>(in);
    v = {re, im};
  }
  return WaveField(g, std::move(data), t);
}

}  // namespace weylab
