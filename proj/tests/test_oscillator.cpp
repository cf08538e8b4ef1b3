#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/rational.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "weylab/errors.hpp"
#include "weylab/oscillator.hpp"

using namespace weylab;
using namespace weylab::osc;

namespace {
constexpr cplx I{0.0, 1.0};
using big = boost::multiprecision::cpp_bin_float_100;
using rat = boost::rational<long long>;

// Power-series coefficients a_k of the Hermite equation with K = 2n + 1.
std::vector<rat> series(int n, int terms) {
  std::vector<rat> a(terms, rat(0));
  a[n % 2] = 1;
  const long long K = 2 * n + 1;
  for (int k = 0; k + 2 < terms; ++k) a[k + 2] = a[k] * rat(2 * k + 1 - K) / rat((k + 1) * (k + 2));
  return a;
}

// Integer coefficients of H_n from the three-term recurrence.
std::vector<long long> hermite_coefficients(int n) {
  std::vector<long long> prev{1}, cur{0, 2};
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    std::vector<long long> next(k + 2, 0);
    for (int i = 0; i <= k; ++i) next[i + 1] += 2 * cur[i];
    for (int i = 0; i < k; ++i) next[i] -= 2 * k * prev[i];
    prev = cur;
    cur = next;
  }
  return cur;
}

// Eighth-order central second derivative.
template <class F>
cplx d2(F f, double h) {
  static constexpr double c[] = {-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};
  cplx s = c[0] * f(0.0);
  for (int k = 1; k <= 4; ++k) s += c[k] * (f(k * h) + f(-k * h));
  return s / (h * h);
}
}  // namespace

TEST_CASE("complex frequency") {
  CHECK(complex_frequency(2.0, {3.0, 0.0}, 1.5) == cplx{2.0 * std::sqrt(2.0), 0.0});
  const cplx w = complex_frequency(1.0, {1.0, 1e-21}, 1.0);
  // sqrt(1 + i b) = r + i b/(2r) with r = sqrt((1 + sqrt(1 + b^2))/2), in 100 digits.
  const big b("1e-21");
  const big r = sqrt((1 + sqrt(1 + b * b)) / 2);
  const big ratio = (b / (2 * r)) / r;
  CHECK(std::abs(w.imag() / w.real() - ratio.convert_to<double>()) < 1e-24);
  CHECK(std::abs(w.imag() / w.real() - 5e-22) < 1e-24);
  // First-order ratio w^I/w^R ~ e_I/(2e) for electron-scale coupling.
  const cplx we = complex_frequency(1.0, {1.0, 2e-9}, 1.0);
  CHECK(we.imag() / we.real() == doctest::Approx(1e-9).epsilon(1e-12));
  CHECK_THROWS_AS(complex_frequency(0.0, {1.0, 0.0}, 1.0), DomainError);
  CHECK_THROWS_AS(complex_frequency(1.0, {-1.0, 0.1}, 1.0), DomainError);
  CHECK_THROWS_AS(complex_frequency(1.0, {1.0, 0.0}, 0.0), DomainError);
}

TEST_CASE("energy eigenvalues") {
  const Omega3 real{1.0, 2.0, 3.5};
  CHECK(eigenvalue({0, 0, 0}, real, 1.0) == cplx{3.25, 0.0});
  CHECK(eigenvalue({0, 0, 0}, real, 2.0) == cplx{6.5, 0.0});
  for (int n = 0; n <= 10; ++n) {
    // 1D reduction: K = 2E/(hbar w) = 2n + 1
    const cplx e = eigenvalue({n, 0, 0}, {1.7, 0.0, 0.0}, 1.0);
    CHECK(2.0 * e.real() / 1.7 == doctest::Approx(2.0 * n + 1.0).epsilon(1e-14));
  }
  const Omega3 w{cplx{1.0, 1e-3}, cplx{1.2, 2e-3}, cplx{0.7, -5e-4}};
  const Quanta n{3, 1, 4};
  const ComplexLevel lvl = ComplexLevel::make(w, n, 1.1);
  double ei = 0.0;
  for (int j = 2; j >= 0; --j) ei += 1.1 * w[j].imag() * (n[j] + 0.5);
  CHECK(lvl.energy_imag() == doctest::Approx(ei).epsilon(1e-14));
  CHECK(lvl.energy == eigenvalue(n, w, 1.1));
  CHECK_THROWS_AS(eigenvalue({-1, 0, 0}, w, 1.0), DomainError);
  CHECK_THROWS_AS(ComplexLevel::make({cplx{-1.0, 0.1}, 1.0, 1.0}, n, 1.0), DomainError);
}

TEST_CASE("low-order Hermite closed forms") {
  const cplx z{1.0, 1.0};
  CHECK(hermite(0, z) == 1.0);
  CHECK(hermite(1, z) == 2.0 * z);
  CHECK(hermite(2, z) == cplx{-2.0, 8.0});
  CHECK(std::abs(hermite(3, z) - (8.0 * z * z * z - 12.0 * z)) < 1e-13);
  CHECK(std::abs(hermite(4, z) - (16.0 * std::pow(z, 4) - 48.0 * z * z + 12.0)) < 1e-12);
  const auto t = hermite_table(6, z);
  for (int n = 0; n <= 6; ++n) CHECK(t[n] == hermite(n, z));
}

TEST_CASE("series solution terminates at K = 2n + 1 and reproduces H_n") {
  for (int n = 0; n <= 10; ++n) {
    const auto a = series(n, n + 8);
    CHECK(a[n] != rat(0));
    for (int k = n + 1; k < n + 8; ++k) CHECK(a[k] == rat(0));
    CHECK(a[n + 2] == rat(0));
    const auto h = hermite_coefficients(n);
    const rat c = rat(h[n]) / a[n];
    for (int k = 0; k <= n; ++k) CHECK(a[k] * c == rat(h[k]));
    // numerical H_n at a complex point equals the scaled series
    const cplx z{0.3, -0.7};
    cplx poly = 0.0;
    for (int k = n; k >= 0; --k) poly = poly * z + static_cast<double>(h[k]);
    CHECK(std::abs(hermite(n, z) - poly) <= 1e-12 * std::max(1.0, std::abs(poly)));
  }
  // a different K does not terminate
  const auto a = series(4, 20);
  std::vector<rat> b(20, rat(0));
  b[0] = 1;
  for (int k = 0; k + 2 < 20; ++k) b[k + 2] = b[k] * rat(2 * k + 1 - 10) / rat((k + 1) * (k + 2));
  CHECK(b[6] != rat(0));
  CHECK(a[6] == rat(0));
}

TEST_CASE("Hermite ODE residual at complex points") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> pick(0, 25);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const cplx z{u(rng), u(rng)};
    const int n = pick(rng);
    const auto h = hermite_table(n, z);
    // H_n' = 2n H_{n-1}, H_n'' = 4n(n-1) H_{n-2}
    const cplx d1 = n >= 1 ? 2.0 * n * h[n - 1] : 0.0;
    const cplx d2v = n >= 2 ? 4.0 * n * (n - 1.0) * h[n - 2] : 0.0;
    const double scale = std::abs(d2v) + std::abs(2.0 * z * d1) + std::abs(2.0 * n * h[n]) + 1e-300;
    worst = std::max(worst, std::abs(d2v - 2.0 * z * d1 + 2.0 * n * h[n]) / scale);
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("real-frequency eigenfunctions are the textbook ones") {
  const double m = 1.3, hbar = 0.9, w = 1.7;
  const double s = std::sqrt(m * w / hbar);
  for (double x : {-1.1, 0.0, 0.4, 2.0}) {
    const double ground = std::pow(m * w / (std::numbers::pi * hbar), 0.25) * std::exp(-0.5 * s * s * x * x);
    CHECK(eigenfunction_1d(0, w, x, m, hbar).value.real() == doctest::Approx(ground).epsilon(1e-14));
    CHECK(eigenfunction_1d(0, w, x, m, hbar).value.imag() == 0.0);
  }
  // orthonormality to 1e-12
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; b <= 6; ++b) {
      auto f = [&](double x) {
        return (eigenfunction_1d(a, w, x, m, hbar).value * eigenfunction_1d(b, w, x, m, hbar).value).real();
      };
      const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -12.0, 12.0, 15, 1e-15);
      CHECK(std::abs(v - (a == b ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("eigenfunction parity and derivative") {
  const cplx w{1.2, 1.2e-3};
  for (int n = 0; n <= 8; ++n) {
    for (double x : {0.3, 1.1, 2.5}) {
      const cplx p = eigenfunction_1d(n, w, x, 1.0, 1.0).value;
      const cplx q = eigenfunction_1d(n, w, -x, 1.0, 1.0).value;
      CHECK(std::abs(q - (n % 2 ? -p : p)) <= 1e-14 * std::abs(p));
      const double h = 1e-5;
      const cplx fd = (eigenfunction_1d(n, w, x + h, 1.0, 1.0).value - eigenfunction_1d(n, w, x - h, 1.0, 1.0).value) / (2.0 * h);
      const cplx d = eigenfunction_1d(n, w, x, 1.0, 1.0).derivative;
      CHECK(std::abs(d - fd) <= 1e-8 * std::max(1.0, std::abs(d)));
    }
  }
  CHECK_THROWS_AS(eigenfunction_1d(1, cplx{-0.1, 1.0}, 0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(eigenfunction_1d(1, cplx{0.0, 1.0}, 0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("3D Hamiltonian residual at w^I/w^R = 1e-3") {
  const double m = 1.0, hbar = 1.0;
  const Omega3 w{cplx{1.0, 1e-3}, cplx{1.4, 1.4e-3}, cplx{0.8, 0.8e-3}};
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const Quanta& n : {Quanta{0, 0, 0}, Quanta{2, 1, 3}, Quanta{5, 0, 2}}) {
    const cplx e = eigenvalue(n, w, hbar);
    double res2 = 0.0, norm2 = 0.0;
    for (int i = 0; i < 300; ++i) {
      const Vec3 x{u(rng), u(rng), u(rng)};
      const cplx phi = eigenfunction(n, w, x, m, hbar);
      cplx lap = 0.0;
      for (int j = 0; j < 3; ++j) {
        lap += d2(
            [&](double s) {
              Vec3 y = x;
              y[j] += s;
              return eigenfunction(n, w, y, m, hbar);
            },
            0.02);
      }
      cplx v = 0.0;
      for (int j = 0; j < 3; ++j) v += 0.5 * m * w[j] * w[j] * x[j] * x[j];
      res2 += std::norm(-hbar * hbar / (2.0 * m) * lap + v * phi - e * phi);
      norm2 += std::norm(phi);
    }
    CHECK(std::sqrt(res2 / norm2) < 1e-6);
  }
}

TEST_CASE("normalization reduces to the real constant") {
  CHECK(std::abs(normalization(3, 2.0, 1.0, 1.0) - std::pow(2.0 / std::numbers::pi, 0.25) / std::sqrt(48.0)) < 1e-15);
  const cplx c = normalization(2, cplx{1.0, 1e-3}, 1.0, 1.0);
  CHECK(std::abs(c - normalization(2, 1.0, 1.0, 1.0)) < 1e-3);
}
