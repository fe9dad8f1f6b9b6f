#include "tfconc/grid.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "tfconc/errors.hpp"

namespace tfconc {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::atomic<double> g_fft_corruption{0.0};

// Iterative radix-2 transform, sign = -1 forward / +1 inverse, without
// normalization. Twiddles come from a per-call table so accuracy does not
// depend on accumulated rotations.
void fft_radix2(ComplexVector& a, int sign) {
  const std::size_t n = a.size();
  if (n < 2) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double delta = g_fft_corruption.load(std::memory_order_relaxed);
  ComplexVector twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = sign * 2.0 * kPi * (1.0 + delta) * static_cast<double>(k) /
                         static_cast<double>(n);
    twiddle[k] = std::polar(1.0 + delta, angle);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Complex u = a[i + j];
        const Complex v = a[i + j + len / 2] * twiddle[j * stride];
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

// Shared core of fourier/inverse_fourier. With t_k = (k - N/2) dt and
// xi_j = (j - N/2) dxi the quadrature sum factorizes as
//   dt * (-1)^j * e^{-i pi N/2} * DFT[(-1)^k f_k]_j,
// so the centered transform is a plain FFT between two phase flips. The
// constant e^{-+i pi N/2} is +-1 for even N.
SampledFunction centered_transform(const SampledFunction& f, int sign) {
  const Grid& g = f.grid;
  const std::size_t n = g.n_points;
  ComplexVector a(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = (k & 1) ? -f.values[k] : f.values[k];
  fft_radix2(a, sign);
  const double corner = (n % 4 == 0) ? 1.0 : -1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double phase = ((j & 1) ? -1.0 : 1.0) * corner;
    a[j] *= g.spacing * phase;
  }
  return make_function(g.dual(), std::move(a));
}

void format_double(char* buf, std::size_t size, double x) {
  std::snprintf(buf, size, "%.17g", x);
}

} // namespace

Grid Grid::dual() const {
  Grid d;
  d.n_points = n_points;
  d.extent = dual_extent;
  d.spacing = dual_spacing;
  d.dual_spacing = spacing;
  d.dual_extent = extent;
  return d;
}

bool Grid::compatible(const Grid& other) const {
  if (n_points != other.n_points) return false;
  const double scale = std::max({1.0, std::abs(extent), std::abs(other.extent)});
  return std::abs(extent - other.extent) <= 1e-12 * scale;
}

Grid make_grid(double extent, std::size_t n_points) {
  if (!(extent > 0.0) || !std::isfinite(extent))
    throw std::invalid_argument("make_grid: extent must be a positive real");
  if (!is_power_of_two(n_points) || n_points < 2)
    throw std::invalid_argument(
        "make_grid: n_points must be a power of two >= 2 (t = 0 must be a sample)");
  Grid g;
  g.n_points = n_points;
  g.extent = extent;
  g.spacing = extent / static_cast<double>(n_points);
  g.dual_spacing = 1.0 / extent;
  g.dual_extent = static_cast<double>(n_points) / extent;
  return g;
}

SampledFunction make_function(Grid grid, ComplexVector values) {
  if (values.size() != grid.n_points)
    throw std::invalid_argument("make_function: value count does not match the grid");
  double sum = 0.0;
  for (const Complex& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw numeric_domain_error("make_function: non-finite sample");
    sum += std::norm(v);
  }
  SampledFunction f;
  f.grid = grid;
  f.values = std::move(values);
  f.cached_norm = std::sqrt(grid.spacing * sum);
  return f;
}

SampledFunction sample(const Grid& grid, const std::function<Complex(double)>& f) {
  ComplexVector values(grid.n_points);
  for (std::size_t k = 0; k < grid.n_points; ++k) {
    const Complex v = f(grid.point(k));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw numeric_domain_error("sample: non-finite value at t = " +
                                 std::to_string(grid.point(k)));
    values[k] = v;
  }
  return make_function(grid, std::move(values));
}

SampledFunction normalized(const SampledFunction& f) {
  if (!(f.cached_norm > 0.0))
    throw numeric_domain_error("normalized: zero norm");
  ComplexVector values(f.values);
  for (Complex& v : values) v /= f.cached_norm;
  return make_function(f.grid, std::move(values));
}

SampledFunction modulated(const SampledFunction& f, double mu) {
  ComplexVector values(f.grid.n_points);
  for (std::size_t k = 0; k < f.grid.n_points; ++k)
    values[k] = f.values[k] * std::polar(1.0, -2.0 * kPi * mu * f.grid.point(k));
  return make_function(f.grid, std::move(values));
}

SampledFunction fourier(const SampledFunction& f) { return centered_transform(f, -1); }

SampledFunction inverse_fourier(const SampledFunction& f) {
  // Same structure with the opposite sign; the input grid's spacing is the
  // correct quadrature weight because dt * dxi * N = 1.
  return centered_transform(f, +1);
}

Complex inner_product(const SampledFunction& f, const SampledFunction& g) {
  if (!f.grid.compatible(g.grid))
    throw std::invalid_argument("inner_product: incompatible grids");
  Complex sum{0.0, 0.0};
  for (std::size_t k = 0; k < f.grid.n_points; ++k)
    sum += f.values[k] * std::conj(g.values[k]);
  return f.grid.spacing * sum;
}

double tail_mass(const SampledFunction& f, double R) {
  if (!(R >= 0.0) || !std::isfinite(R))
    throw std::invalid_argument("tail_mass: radius must be a nonnegative real");
  if (R >= f.grid.extent / 2.0)
    throw std::invalid_argument("tail_mass: radius reaches past the window edge");
  double sum = 0.0;
  for (std::size_t k = 0; k < f.grid.n_points; ++k)
    if (std::abs(f.grid.point(k)) >= R) sum += std::norm(f.values[k]);
  return f.grid.spacing * sum;
}

std::function<Complex(double)> indicator(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("indicator: need a < b");
  return [a, b](double t) -> Complex {
    const double tol = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(t - a) <= tol || std::abs(t - b) <= tol)
      return Complex{std::numbers::sqrt2 / 2.0, 0.0};
    return (t > a && t < b) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
  };
}

void write_csv(std::ostream& out, const SampledFunction& f) {
  out << "t,re,im\n";
  char t[32], re[32], im[32];
  for (std::size_t k = 0; k < f.grid.n_points; ++k) {
    format_double(t, sizeof t, f.grid.point(k));
    format_double(re, sizeof re, f.values[k].real());
    format_double(im, sizeof im, f.values[k].imag());
    out << t << ',' << re << ',' << im << '\n';
  }
}

SampledFunction read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,re,im", 0) != 0)
    throw std::invalid_argument("read_csv: missing 't,re,im' header");
  std::vector<double> ts;
  ComplexVector values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t = 0.0, re = 0.0, im = 0.0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &re, &im) != 3)
      throw std::invalid_argument("read_csv: malformed row: " + line);
    ts.push_back(t);
    values.emplace_back(re, im);
  }
  const std::size_t n = ts.size();
  if (n < 2) throw std::invalid_argument("read_csv: need at least two samples");
  const double dt = ts[1] - ts[0];
  if (!(dt > 0.0)) throw std::invalid_argument("read_csv: t column must increase");
  Grid grid = make_grid(dt * static_cast<double>(n), n);
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(ts[k] - grid.point(k)) > 1e-9 * std::max(1.0, std::abs(grid.point(k))))
      throw std::invalid_argument("read_csv: t column is not a centered uniform grid");
  return make_function(grid, std::move(values));
}

namespace testing_hooks {
void set_fft_corruption(double delta) {
  g_fft_corruption.store(delta, std::memory_order_relaxed);
}
double fft_corruption() {
  return g_fft_corruption.load(std::memory_order_relaxed);
}
} // namespace testing_hooks

} // namespace tfconc
