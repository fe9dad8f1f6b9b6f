#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

namespace tfconc {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Uniform centered grid: samples t_k = (k - n_points/2) * spacing, so t = 0 is
// always a sample and the window is [-extent/2, extent/2). The dual grid has
// spacing 1/extent and extent n_points/extent; dual of dual is the original.
struct Grid {
  std::size_t n_points = 0;
  double extent = 0.0;
  double spacing = 0.0;
  double dual_spacing = 0.0;
  double dual_extent = 0.0;

  double point(std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(n_points) / 2.0) * spacing;
  }
  Grid dual() const;
  bool compatible(const Grid& other) const;
};

// extent must be positive, n_points an even power of two (the grid must
// contain t = 0 as a sample).
Grid make_grid(double extent, std::size_t n_points);

struct SampledFunction {
  Grid grid;
  ComplexVector values;
  double cached_norm = 0.0; // L2 quadrature norm, sqrt(spacing * sum |v|^2)
};

// Wraps pre-computed values; validates finiteness and caches the norm.
SampledFunction make_function(Grid grid, ComplexVector values);

// Pointwise evaluation of f on the grid. Throws numeric_domain_error if any
// sample is non-finite.
SampledFunction sample(const Grid& grid, const std::function<Complex(double)>& f);

// Returns f / ||f||; throws numeric_domain_error when the norm is zero.
SampledFunction normalized(const SampledFunction& f);

// Pointwise multiplication by e^{-2 pi i mu t}: shifts the frequency content
// of f down by mu.
SampledFunction modulated(const SampledFunction& f, double mu);

// Unitary approximation of f^(xi) = integral f(t) e^{-2 pi i t xi} dt on the
// dual grid. Exactly norm-preserving up to rounding; applying it four times
// returns the input.
SampledFunction fourier(const SampledFunction& f);
SampledFunction inverse_fourier(const SampledFunction& f);

// L2 pairing spacing * sum f_k conj(g_k); grids must be compatible.
Complex inner_product(const SampledFunction& f, const SampledFunction& g);

// Mass of |f|^2 outside [-R, R]. Requires R < extent/2 so the tail is
// representable on the window.
double tail_mass(const SampledFunction& f, double R);

// Indicator of [a, b] as a pointwise function. Samples landing exactly on a
// jump carry magnitude 1/sqrt(2), so the |.|^2 quadrature of an aligned
// indicator is exact (the edge cell contributes half weight).
std::function<Complex(double)> indicator(double a, double b);

// CSV exchange format: header "t,re,im", one row per sample, 17 significant
// digits. read_csv reconstructs the grid from the t column and validates it.
void write_csv(std::ostream& out, const SampledFunction& f);
SampledFunction read_csv(std::istream& in);

namespace testing_hooks {
// Scales every FFT twiddle factor's angle and modulus by (1 + delta). A pure
// angle distortion would leave each butterfly an isometry and so could never
// move the norm; the modulus part is what destroys unitarity. Used by the
// verify command's negative control. Default 0.
void set_fft_corruption(double delta);
double fft_corruption();
} // namespace testing_hooks

} // namespace tfconc
