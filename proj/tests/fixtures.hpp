#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "tfconc/grid.hpp"

namespace fixtures {

// 2^{1/4} e^{-pi (t-s)^2} e^{2 pi i mu t}, sampled and normalized. Shifts and
// modulations need not be grid-aligned; the formula is evaluated pointwise.
inline tfconc::SampledFunction gauss_atom(const tfconc::Grid& grid, double s, double mu) {
  tfconc::SampledFunction f = tfconc::sample(grid, [s, mu](double t) -> tfconc::Complex {
    const double u = t - s;
    return std::polar(std::pow(2.0, 0.25) * std::exp(-M_PI * u * u), 2.0 * M_PI * mu * t);
  });
  return tfconc::normalized(f);
}

// Four gaussian bumps with random centers, modulations, widths and phases.
// Smooth, unit norm, concentrated well inside the default window.
inline tfconc::SampledFunction random_mixture(const tfconc::Grid& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> center(-2.0, 2.0);
  std::uniform_real_distribution<double> mod(-1.0, 1.0);
  std::uniform_real_distribution<double> width(0.5, 1.5);
  std::uniform_real_distribution<double> amp(0.3, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  struct Bump {
    double c, m, w, a, ph;
  };
  std::vector<Bump> bumps;
  for (int b = 0; b < 4; ++b)
    bumps.push_back({center(rng), mod(rng), width(rng), amp(rng), phase(rng)});
  tfconc::SampledFunction f = tfconc::sample(grid, [&bumps](double t) -> tfconc::Complex {
    tfconc::Complex v = 0.0;
    for (const auto& b : bumps)
      v += b.a * std::exp(-M_PI * (t - b.c) * (t - b.c) / (b.w * b.w)) *
           std::polar(1.0, 2.0 * M_PI * b.m * t + b.ph);
    return v;
  });
  return tfconc::normalized(f);
}

inline double l2_distance(const tfconc::SampledFunction& f, const tfconc::SampledFunction& g) {
  double sum = 0.0;
  for (std::size_t k = 0; k < f.values.size(); ++k)
    sum += std::norm(f.values[k] - g.values[k]);
  return std::sqrt(f.grid.spacing * sum);
}

// Closed forms for the normalized gaussian, evaluated once to full precision.
namespace ref {
inline constexpr double inv_4pi = 0.079577471545947668;          // 1/(4 pi)
inline constexpr double gauss_dispersion = 0.28209479177387814;  // 1/(2 sqrt(pi))
inline constexpr double overlap_shift1 = 0.20787957635076191;    // e^{-pi/2}
inline constexpr double overlap_shift_mod = 0.043213918263772250; // e^{-pi}
inline constexpr double overlap_shift4 = 1.2161556709409466e-11; // e^{-8 pi}
inline constexpr double bound_shift4 = 0.56418958354775628;      // 1/sqrt(pi)
inline constexpr double bound_mod5 = 0.45135166683820503;        // 8 Delta_2(g) / 5
inline constexpr double mean_drift_cap_p2 = 1.1283791670955126;  // 2/sqrt(pi)
inline constexpr double trigamma_101 = 0.0099501666633335714;    // sum_{n>100} n^{-2}
inline constexpr double gauss_tail_2 = 1.3429100661196226e-12;   // erfc(2 sqrt(2 pi))
}

// |t|^p moment of the normalized gaussian: sqrt(2) (2 pi)^{-(p+1)/2} G((p+1)/2).
inline double gauss_abs_moment(double p) {
  return std::sqrt(2.0) * std::pow(2.0 * M_PI, -(p + 1.0) / 2.0) * std::tgamma((p + 1.0) / 2.0);
}

} // namespace fixtures
