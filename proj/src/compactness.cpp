#include "tfconc/compactness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tfconc {

namespace {

void require_common_grid(const std::vector<SampledFunction>& family, const char* who) {
  if (family.empty()) throw std::invalid_argument(std::string(who) + ": empty family");
  for (const SampledFunction& f : family)
    if (!f.grid.compatible(family.front().grid))
      throw std::invalid_argument(std::string(who) + ": family spans multiple grids");
}

// ||f(. + a) - f||^2 with a = j * spacing, circular on the periodic window.
double shift_distance_sq(const SampledFunction& f, long j) {
  const std::size_t n = f.grid.n_points;
  const long jn = ((j % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t shifted = (k + static_cast<std::size_t>(jn)) % n;
    sum += std::norm(f.values[shifted] - f.values[k]);
  }
  return f.grid.spacing * sum;
}

} // namespace

std::vector<std::pair<double, double>>
equicontinuity_modulus(const std::vector<SampledFunction>& family,
                       const std::vector<double>& shifts) {
  require_common_grid(family, "equicontinuity_modulus");
  const double dt = family.front().grid.spacing;
  std::vector<std::pair<double, double>> out;
  out.reserve(shifts.size());
  for (double a : shifts) {
    const double steps = a / dt;
    const long j = std::lround(steps);
    if (std::abs(steps - static_cast<double>(j)) > 1e-6)
      throw std::invalid_argument(
          "equicontinuity_modulus: shift " + std::to_string(a) +
          " is not an integer multiple of the grid spacing (no interpolation)");
    double omega = 0.0;
    for (const SampledFunction& f : family)
      omega = std::max(omega, shift_distance_sq(f, j));
    out.emplace_back(a, omega);
  }
  return out;
}

std::vector<std::pair<double, double>>
decay_modulus(const std::vector<SampledFunction>& family,
              const std::vector<double>& radii) {
  require_common_grid(family, "decay_modulus");
  std::vector<std::pair<double, double>> out;
  out.reserve(radii.size());
  for (double R : radii) {
    double rho = 0.0;
    for (const SampledFunction& f : family) rho = std::max(rho, tail_mass(f, R));
    out.emplace_back(R, rho);
  }
  return out;
}

DualityReport duality_check(const std::vector<SampledFunction>& family,
                            const std::vector<double>& shifts,
                            const std::vector<double>& radii) {
  require_common_grid(family, "duality_check");
  DualityReport report;
  report.shift_modulus = equicontinuity_modulus(family, shifts);

  std::vector<SampledFunction> transforms;
  transforms.reserve(family.size());
  double sup_norm = 0.0;
  for (const SampledFunction& f : family) {
    sup_norm = std::max(sup_norm, f.cached_norm);
    transforms.push_back(fourier(f));
  }
  report.dual_decay_modulus = decay_modulus(transforms, radii);

  // A shift by a is the phase e^{2 pi i a xi} on the transform side, so the
  // frequency mass inside [-R, R] moves by at most (2 pi a R) ||f|| while the
  // outside contributes at most twice its mass. Diagnostic only.
  for (const auto& [a, omega] : report.shift_modulus) {
    (void)omega;
    for (const auto& [R, rho] : report.dual_decay_modulus) {
      DualityReport::HeuristicRow row;
      row.a = a;
      row.R = R;
      const double phase = 2.0 * std::numbers::pi * a * R * sup_norm;
      row.bound = 2.0 * rho + phase * phase;
      report.heuristic.push_back(row);
    }
  }
  return report;
}

CompactnessProfile compactness_profile(const std::vector<SampledFunction>& family,
                                       const std::vector<double>& shifts,
                                       const std::vector<double>& radii) {
  require_common_grid(family, "compactness_profile");
  CompactnessProfile profile;
  profile.shift_modulus = equicontinuity_modulus(family, shifts);
  profile.decay_modulus = decay_modulus(family, radii);
  std::vector<SampledFunction> transforms;
  transforms.reserve(family.size());
  for (const SampledFunction& f : family) transforms.push_back(fourier(f));
  profile.dual_decay_modulus = decay_modulus(transforms, radii);
  return profile;
}

bool kaq_membership(const ConcentrationReport& report, double A) {
  return std::abs(report.time_mean) <= A && report.time_dispersion <= A &&
         std::abs(report.freq_mean) <= A && report.freq_dispersion <= A;
}

bool envelope_membership(const SampledFunction& f, const EnvelopePair& pair) {
  if (!f.grid.compatible(pair.time_envelope.grid))
    throw std::invalid_argument("envelope_membership: time grids differ");
  const SampledFunction fhat = fourier(f);
  if (!fhat.grid.compatible(pair.freq_envelope.grid))
    throw std::invalid_argument("envelope_membership: frequency grids differ");
  for (std::size_t k = 0; k < f.grid.n_points; ++k)
    if (std::abs(f.values[k]) > pair.time_envelope.values[k].real() + 1e-9) return false;
  for (std::size_t k = 0; k < fhat.grid.n_points; ++k)
    if (std::abs(fhat.values[k]) > pair.freq_envelope.values[k].real() + 1e-9)
      return false;
  return true;
}

double kaq_tail_bound(double A, double p, double R) {
  if (!(A > 0.0)) throw std::invalid_argument("kaq_tail_bound: A must be positive");
  if (!(p > 1.0)) throw std::invalid_argument("kaq_tail_bound: p must exceed 1");
  if (!(R > 2.0 * A))
    throw std::invalid_argument(
        "kaq_tail_bound: R must exceed 2A (otherwise |t - mean| >= R/2 can fail "
        "inside the tail)");
  return std::pow(2.0, p) * A * A / std::pow(R, p);
}

} // namespace tfconc
