#pragma once

#include <utility>
#include <vector>

#include "tfconc/grid.hpp"
#include "tfconc/moments.hpp"
#include "tfconc/systems.hpp"

namespace tfconc {

// omega(a) = max over the family of ||f(. + a) - f||_2^2, realized as a
// circular shift on the periodic grid. Shifts must be integer multiples of
// the grid spacing (no interpolation is performed); misaligned shifts throw
// std::invalid_argument. Returns (a, omega(a)) pairs.
std::vector<std::pair<double, double>>
equicontinuity_modulus(const std::vector<SampledFunction>& family,
                       const std::vector<double>& shifts);

// rho(R) = max over the family of tail_mass(f, R). Returns (R, rho(R)) pairs,
// nonincreasing in R.
std::vector<std::pair<double, double>>
decay_modulus(const std::vector<SampledFunction>& family,
              const std::vector<double>& radii);

struct DualityReport {
  std::vector<std::pair<double, double>> shift_modulus;      // omega, family
  std::vector<std::pair<double, double>> dual_decay_modulus; // rho, transforms
  struct HeuristicRow {
    double a = 0.0;
    double R = 0.0;
    double bound = 0.0; // 2 rho(R) + (2 pi a R)^2 (sup of norms)^2
  };
  std::vector<HeuristicRow> heuristic; // diagnostic only, never asserted
};

// Equicontinuity of the family side by side with the decay of the transformed
// family: small shifts act as phases e^{2 pi i a xi} on the frequency side, so
// frequency decay controls time equicontinuity. The heuristic column shows
// that quantitative link for inspection.
DualityReport duality_check(const std::vector<SampledFunction>& family,
                            const std::vector<double>& shifts,
                            const std::vector<double>& radii);

struct CompactnessProfile {
  std::vector<std::pair<double, double>> shift_modulus;
  std::vector<std::pair<double, double>> decay_modulus;
  std::vector<std::pair<double, double>> dual_decay_modulus;
};

CompactnessProfile compactness_profile(const std::vector<SampledFunction>& family,
                                       const std::vector<double>& shifts,
                                       const std::vector<double>& radii);

// Membership in the concentration class with cap A: |time_mean| <= A,
// time_dispersion <= A, |freq_mean| <= A, freq_dispersion <= A.
bool kaq_membership(const ConcentrationReport& report, double A);

// |f| <= time envelope and |f^| <= frequency envelope pointwise (tolerance
// 1e-9).
bool envelope_membership(const SampledFunction& f, const EnvelopePair& pair);

// Tail bound 2^p A^2 / R^p valid for every member of the cap-A class when
// R > 2A; otherwise std::invalid_argument (the bound is vacuous there).
double kaq_tail_bound(double A, double p, double R);

} // namespace tfconc
