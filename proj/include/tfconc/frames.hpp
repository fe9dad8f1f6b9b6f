#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tfconc/moments.hpp"
#include "tfconc/separation.hpp"
#include "tfconc/systems.hpp"

namespace tfconc {

// Gram(i,j) = <e_i, e_j>; Hermitian by construction.
ComplexMatrix gram_matrix(const std::vector<SampledFunction>& system);

// Optimal constants of A||f||^2 <= sum_n |<f,e_n>|^2 <= B||f||^2 on the span:
// the extreme nonzero eigenvalues of the Gram. Eigenvalues below
// 1e-10 * lambda_max are exact linear dependences (coefficient kernels, not
// span directions) and are excluded; a duplicated orthonormal basis therefore
// reports (2, 2). Requires a Hermitian input (tolerance 1e-9).
std::pair<double, double> frame_bounds_finite(const ComplexMatrix& gram);

struct FrameDiagnostics {
  double lower_bound_est = 0.0;
  double upper_bound_est = 0.0;
  // Raw smallest eigenvalue magnitude of the Gram: a minimality proxy that,
  // unlike the frame bounds, does see exact dependences.
  double smallest_singular_value = 0.0;
  std::size_t section_size = 0;
};

FrameDiagnostics frame_diagnostics(const ComplexMatrix& gram);

struct RSCheck {
  double r = 2.0;
  double s = 2.0;
  // Best constants over the test family for
  //   B (sum |<f,e_n>|^s)^{1/s} <= ||f|| <= C (sum |<f,e_n>|^r)^{1/r}:
  // B = min ratio, C = max ratio of ||f|| to the coefficient norm.
  double lower_const_est = 0.0;
  double upper_const_est = 0.0;
  // Test functions whose r-coefficient norm vanished while ||f|| > 0: no
  // finite C exists; upper_const_est is +infinity when nonempty.
  std::vector<std::size_t> zero_coefficient_witnesses;
};

RSCheck rs_check(const std::vector<SampledFunction>& system,
                 const std::vector<SampledFunction>& tests, double r, double s);

// Upper estimate of sum_{n=1}^inf (|N - A|^{p/2} + |c n|^{q/2})^{-r}:
// partial sum to n_max plus the integral-comparison remainder
// int_{n_max}^inf (|N-A|^{p/2} + (c x)^{q/2})^{-r} dx, itself bounded from
// above (left Riemann sums on a geometric partition plus a power tail).
// Requires q r > 2 (else the series may diverge: hypothesis_violation),
// N > A and c > 0 (else std::invalid_argument).
double tail_sum(double N, double A, double c, double p, double q, double r,
                std::size_t n_max);

struct ObstructionElement {
  std::size_t ordinal = 0;               // 1-based position in the system
  std::optional<GaborIndex> index;       // lattice label when available
  ConcentrationReport report;
  bool mean_ok = false;      // |time_mean| <= A
  bool time_disp_ok = false; // time_dispersion <= A
  bool freq_disp_ok = false; // freq_dispersion <= A
  bool kaq_ok = false;       // all four caps, including |freq_mean| <= A
};

struct ObstructionReport {
  std::vector<ObstructionElement> elements;
  double growth_certificate = 0.0; // over the |freq_mean| sequence
  // Raised when every element passes all four caps: the system sits inside a
  // compact concentration class, so no extension complete in L2 can satisfy
  // the (l^r, l^s) coefficient inequality; in particular it can be neither a
  // frame nor a Schauder basis arising from such an inequality.
  bool evasion_flag = false;
  std::string narrative;
  std::optional<RSCheck> rs; // empirical constants when the flag is raised
};

// Per-element concentration statistics against cap A, the growth certificate
// of the frequency means, and the narrative flag. When the flag is raised the
// (r,s) constants are estimated over a default test family (the elements,
// random span combinations, translated/modulated Gaussians; seeded RNG).
ObstructionReport obstruction_report(const std::vector<SampledFunction>& system,
                                     const std::vector<GaborIndex>& indices,
                                     double p, double q, double r, double s,
                                     double A, std::uint64_t seed = 0);

} // namespace tfconc
