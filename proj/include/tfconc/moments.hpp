#pragma once

#include <vector>

#include "tfconc/grid.hpp"

namespace tfconc {

struct ConcentrationReport {
  double p = 2.0;
  double q = 2.0;
  double time_mean = 0.0;
  double time_dispersion = 0.0;
  double freq_mean = 0.0;
  double freq_dispersion = 0.0;
  double heisenberg_product = 0.0; // time_dispersion * freq_dispersion
};

// phi(a) = integral |t - a|^p |h(t)|^2 dt by Riemann sum. For non-even p the
// integrand has a kink at t = a whose grid-phase ripple would bias the argmin;
// the sum is compensated by subtracting a local analytic model of the kink and
// adding back its closed-form integral. Requires p > 0, a finite, h unit-norm
// within 1e-6.
double moment_objective(const SampledFunction& h, double p, double a);

// argmin_a of moment_objective, located by golden-section search on the
// support hull of |h| (amplitude above 1e-14), interval tolerance 1e-10.
// Requires p > 1: strict convexity. For p <= 1 throws unsupported_exponent
// (the objective can be flat: two far bumps admit an interval of minimizers).
double p_mean(const SampledFunction& h, double p);

// sqrt of the objective value at the p-mean (the square root is taken for
// every p).
double p_dispersion(const SampledFunction& h, double p);

// Time statistics of f plus frequency statistics of fourier(f), exponents p
// and q, and the dispersion product.
ConcentrationReport concentration_report(const SampledFunction& f, double p, double q);

struct ProbePoint {
  double alpha = 0.0;
  ConcentrationReport report;
  double step2_bound = 0.0;     // 2 (4 Delta_p^2(f))^{1/p}
  bool step2_applicable = false; // |alpha| <= 0.08
  bool step2_ok = false;         // |mu_p(h_a) - mu_p(f)| <= step2_bound
};

// Reports h_alpha = (f + alpha g)/||f + alpha g|| for each alpha, with the
// mean-stability certificate evaluated wherever |alpha| <= 0.08. Requires
// |alpha| < 1 and unit-norm f, g.
std::vector<ProbePoint> convergence_probe(const SampledFunction& f,
                                          const SampledFunction& g,
                                          const std::vector<double>& alphas,
                                          double p, double q);

} // namespace tfconc
