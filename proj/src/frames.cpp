#include "tfconc/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "tfconc/compactness.hpp"
#include "tfconc/errors.hpp"

namespace tfconc {

namespace {

void require_hermitian(const ComplexMatrix& gram, const char* who) {
  if (gram.rows() != gram.cols())
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  const double defect = (gram - gram.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-9)
    throw std::invalid_argument(std::string(who) + ": matrix is not hermitian (defect " +
                                std::to_string(defect) + ")");
}

Eigen::VectorXd gram_eigenvalues(const ComplexMatrix& gram) {
  const ComplexMatrix sym = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw numeric_domain_error("frame_bounds_finite: eigenvalue iteration failed");
  return solver.eigenvalues();
}

} // namespace

ComplexMatrix gram_matrix(const std::vector<SampledFunction>& system) {
  if (system.empty()) throw std::invalid_argument("gram_matrix: empty system");
  for (const SampledFunction& f : system)
    if (!f.grid.compatible(system.front().grid))
      throw std::invalid_argument("gram_matrix: elements live on different grids");
  const auto k = static_cast<Eigen::Index>(system.size());
  ComplexMatrix gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    gram(i, i) = inner_product(system[static_cast<std::size_t>(i)],
                               system[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const Complex v = inner_product(system[static_cast<std::size_t>(i)],
                                      system[static_cast<std::size_t>(j)]);
      gram(i, j) = v;
      gram(j, i) = std::conj(v);
    }
  }
  return gram;
}

std::pair<double, double> frame_bounds_finite(const ComplexMatrix& gram) {
  require_hermitian(gram, "frame_bounds_finite");
  const Eigen::VectorXd evals = gram_eigenvalues(gram);
  const double lambda_max = evals.maxCoeff();
  if (evals.minCoeff() < -1e-9)
    throw std::invalid_argument("frame_bounds_finite: matrix is not positive "
                                "semidefinite within 1e-9");
  if (lambda_max <= 0.0) return {0.0, 0.0};
  // Eigenvalues at the numerical-zero floor are exact linear dependences of
  // the system: coefficient-space kernel directions, not directions of the
  // span. The optimal constants on the span come from the nonzero spectrum.
  const double floor = 1e-10 * lambda_max;
  double lambda_min = lambda_max;
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    if (evals(i) > floor) lambda_min = std::min(lambda_min, evals(i));
  return {lambda_min, lambda_max};
}

FrameDiagnostics frame_diagnostics(const ComplexMatrix& gram) {
  FrameDiagnostics d;
  const auto [lower, upper] = frame_bounds_finite(gram);
  d.lower_bound_est = lower;
  d.upper_bound_est = upper;
  const Eigen::VectorXd evals = gram_eigenvalues(gram);
  d.smallest_singular_value = evals.cwiseAbs().minCoeff();
  d.section_size = static_cast<std::size_t>(gram.rows());
  return d;
}

RSCheck rs_check(const std::vector<SampledFunction>& system,
                 const std::vector<SampledFunction>& tests, double r, double s) {
  if (system.empty()) throw std::invalid_argument("rs_check: empty system");
  if (tests.empty()) throw std::invalid_argument("rs_check: empty test set");
  if (!(r > 0.0) || !(s > 0.0))
    throw std::invalid_argument("rs_check: exponents must be positive");
  for (const SampledFunction& f : tests)
    if (std::abs(f.cached_norm - 1.0) > 1e-6)
      throw std::invalid_argument("rs_check: test functions must have unit norm");

  RSCheck check;
  check.r = r;
  check.s = s;
  check.lower_const_est = std::numeric_limits<double>::infinity();
  check.upper_const_est = 0.0;

  for (std::size_t t = 0; t < tests.size(); ++t) {
    double sum_r = 0.0, sum_s = 0.0;
    for (const SampledFunction& e : system) {
      const double mag = std::abs(inner_product(tests[t], e));
      sum_r += std::pow(mag, r);
      sum_s += std::pow(mag, s);
    }
    const double coeff_r = std::pow(sum_r, 1.0 / r);
    const double coeff_s = std::pow(sum_s, 1.0 / s);
    if (coeff_r <= 1e-14) {
      check.zero_coefficient_witnesses.push_back(t);
      check.upper_const_est = std::numeric_limits<double>::infinity();
    } else {
      check.upper_const_est =
          std::max(check.upper_const_est, tests[t].cached_norm / coeff_r);
    }
    if (coeff_s > 1e-14)
      check.lower_const_est =
          std::min(check.lower_const_est, tests[t].cached_norm / coeff_s);
  }
  return check;
}

double tail_sum(double N, double A, double c, double p, double q, double r,
                std::size_t n_max) {
  if (!(q * r > 2.0))
    throw hypothesis_violation("tail_sum: requires q r > 2 (the series may diverge)");
  if (!(N > A)) throw std::invalid_argument("tail_sum: requires N > A");
  if (!(A >= 0.0)) throw std::invalid_argument("tail_sum: A must be nonnegative");
  if (!(c > 0.0)) throw std::invalid_argument("tail_sum: c must be positive");
  if (!(p > 1.0) || !(q > 1.0))
    throw std::invalid_argument("tail_sum: exponents p, q must exceed 1");
  if (!(r > 0.0)) throw std::invalid_argument("tail_sum: r must be positive");
  if (n_max == 0) throw std::invalid_argument("tail_sum: n_max must be positive");

  const double base = std::pow(N - A, p / 2.0);
  const auto term = [&](double x) {
    return std::pow(base + std::pow(c * x, q / 2.0), -r);
  };

  double partial = 0.0;
  for (std::size_t n = n_max; n >= 1; --n) partial += term(static_cast<double>(n));

  // Remainder past n_max: the summand is decreasing, so the series tail is at
  // most the integral from n_max on. That integral is itself bounded above by
  // left Riemann sums on a geometric partition, finished off with the pure
  // power tail (dropping the constant term in the denominator only enlarges
  // the integrand).
  const double power = q * r / 2.0; // > 1 by hypothesis
  const auto analytic_tail = [&](double x) {
    return std::pow(c, -power) * std::pow(x, 1.0 - power) / (power - 1.0);
  };
  const double ratio = 1.001;
  double x = static_cast<double>(n_max);
  double remainder = 0.0;
  for (int step = 0; step < 50000; ++step) {
    if (analytic_tail(x) <= 1e-12 * (partial + remainder)) break;
    remainder += term(x) * x * (ratio - 1.0);
    x *= ratio;
  }
  remainder += analytic_tail(x);
  return partial + remainder;
}

ObstructionReport obstruction_report(const std::vector<SampledFunction>& system,
                                     const std::vector<GaborIndex>& indices,
                                     double p, double q, double r, double s,
                                     double A, std::uint64_t seed) {
  if (system.empty()) throw std::invalid_argument("obstruction_report: empty system");
  if (!indices.empty() && indices.size() != system.size())
    throw std::invalid_argument(
        "obstruction_report: index labels must match the system size");
  if (!(A > 0.0)) throw std::invalid_argument("obstruction_report: A must be positive");

  ObstructionReport out;
  out.elements.reserve(system.size());
  std::vector<double> freq_means;
  freq_means.reserve(system.size());
  bool all_boxed = true;
  for (std::size_t n = 0; n < system.size(); ++n) {
    ObstructionElement element;
    element.ordinal = n + 1;
    if (!indices.empty()) element.index = indices[n];
    element.report = concentration_report(system[n], p, q);
    element.mean_ok = std::abs(element.report.time_mean) <= A;
    element.time_disp_ok = element.report.time_dispersion <= A;
    element.freq_disp_ok = element.report.freq_dispersion <= A;
    element.kaq_ok = kaq_membership(element.report, A);
    all_boxed = all_boxed && element.kaq_ok;
    freq_means.push_back(element.report.freq_mean);
    out.elements.push_back(std::move(element));
  }
  out.growth_certificate = growth_certificate(freq_means);
  out.evasion_flag = all_boxed;

  if (!out.evasion_flag) {
    out.narrative =
        "Some elements leave the concentration box of size A: the bounded-"
        "concentration obstruction does not apply to this system as given.";
    return out;
  }

  out.narrative =
      "Every element keeps both means and both dispersions within A. A family "
      "locked in such a box has uniformly small tails in both domains, so its "
      "closed span cannot exhaust L2: no completion of it admits the two-sided "
      "(l^r, l^s) coefficient inequality, and in particular it can be neither "
      "a frame nor a basis of that kind for the full space.";

  // Empirical constants over a deterministic test family: the elements, a few
  // seeded unit combinations from the span, and whatever unit lattice atoms
  // fit the window.
  std::vector<SampledFunction> tests;
  for (const SampledFunction& f : system)
    if (std::abs(f.cached_norm - 1.0) <= 1e-6) tests.push_back(f);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Grid& grid = system.front().grid;
  for (int combo = 0; combo < 8; ++combo) {
    ComplexVector values(grid.n_points, Complex{0.0, 0.0});
    for (const SampledFunction& f : system) {
      const Complex w{gauss(rng), gauss(rng)};
      for (std::size_t k = 0; k < grid.n_points; ++k) values[k] += w * f.values[k];
    }
    SampledFunction mixed = make_function(grid, std::move(values));
    if (mixed.cached_norm > 1e-12) tests.push_back(normalized(mixed));
  }
  for (int j = 1; j <= 3; ++j) {
    for (const GaborIndex idx : {GaborIndex{0, j}, GaborIndex{j, 0}}) {
      try {
        tests.push_back(gabor_atom(grid, idx));
      } catch (const out_of_window_error&) {
      }
    }
  }
  out.rs = rs_check(system, tests, r, s);
  return out;
}

} // namespace tfconc
