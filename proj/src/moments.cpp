#include "tfconc/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tfconc/errors.hpp"

namespace tfconc {

namespace {

void require_unit_norm(const SampledFunction& h, const char* who) {
  if (std::abs(h.cached_norm - 1.0) > 1e-6)
    throw std::invalid_argument(std::string(who) + ": argument must have unit norm");
}

// Solves the 4x4 system A c = z by Gaussian elimination with partial pivoting.
std::array<double, 4> solve4(std::array<std::array<double, 4>, 4> A,
                             std::array<double, 4> z) {
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
    std::swap(A[col], A[pivot]);
    std::swap(z[col], z[pivot]);
    if (A[col][col] == 0.0)
      throw numeric_domain_error("moment_objective: degenerate kink fit");
    for (int r = col + 1; r < 4; ++r) {
      const double m = A[r][col] / A[col][col];
      for (int c = col; c < 4; ++c) A[r][c] -= m * A[col][c];
      z[r] -= m * z[col];
    }
  }
  std::array<double, 4> c{};
  for (int r = 3; r >= 0; --r) {
    double s = z[r];
    for (int k = r + 1; k < 4; ++k) s -= A[r][k] * c[k];
    c[r] = s / A[r][r];
  }
  return c;
}

bool is_even_integer(double p) {
  const double r = std::round(p);
  return std::abs(p - r) < 1e-12 && std::fmod(r, 2.0) == 0.0;
}

// Golden-section minimizer; the objective must be unimodal on [lo, hi].
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Convex hull of the essential support of |h| (samples above 1e-14).
std::pair<double, double> support_hull(const SampledFunction& h) {
  const std::size_t n = h.grid.n_points;
  std::size_t lo = n, hi = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(h.values[k]) > 1e-14) {
      if (lo == n) lo = k;
      hi = k;
    }
  }
  if (lo == n)
    throw numeric_domain_error("p_mean: function vanishes everywhere above 1e-14");
  return {h.grid.point(lo), h.grid.point(hi)};
}

} // namespace

double moment_objective(const SampledFunction& h, double p, double a) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw unsupported_exponent("moment_objective: exponent must be a positive real");
  if (!std::isfinite(a))
    throw std::invalid_argument("moment_objective: center must be finite");
  require_unit_norm(h, "moment_objective");

  const Grid& g = h.grid;
  const double dt = g.spacing;
  const std::size_t n = g.n_points;

  double plain = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    plain += std::pow(std::abs(g.point(k) - a), p) * std::norm(h.values[k]);
  plain *= dt;
  // For even integer p the integrand is a polynomial times |h|^2: smooth, so
  // the Riemann sum already has spectral accuracy on decaying data.
  if (is_even_integer(p)) return plain;

  // |t - a|^p has a kink at t = a. Its grid-phase ripple is O(dt^{p+1}) but
  // moves with a, which is enough to bias an argmin below 1e-6. Fit the local
  // weight w = |h|^2 by w(x) ~ (c0 + c1 x + c2 x^2 + c3 x^3) e^{-x^2/(2 s^2)},
  // x = t - a, through the four nodes nearest a, then replace the sampled sum
  // of the model kink with its exact integral.
  const double sigma = 8.0 * dt;
  const auto j_near = static_cast<long>(std::llround((a - g.point(0)) / dt));
  const std::size_t j0 = static_cast<std::size_t>(
      std::clamp<long>(j_near, 2, static_cast<long>(n) - 3));

  std::array<std::array<double, 4>, 4> A{};
  std::array<double, 4> z{};
  for (int i = 0; i < 4; ++i) {
    const std::size_t k = j0 - 1 + static_cast<std::size_t>(i);
    const double x = g.point(k) - a;
    double xp = 1.0;
    for (int j = 0; j < 4; ++j) {
      A[i][j] = xp;
      xp *= x;
    }
    z[i] = std::norm(h.values[k]) * std::exp(x * x / (2.0 * sigma * sigma));
  }
  const std::array<double, 4> c = solve4(A, z);

  const auto K = static_cast<std::size_t>(std::ceil(10.0 * sigma / dt));
  const std::size_t k_lo = (j0 > K) ? j0 - K : 0;
  const std::size_t k_hi = std::min(n - 1, j0 + K);
  double model_sum = 0.0;
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    const double x = g.point(k) - a;
    const double poly = c[0] + x * (c[1] + x * (c[2] + x * c[3]));
    model_sum += std::pow(std::abs(x), p) * poly * std::exp(-x * x / (2.0 * sigma * sigma));
  }
  model_sum *= dt;

  // integral of |x|^p x^j e^{-x^2/(2 s^2)} over the line: zero for odd j,
  // (2 s^2)^{(p+j+1)/2} Gamma((p+j+1)/2) for even j.
  double model_integral = 0.0;
  for (int j = 0; j < 4; j += 2)
    model_integral += c[static_cast<std::size_t>(j)] *
                      std::pow(2.0 * sigma * sigma, (p + j + 1.0) / 2.0) *
                      std::tgamma((p + j + 1.0) / 2.0);

  return plain - model_sum + model_integral;
}

double p_mean(const SampledFunction& h, double p) {
  if (!(p > 1.0))
    throw unsupported_exponent(
        "p_mean: exponent must exceed 1 (otherwise the objective can be flat and "
        "the minimizer non-unique)");
  require_unit_norm(h, "p_mean");
  const auto [lo, hi] = support_hull(h);
  if (hi - lo <= 1e-10) return 0.5 * (lo + hi);
  const double mid =
      golden_min([&](double a) { return moment_objective(h, p, a); }, lo, hi, 1e-10);
  if (!is_even_integer(p)) return mid;

  // Value-only search cannot localize a minimum past the square root of the
  // evaluation noise. For even integer p the objective's derivative has a
  // smooth polynomial integrand, so a Newton polish on the root reaches
  // machine precision.
  const std::size_t n = h.grid.n_points;
  double a = mid;
  for (int iter = 0; iter < 50; ++iter) {
    double g = 0.0, slope = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = h.grid.point(k) - a;
      const double w = std::norm(h.values[k]);
      g -= p * std::pow(d, p - 1.0) * w;
      slope += p * (p - 1.0) * std::pow(d, p - 2.0) * w;
    }
    if (!(slope > 0.0)) break;
    const double step = g / slope;
    a -= step;
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(a))) break;
  }
  return std::min(std::max(a, lo), hi);
}

double p_dispersion(const SampledFunction& h, double p) {
  return std::sqrt(moment_objective(h, p, p_mean(h, p)));
}

ConcentrationReport concentration_report(const SampledFunction& f, double p, double q) {
  ConcentrationReport r;
  r.p = p;
  r.q = q;
  r.time_mean = p_mean(f, p);
  r.time_dispersion = std::sqrt(moment_objective(f, p, r.time_mean));
  const SampledFunction fhat = fourier(f);
  r.freq_mean = p_mean(fhat, q);
  r.freq_dispersion = std::sqrt(moment_objective(fhat, q, r.freq_mean));
  r.heisenberg_product = r.time_dispersion * r.freq_dispersion;
  return r;
}

std::vector<ProbePoint> convergence_probe(const SampledFunction& f,
                                          const SampledFunction& g,
                                          const std::vector<double>& alphas,
                                          double p, double q) {
  require_unit_norm(f, "convergence_probe");
  require_unit_norm(g, "convergence_probe");
  if (!f.grid.compatible(g.grid))
    throw std::invalid_argument("convergence_probe: incompatible grids");

  const double f_mean = p_mean(f, p);
  const double f_disp_sq = moment_objective(f, p, f_mean);
  const double bound = 2.0 * std::pow(4.0 * f_disp_sq, 1.0 / p);

  std::vector<ProbePoint> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    if (!(std::abs(alpha) < 1.0))
      throw std::invalid_argument("convergence_probe: require |alpha| < 1");
    ComplexVector values(f.grid.n_points);
    for (std::size_t k = 0; k < f.grid.n_points; ++k)
      values[k] = f.values[k] + alpha * g.values[k];
    const SampledFunction h = normalized(make_function(f.grid, std::move(values)));

    ProbePoint point;
    point.alpha = alpha;
    point.report = concentration_report(h, p, q);
    point.step2_bound = bound;
    point.step2_applicable = std::abs(alpha) <= 0.08;
    point.step2_ok = point.step2_applicable &&
                     std::abs(point.report.time_mean - f_mean) <= bound;
    out.push_back(point);
  }
  return out;
}

} // namespace tfconc
