#include "tfconc/systems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "tfconc/errors.hpp"
#include "tfconc/moments.hpp"

namespace tfconc {

namespace {

constexpr double kPi = std::numbers::pi;

// Re<g_{m,n}, g_{0,0}> for the unit Gaussian window; the overlap of two
// lattice atoms is (-1)^{mn} e^{-pi(m^2+n^2)/2} up to the modulation phase,
// which is trivial against the (0,0) atom.
double lattice_overlap(GaborIndex index) {
  const double mag =
      std::exp(-kPi * (static_cast<double>(index.m) * index.m +
                       static_cast<double>(index.n) * index.n) / 2.0);
  return ((index.m * index.n) % 2 != 0) ? -mag : mag;
}

} // namespace

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::gabor_full: return "gabor_full";
    case SystemKind::gabor_exact_G0: return "gabor_exact_G0";
    case SystemKind::perturbed_exact: return "perturbed_exact";
    case SystemKind::explicit_samples: return "explicit_samples";
  }
  throw std::invalid_argument("to_string: unknown system kind");
}

SystemKind system_kind_from_string(const std::string& s) {
  if (s == "gabor_full") return SystemKind::gabor_full;
  if (s == "gabor_exact_G0") return SystemKind::gabor_exact_G0;
  if (s == "perturbed_exact") return SystemKind::perturbed_exact;
  if (s == "explicit_samples") return SystemKind::explicit_samples;
  throw std::invalid_argument("system_kind_from_string: unknown kind '" + s + "'");
}

SampledFunction gaussian(const Grid& grid) {
  const double amp = std::pow(2.0, 0.25);
  return sample(grid, [amp](double t) -> Complex {
    return Complex{amp * std::exp(-kPi * t * t), 0.0};
  });
}

SampledFunction gabor_atom(const Grid& grid, GaborIndex index) {
  const double m = index.m;
  const double n = index.n;
  if (!(std::abs(n) + 4.0 < grid.extent / 2.0))
    throw out_of_window_error("gabor_atom: translation " + std::to_string(index.n) +
                              " leaves no margin inside the time window");
  if (!(std::abs(m) + 4.0 < grid.dual_extent / 2.0))
    throw out_of_window_error("gabor_atom: modulation " + std::to_string(index.m) +
                              " leaves no margin inside the frequency window");
  const double amp = std::pow(2.0, 0.25);
  return sample(grid, [amp, m, n](double t) -> Complex {
    const double u = t - n;
    return std::polar(amp * std::exp(-kPi * u * u), 2.0 * kPi * m * t);
  });
}

std::vector<GaborIndex> enumerate_full(std::size_t count) {
  std::vector<GaborIndex> out;
  out.reserve(count);
  for (int s = 0; out.size() < count; ++s) {
    if (s == 0) {
      out.push_back({0, 0});
      continue;
    }
    for (int m = -s; m <= s && out.size() < count; ++m)
      for (int n = -s; n <= s && out.size() < count; ++n)
        if (std::max(std::abs(m), std::abs(n)) == s) out.push_back({m, n});
  }
  return out;
}

SystemSpec enumerate_exact_G0(std::size_t count) {
  SystemSpec spec;
  spec.kind = SystemKind::gabor_exact_G0;
  spec.count = count;
  spec.indices.reserve(count);
  for (int s = 0; spec.indices.size() < count; ++s) {
    if (s == 0) {
      spec.indices.push_back({0, 0});
      continue;
    }
    for (int m = -s; m <= s && spec.indices.size() < count; ++m)
      for (int n = -s; n <= s && spec.indices.size() < count; ++n) {
        if (std::max(std::abs(m), std::abs(n)) != s) continue;
        if (m == 1 && n == 1) continue;
        spec.indices.push_back({m, n});
      }
  }
  return spec;
}

PerturbedSystem build_perturbed_exact(const Grid& grid, std::size_t count,
                                      double epsilon, double p, double q) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("build_perturbed_exact: epsilon must be positive");
  // The mean search resolves minimizers to 1e-10 at best, so admissibility
  // below that cannot be certified on any grid.
  if (epsilon < 1e-9)
    throw construction_failure(
        "build_perturbed_exact: epsilon is below the 1e-9 certification floor of "
        "the mean search",
        "|time_mean| < epsilon");
  if (count == 0)
    throw std::invalid_argument("build_perturbed_exact: count must be positive");
  if (!(p > 1.0) || !(q > 1.0))
    throw unsupported_exponent("build_perturbed_exact: exponents must exceed 1");

  const SystemSpec enumeration = enumerate_exact_G0(count + 1);
  const SampledFunction e1 = gabor_atom(grid, enumeration.indices[0]);
  const ConcentrationReport g_report = concentration_report(e1, p, q);

  PerturbedSystem out;
  out.spec.kind = SystemKind::perturbed_exact;
  out.spec.count = count;
  out.spec.epsilon = epsilon;
  out.spec.indices = enumeration.indices;
  out.spec.alphas.reserve(count);
  out.elements.reserve(count);

  for (std::size_t n = 1; n <= count; ++n) {
    const SampledFunction e_next = gabor_atom(grid, enumeration.indices[n]);
    double alpha = std::min(std::pow(2.0, -static_cast<double>(n)), 0.08) / 2.0;
    std::string violated;
    bool accepted = false;
    for (int iter = 0; iter <= 60; ++iter) {
      ComplexVector values(grid.n_points);
      for (std::size_t k = 0; k < grid.n_points; ++k)
        values[k] = e1.values[k] + alpha * e_next.values[k];
      const SampledFunction f = normalized(make_function(grid, std::move(values)));
      const ConcentrationReport r = concentration_report(f, p, q);
      if (std::abs(r.time_mean) >= epsilon)
        violated = "|time_mean| < epsilon";
      else if (std::abs(r.freq_mean) >= epsilon)
        violated = "|freq_mean| < epsilon";
      else if (!(r.time_dispersion < g_report.time_dispersion + epsilon))
        violated = "time_dispersion < reference + epsilon";
      else if (!(r.freq_dispersion < g_report.freq_dispersion + epsilon))
        violated = "freq_dispersion < reference + epsilon";
      else {
        out.spec.alphas.push_back(alpha);
        out.elements.push_back(f);
        accepted = true;
        break;
      }
      alpha /= 2.0;
    }
    if (!accepted)
      throw construction_failure("build_perturbed_exact: element " + std::to_string(n) +
                                     " not admissible after 60 halvings",
                                 violated);
  }
  return out;
}

EnvelopePair envelopes(const std::vector<SampledFunction>& system) {
  if (system.empty())
    throw std::invalid_argument("envelopes: empty system");
  const Grid& grid = system.front().grid;
  for (const SampledFunction& f : system)
    if (!f.grid.compatible(grid))
      throw std::invalid_argument("envelopes: elements live on different grids");

  ComplexVector time_sup(grid.n_points, Complex{0.0, 0.0});
  for (const SampledFunction& f : system)
    for (std::size_t k = 0; k < grid.n_points; ++k)
      time_sup[k] = Complex{std::max(time_sup[k].real(), std::abs(f.values[k])), 0.0};

  const Grid dual = grid.dual();
  ComplexVector freq_sup(grid.n_points, Complex{0.0, 0.0});
  for (const SampledFunction& f : system) {
    const SampledFunction fhat = fourier(f);
    for (std::size_t k = 0; k < grid.n_points; ++k)
      freq_sup[k] = Complex{std::max(freq_sup[k].real(), std::abs(fhat.values[k])), 0.0};
  }

  EnvelopePair pair;
  pair.time_envelope = make_function(grid, std::move(time_sup));
  pair.freq_envelope = make_function(dual, std::move(freq_sup));
  pair.time_envelope_norm = pair.time_envelope.cached_norm;
  pair.freq_envelope_norm = pair.freq_envelope.cached_norm;
  return pair;
}

SampledFunction reconstruct_e(const PerturbedSystem& system, std::size_t n) {
  const SystemSpec& spec = system.spec;
  if (spec.kind != SystemKind::perturbed_exact)
    throw std::invalid_argument("reconstruct_e: system kind must be perturbed_exact");
  if (n == 0 || n > system.elements.size() || n > spec.alphas.size())
    throw std::invalid_argument("reconstruct_e: element ordinal out of range");
  if (spec.indices.size() <= n)
    throw std::invalid_argument("reconstruct_e: spec lacks the companion index");

  const SampledFunction& f = system.elements[n - 1];
  const double alpha = spec.alphas[n - 1];
  if (!(alpha > 0.0))
    throw std::invalid_argument("reconstruct_e: alpha must be positive");
  const SampledFunction e1 = gabor_atom(f.grid, spec.indices[0]);

  // beta = ||e_1 + alpha e_{n+1}|| = sqrt(1 + 2 alpha c + alpha^2) with
  // c = Re<e_{n+1}, e_1>, known in closed form from the lattice index. Solving
  // the quadratic beta^2 - 2 beta Re<f, e_1> + 1 - alpha^2 = 0 instead would
  // lose the discriminant alpha^2 (c + alpha)^2 / beta^2 to cancellation once
  // alpha is small, and the 1/alpha below would amplify that into the result.
  const double c = lattice_overlap(spec.indices[n]);
  const double beta = std::sqrt(1.0 + alpha * (2.0 * c + alpha));

  ComplexVector values(f.grid.n_points);
  for (std::size_t k = 0; k < f.grid.n_points; ++k)
    values[k] = (beta * f.values[k] - e1.values[k]) / alpha;
  return make_function(f.grid, std::move(values));
}

} // namespace tfconc
