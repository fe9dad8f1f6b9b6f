// Acceptance harness: twelve numbered checks, one line each, nonzero exit on
// any failure. Tolerances are stated inline next to every comparison.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "fixtures.hpp"
#include "tfconc/compactness.hpp"
#include "tfconc/errors.hpp"
#include "tfconc/frames.hpp"
#include "tfconc/grid.hpp"
#include "tfconc/moments.hpp"
#include "tfconc/separation.hpp"
#include "tfconc/systems.hpp"

using namespace tfconc;
using Json = nlohmann::ordered_json;

namespace {

int g_failures = 0;

void report(int number, const char* name, bool ok, const std::string& detail) {
  std::printf("%2d %-44s %s  %s\n", number, name, ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(const char* pattern, ...) {
  char buffer[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buffer, sizeof buffer, pattern, args);
  va_end(args);
  return buffer;
}

// 1. The gaussian minimizes the dispersion product; nothing beats the floor.
void criterion_heisenberg(const Grid& grid) {
  const ConcentrationReport g_report = concentration_report(gaussian(grid), 2.0, 2.0);
  bool ok = std::abs(g_report.heisenberg_product - fixtures::ref::inv_4pi) <= 1e-6;

  std::mt19937_64 rng(101);
  double floor_margin = 1e9;
  for (int trial = 0; trial < 50; ++trial) {
    const SampledFunction f = fixtures::random_mixture(grid, rng);
    const double product = concentration_report(f, 2.0, 2.0).heisenberg_product;
    floor_margin = std::min(floor_margin, product - fixtures::ref::inv_4pi);
  }
  ok = ok && floor_margin >= -1e-6;
  report(1, "dispersion product floor 1/(4 pi)", ok,
         fmt("gaussian %.9f, worst margin %.2e (tol 1e-6)", g_report.heisenberg_product,
             floor_margin));
}

// 2. Means follow translations, dispersions ignore them, symmetry pins zero.
void criterion_covariance(const Grid& grid) {
  const SampledFunction base = normalized(sample(grid, [](double t) -> Complex {
    return std::exp(-M_PI * t * t) + 0.6 * std::exp(-M_PI * (t - 1.0) * (t - 1.0));
  }));
  double worst_mean = 0.0, worst_disp = 0.0;
  for (double p : {1.5, 2.0, 3.0}) {
    const double mean = p_mean(base, p);
    const double disp = p_dispersion(base, p);
    for (double s : {-2.0, 0.3, 5.0}) {
      const SampledFunction moved = normalized(sample(grid, [s](double t) -> Complex {
        const double u = t - s;
        return std::exp(-M_PI * u * u) + 0.6 * std::exp(-M_PI * (u - 1.0) * (u - 1.0));
      }));
      worst_mean = std::max(worst_mean, std::abs(p_mean(moved, p) - mean - s));
      worst_disp = std::max(worst_disp, std::abs(p_dispersion(moved, p) - disp));
    }
  }

  const SampledFunction even = normalized(sample(grid, [](double t) -> Complex {
    return std::exp(-M_PI * t * t) + 0.4 * std::exp(-M_PI * (t - 1.5) * (t - 1.5)) +
           0.4 * std::exp(-M_PI * (t + 1.5) * (t + 1.5));
  }));
  const SampledFunction odd = normalized(
      sample(grid, [](double t) -> Complex { return t * std::exp(-M_PI * t * t); }));
  double worst_symmetry = 0.0;
  for (double p : {1.5, 2.0, 3.0}) {
    worst_symmetry = std::max(worst_symmetry, std::abs(p_mean(even, p)));
    worst_symmetry = std::max(worst_symmetry, std::abs(p_mean(odd, p)));
  }

  const bool ok = worst_mean <= 1e-6 && worst_disp <= 1e-6 && worst_symmetry <= 1e-7;
  report(2, "translation covariance and symmetry", ok,
         fmt("shift defect %.2e, dispersion drift %.2e (tol 1e-6), symmetry %.2e (tol 1e-7)",
             worst_mean, worst_disp, worst_symmetry));
}

// 3. Two plateaus whose far half escapes: the mean runs away as s shrinks.
void criterion_escaping_means() {
  const Grid wide = make_grid(64.0, 8192);
  auto psi = [&wide](double s) {
    const double gap = std::pow(s, -4.0);
    const auto near = indicator(-0.5, 0.5);
    const auto far = indicator(gap, gap + 1.0);
    return normalized(sample(wide, [&](double t) -> Complex {
      return std::sqrt(1.0 - s) * near(t) + std::sqrt(s) * far(t);
    }));
  };

  const double at_half = p_mean(psi(0.5), 2.0);
  bool ok = std::abs(at_half - 8.25) <= 1e-3;

  double previous = -1e9;
  for (double s : {0.7, 0.6, 0.5}) {
    const double mean = p_mean(psi(s), 2.0);
    ok = ok && mean > previous;
    previous = mean;
  }
  report(3, "escaping second means", ok,
         fmt("mean at s=1/2 is %.6f (want 8.25 +- 1e-3), increasing toward it", at_half));
}

// 4. Flat objective across the gap between two bumps; the search refuses p=1.
void criterion_flat_minimum(const Grid& grid) {
  const SampledFunction bumps = normalized(sample(grid, [](double t) -> Complex {
    const double left = indicator(-2.0, -1.0)(t).real();
    const double right = indicator(1.0, 2.0)(t).real();
    return (left + right) / std::sqrt(2.0);
  }));

  double worst = 0.0;
  for (double a : {-1.0, 0.0, 1.0})
    worst = std::max(worst, std::abs(moment_objective(bumps, 1.0, a) - 1.5));

  bool refused = false;
  try {
    p_mean(bumps, 1.0);
  } catch (const unsupported_exponent&) {
    refused = true;
  }
  report(4, "flat first moment between two bumps", refused && worst <= 1e-3,
         fmt("objective defect %.2e at a in {-1, 0, 1} (tol 1e-3), p=1 rejected: %s", worst,
             refused ? "yes" : "no"));
}

// 5. Perturbing a unit gaussian moves its statistics by a controlled amount.
void criterion_probe(const Grid& grid) {
  const SampledFunction f = gaussian(grid);
  const SampledFunction g = fixtures::gauss_atom(grid, 1.0, 0.0);
  const ConcentrationReport base = concentration_report(f, 2.0, 2.0);

  const auto points = convergence_probe(f, g, {0.1, 0.01, 0.001}, 2.0, 2.0);
  bool decreasing = true, mean_capped = true;
  double previous = 1e9, last_gap = 0.0;
  for (const ProbePoint& point : points) {
    last_gap = std::abs(point.report.time_dispersion - base.time_dispersion);
    decreasing = decreasing && last_gap < previous;
    previous = last_gap;
    if (point.alpha <= 0.08)
      mean_capped = mean_capped &&
                    std::abs(point.report.time_mean - base.time_mean) <= 1.128 && point.step2_ok;
  }
  const bool ok = decreasing && last_gap <= 1e-2 && mean_capped;
  report(5, "dispersion stability under mixing", ok,
         fmt("gaps decreasing: %s, final gap %.2e (tol 1e-2), mean within 1.128: %s",
             decreasing ? "yes" : "no", last_gap, mean_capped ? "yes" : "no"));
}

// 6. The construction tool certifies every bound through the real binary.
void criterion_construction_cli() {
  const std::filesystem::path out =
      std::filesystem::temp_directory_path() / "tfconc-acceptance-construct.json";
  const std::string command = std::string(TFCONC_CLI_PATH) +
                              " construct-exact --count 16 --epsilon 0.1 --out " + out.string();
  const int status = std::system(command.c_str());
  const int code = (status == -1 || !WIFEXITED(status)) ? -1 : WEXITSTATUS(status);
  if (code != 0) {
    report(6, "constructed system certified end to end", false, fmt("exit code %d", code));
    return;
  }

  std::ifstream in(out);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const Json payload = Json::parse(buffer.str());

  bool bounds_ok = payload["all_bounds_passed"] == true;
  bool alphas_ok = payload["elements"].size() == 16;
  for (std::size_t n = 0; n < payload["elements"].size(); ++n) {
    const Json& element = payload["elements"][n];
    alphas_ok = alphas_ok && element["alpha"].get<double>() > 0.0 &&
                element["alpha"].get<double>() < std::pow(2.0, -static_cast<double>(n + 1));
    for (const char* key :
         {"time_mean_ok", "freq_mean_ok", "time_dispersion_ok", "freq_dispersion_ok"})
      bounds_ok = bounds_ok && element["bounds"][key] == true;
  }
  const double time_norm = payload["envelope"]["time_norm"].get<double>();
  const double freq_norm = payload["envelope"]["freq_norm"].get<double>();
  const double recon = payload["reconstruct_max_error"].get<double>();
  const bool envelopes_ok = time_norm <= 4.0 + 1e-3 && freq_norm <= 4.0 + 1e-3;
  const bool recon_ok = recon <= 1e-7;

  report(6, "constructed system certified end to end",
         bounds_ok && alphas_ok && envelopes_ok && recon_ok,
         fmt("exit 0, envelopes (%.3f, %.3f) <= 4.001, reconstruction error %.2e (tol 1e-7)",
             time_norm, freq_norm, recon));
}

// 7. Greedy selection: separated output, guaranteed size, brute force agrees.
void criterion_greedy(const Grid& grid) {
  std::mt19937_64 rng(107);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> pick_k(4, 25);

  auto random_gram = [&](int k) {
    ComplexMatrix vectors(40, k);
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < 40; ++i) vectors(i, j) = Complex{normal(rng), normal(rng)};
      vectors.col(j) /= vectors.col(j).norm();
    }
    return ComplexMatrix(vectors.adjoint() * vectors);
  };
  auto worst_count = [](const ComplexMatrix& gram) {
    int worst = 0;
    for (int j = 0; j < gram.cols(); ++j)
      worst = std::max(worst, coherence_count(gram, static_cast<std::size_t>(j)));
    return worst;
  };

  bool ok = true;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    const int k = pick_k(rng);
    const ComplexMatrix gram = random_gram(k);
    const double D = worst_count(gram) + 0.5;
    const SeparationResult result = greedy_separated_subset(gram, D);
    const int needed =
        static_cast<int>(std::ceil(static_cast<double>(k - 1) / (std::ceil(D) + 1.0)));
    ok = ok && result.hypothesis_ok && static_cast<int>(result.selected.size()) >= needed;
    for (std::size_t a = 0; a < result.selected.size() && ok; ++a)
      for (std::size_t b = a + 1; b < result.selected.size() && ok; ++b)
        ok = std::abs(gram(result.selected[a], result.selected[b])) < 0.5;
  }

  for (std::size_t count : {std::size_t{8}, std::size_t{30}}) {
    const SystemSpec spec = enumerate_exact_G0(count);
    std::vector<SampledFunction> atoms;
    for (const GaborIndex& idx : spec.indices) atoms.push_back(gabor_atom(grid, idx));
    const SeparationResult result = greedy_separated_subset(gram_matrix(atoms), 2.0);
    ok = ok && result.selected.size() == count && result.hypothesis_ok;
  }

  std::uniform_int_distribution<int> pick_small(4, 12);
  for (int trial = 0; trial < 20 && ok; ++trial) {
    const int k = pick_small(rng);
    const ComplexMatrix gram = random_gram(k);
    const double D = worst_count(gram) + 0.5;
    const SeparationResult result = greedy_separated_subset(gram, D);

    std::size_t best = 0;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      bool separated = true;
      for (int i = 0; i < k && separated; ++i) {
        if (!(mask & (1u << i))) continue;
        for (int j = i + 1; j < k && separated; ++j)
          if ((mask & (1u << j)) && std::abs(gram(i, j)) >= 0.5) separated = false;
      }
      if (separated) best = std::max(best, static_cast<std::size_t>(__builtin_popcount(mask)));
    }
    ok = ok && best >= result.selected.size() &&
         best >= static_cast<std::size_t>(result.guarantee);
  }

  report(7, "greedy separation with certified size", ok,
         ok ? "200 random systems, lattice truncations, 20 exhaustive cross-checks"
            : "a separated-subset invariant failed");
}

// 8. Correlation bound from the statistics alone, plus its sharp spot value.
void criterion_correlation_bound(const Grid& grid) {
  std::mt19937_64 rng(108);
  std::uniform_real_distribution<double> place(-4.0, 4.0);

  double worst_excess = -1e9;
  int tested = 0;
  while (tested < 100) {
    const double s1 = place(rng), m1 = place(rng);
    const double s2 = place(rng), m2 = place(rng);
    if (std::abs(s1 - s2) < 0.1 && std::abs(m1 - m2) < 0.1) continue;
    ++tested;
    const SampledFunction f = fixtures::gauss_atom(grid, s1, m1);
    const SampledFunction g = fixtures::gauss_atom(grid, s2, m2);
    const double bound = inner_product_bound(concentration_report(f, 2.0, 2.0),
                                             concentration_report(g, 2.0, 2.0));
    const double overlap = std::abs(inner_product(f, g));
    worst_excess = std::max(worst_excess, overlap - bound);
  }

  const SampledFunction f = gaussian(grid);
  const SampledFunction shifted = fixtures::gauss_atom(grid, 4.0, 0.0);
  const double spot_bound = inner_product_bound(concentration_report(f, 2.0, 2.0),
                                                concentration_report(shifted, 2.0, 2.0));
  const double spot_overlap = std::abs(inner_product(f, shifted));

  const bool ok = worst_excess <= 1e-9 &&
                  std::abs(spot_bound - fixtures::ref::bound_shift4) <= 1e-6 &&
                  std::abs(spot_overlap - fixtures::ref::overlap_shift4) <= 1e-12;
  report(8, "correlation bound on 100 gaussian pairs", ok,
         fmt("worst excess %.2e (tol 1e-9), spot bound %.6f vs overlap %.2e", worst_excess,
             spot_bound, spot_overlap));
}

// 9. The series estimate: spot value, monotone in N, divergent inputs refused.
void criterion_tail_sum() {
  const double value = tail_sum(100.0, 0.0, 1.0, 2.0, 2.0, 2.0, 1000000);
  bool ok = std::abs(value - 0.0099503) <= 1e-6;

  double previous = 1e9;
  for (double N : {10.0, 100.0, 1000.0}) {
    const double v = tail_sum(N, 0.0, 1.0, 2.0, 2.0, 2.0, 100000);
    ok = ok && v < previous;
    previous = v;
  }

  bool refused = false;
  try {
    tail_sum(100.0, 0.0, 1.0, 2.0, 2.0, 1.0, 1000); // q r = 2
  } catch (const hypothesis_violation&) {
    refused = true;
  }
  ok = ok && refused;
  report(9, "certified tail-sum estimate", ok,
         fmt("value %.10f (want 0.0099503 +- 1e-6), monotone in N, qr=2 refused: %s", value,
             refused ? "yes" : "no"));
}

// 10. Capped statistics force uniform tail decay.
void criterion_capped_tails() {
  const Grid wide = make_grid(64.0, 8192);
  const std::vector<SampledFunction> family = {
      gaussian(wide), gabor_atom(wide, {1, 0}), gabor_atom(wide, {0, 1}),
      fixtures::gauss_atom(wide, -0.5, 0.5)};

  bool members = true;
  double worst_slack = 1e9;
  for (const SampledFunction& f : family) {
    members = members && kaq_membership(concentration_report(f, 2.0, 2.0), 1.0);
    for (double R : {4.0, 8.0, 16.0})
      worst_slack = std::min(worst_slack, kaq_tail_bound(1.0, 2.0, R) - tail_mass(f, R));
  }
  const bool spot = kaq_tail_bound(1.0, 2.0, 4.0) == 0.25;
  report(10, "capped class obeys the tail bound", members && worst_slack >= 0.0 && spot,
         fmt("four members, min bound slack %.3e, bound(R=4) = 0.25: %s", worst_slack,
             spot ? "yes" : "no"));
}

// 11. Finite frame sections and coefficient isometry.
void criterion_frame_sections(const Grid& grid) {
  const auto identity = frame_bounds_finite(ComplexMatrix::Identity(5, 5));
  bool ok = std::abs(identity.first - 1.0) <= 1e-9 && std::abs(identity.second - 1.0) <= 1e-9;

  ComplexMatrix doubled(6, 6);
  doubled.setZero();
  for (int i = 0; i < 6; ++i) doubled(i, i) = 1.0;
  for (int i = 0; i < 3; ++i) doubled(i, i + 3) = doubled(i + 3, i) = 1.0;
  const auto twice = frame_bounds_finite(doubled);
  ok = ok && std::abs(twice.first - 2.0) <= 1e-9 && std::abs(twice.second - 2.0) <= 1e-9;

  ComplexMatrix pair(2, 2);
  pair << 1.0, 0.5, 0.5, 1.0;
  const auto split = frame_bounds_finite(pair);
  ok = ok && std::abs(split.first - 0.5) <= 1e-9 && std::abs(split.second - 1.5) <= 1e-9;

  // Exactly orthonormal family via one round of projection.
  std::mt19937_64 rng(111);
  std::vector<SampledFunction> basis;
  while (basis.size() < 4) {
    SampledFunction candidate = fixtures::random_mixture(grid, rng);
    for (const SampledFunction& previous : basis) {
      const Complex c = inner_product(candidate, previous);
      for (std::size_t k = 0; k < grid.n_points; ++k)
        candidate.values[k] -= c * previous.values[k];
    }
    candidate = make_function(grid, candidate.values);
    if (candidate.cached_norm > 1e-6) basis.push_back(normalized(candidate));
  }
  std::vector<SampledFunction> tests;
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    ComplexVector values(grid.n_points, Complex{0.0, 0.0});
    for (const SampledFunction& e : basis) {
      const Complex w{weight(rng), weight(rng)};
      for (std::size_t k = 0; k < grid.n_points; ++k) values[k] += w * e.values[k];
    }
    tests.push_back(normalized(make_function(grid, values)));
  }
  const RSCheck check = rs_check(basis, tests, 2.0, 2.0);
  ok = ok && std::abs(check.lower_const_est - 1.0) <= 1e-8 &&
       std::abs(check.upper_const_est - 1.0) <= 1e-8;

  report(11, "finite sections and coefficient isometry", ok,
         fmt("identity (%.3f, %.3f), doubled (%.3f, %.3f), pair (%.3f, %.3f), "
             "isometry (%.9f, %.9f)",
             identity.first, identity.second, twice.first, twice.second, split.first,
             split.second, check.lower_const_est, check.upper_const_est));
}

// 12. A system built to sit inside a compact concentration class is flagged:
// every per-element premise holds, yet the class membership itself is the
// obstruction, so no frame or coefficient-stable expansion can contain it.
void criterion_obstruction(const Grid& grid) {
  const PerturbedSystem system = build_perturbed_exact(grid, 8, 0.1, 2.0, 2.0);
  const std::vector<GaborIndex> labels(system.spec.indices.begin() + 1,
                                       system.spec.indices.begin() + 9);
  const ObstructionReport verdict =
      obstruction_report(system.elements, labels, 2.0, 2.0, 2.0, 2.0, 0.5);

  bool premises = verdict.elements.size() == 8;
  for (const ObstructionElement& element : verdict.elements)
    premises = premises && element.mean_ok && element.time_disp_ok && element.freq_disp_ok &&
               element.kaq_ok;

  const bool ok = premises && verdict.evasion_flag && !verdict.narrative.empty() &&
                  verdict.rs.has_value();
  report(12, "obstruction flagged on the evasive system", ok,
         fmt("premises hold per element: %s, flag raised: %s, narrative present: %s",
             premises ? "yes" : "no", verdict.evasion_flag ? "yes" : "no",
             verdict.narrative.empty() ? "no" : "yes"));
}

} // namespace

int main() {
  const Grid grid = make_grid(32.0, 4096);

  criterion_heisenberg(grid);
  criterion_covariance(grid);
  criterion_escaping_means();
  criterion_flat_minimum(grid);
  criterion_probe(grid);
  criterion_construction_cli();
  criterion_greedy(grid);
  criterion_correlation_bound(grid);
  criterion_tail_sum();
  criterion_capped_tails();
  criterion_frame_sections(grid);
  criterion_obstruction(grid);

  if (g_failures > 0) {
    std::printf("%d of 12 checks failed\n", g_failures);
    return 1;
  }
  std::printf("all 12 checks passed\n");
  return 0;
}
