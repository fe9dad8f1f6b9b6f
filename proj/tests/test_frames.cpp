#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "fixtures.hpp"
#include "tfconc/errors.hpp"
#include "tfconc/frames.hpp"
#include "tfconc/grid.hpp"
#include "tfconc/json_io.hpp"
#include "tfconc/systems.hpp"

using namespace tfconc;

namespace {

// Gram-Schmidt over random mixtures: an exactly orthonormal family on the grid.
std::vector<SampledFunction> orthonormal_family(const Grid& grid, int size,
                                                std::mt19937_64& rng) {
  std::vector<SampledFunction> family;
  while (static_cast<int>(family.size()) < size) {
    SampledFunction candidate = fixtures::random_mixture(grid, rng);
    for (const SampledFunction& previous : family) {
      const Complex coefficient = inner_product(candidate, previous);
      for (std::size_t k = 0; k < grid.n_points; ++k)
        candidate.values[k] -= coefficient * previous.values[k];
    }
    candidate = make_function(grid, candidate.values);
    if (candidate.cached_norm < 1e-6) continue;
    family.push_back(normalized(candidate));
  }
  return family;
}

SampledFunction combine(const Grid& grid, const std::vector<SampledFunction>& basis,
                        const std::vector<Complex>& weights) {
  ComplexVector values(grid.n_points, Complex{0.0, 0.0});
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t k = 0; k < grid.n_points; ++k)
      values[k] += weights[j] * basis[j].values[k];
  return normalized(make_function(grid, values));
}

} // namespace

TEST_CASE("gram matrices are hermitian with unit diagonal") {
  const Grid grid = make_grid(32.0, 4096);
  const std::vector<SampledFunction> atoms = {gaussian(grid), gabor_atom(grid, {1, 0}),
                                              gabor_atom(grid, {0, 1})};
  const ComplexMatrix gram = gram_matrix(atoms);
  REQUIRE(gram.rows() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(gram(i, i) - Complex{1.0, 0.0}) < 1e-9);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(gram(i, j) - std::conj(gram(j, i))) < 1e-14);
  }
  CHECK_THROWS_AS(gram_matrix({}), std::invalid_argument);
}

TEST_CASE("orthonormal sections have unit frame bounds") {
  const auto bounds = frame_bounds_finite(ComplexMatrix::Identity(4, 4));
  CHECK(bounds.first == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bounds.second == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a duplicated orthonormal basis doubles the bounds") {
  ComplexMatrix gram(6, 6);
  gram.setZero();
  for (int i = 0; i < 6; ++i) gram(i, i) = 1.0;
  for (int i = 0; i < 3; ++i) {
    gram(i, i + 3) = 1.0;
    gram(i + 3, i) = 1.0;
  }

  const auto bounds = frame_bounds_finite(gram);
  CHECK(bounds.first == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(bounds.second == doctest::Approx(2.0).epsilon(1e-9));

  // The dependence is invisible to the frame bounds but not to the raw
  // eigenvalue floor.
  const FrameDiagnostics diagnostics = frame_diagnostics(gram);
  CHECK(diagnostics.smallest_singular_value < 1e-10);
  CHECK(diagnostics.lower_bound_est == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(diagnostics.section_size == 6);
}

TEST_CASE("a coherent pair splits the bounds symmetrically") {
  ComplexMatrix gram(2, 2);
  gram << 1.0, 0.5, 0.5, 1.0;
  const auto bounds = frame_bounds_finite(gram);
  CHECK(bounds.first == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bounds.second == doctest::Approx(1.5).epsilon(1e-12));

  const Complex z = std::polar(0.3, 0.8);
  ComplexMatrix skew(2, 2);
  skew << Complex{1.0, 0.0}, z, std::conj(z), Complex{1.0, 0.0};
  const auto tilted = frame_bounds_finite(skew);
  CHECK(tilted.first == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(tilted.second == doctest::Approx(1.3).epsilon(1e-12));
}

TEST_CASE("gram validation rejects broken inputs") {
  ComplexMatrix lopsided(2, 2);
  lopsided << Complex{1.0, 0.0}, Complex{0.5, 0.1}, Complex{0.5, 0.3}, Complex{1.0, 0.0};
  CHECK_THROWS_AS(frame_bounds_finite(lopsided), std::invalid_argument);

  ComplexMatrix indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0; // eigenvalues 3 and -1
  CHECK_THROWS_AS(frame_bounds_finite(indefinite), std::invalid_argument);
}

TEST_CASE("coefficient norms of an orthonormal system are isometric") {
  const Grid grid = make_grid(32.0, 2048);
  std::mt19937_64 rng(41);
  const std::vector<SampledFunction> basis = orthonormal_family(grid, 4, rng);

  std::vector<SampledFunction> tests;
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> weights;
    for (int j = 0; j < 4; ++j) weights.push_back(Complex{weight(rng), weight(rng)});
    tests.push_back(combine(grid, basis, weights));
  }

  const RSCheck check = rs_check(basis, tests, 2.0, 2.0);
  CHECK(check.lower_const_est == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(check.upper_const_est == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(check.zero_coefficient_witnesses.empty());
}

TEST_CASE("duplicating the system halves both constants") {
  const Grid grid = make_grid(32.0, 2048);
  std::mt19937_64 rng(42);
  const std::vector<SampledFunction> basis = orthonormal_family(grid, 3, rng);

  std::vector<SampledFunction> doubled = basis;
  doubled.insert(doubled.end(), basis.begin(), basis.end());

  std::vector<SampledFunction> tests;
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Complex> weights;
    for (int j = 0; j < 3; ++j) weights.push_back(Complex{weight(rng), weight(rng)});
    tests.push_back(combine(grid, basis, weights));
  }

  const RSCheck check = rs_check(doubled, tests, 2.0, 2.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(check.lower_const_est == doctest::Approx(inv_sqrt2).epsilon(1e-8));
  CHECK(check.upper_const_est == doctest::Approx(inv_sqrt2).epsilon(1e-8));
}

TEST_CASE("vanishing coefficients disable the upper constant") {
  const Grid grid = make_grid(32.0, 2048);
  std::mt19937_64 rng(43);
  const std::vector<SampledFunction> family = orthonormal_family(grid, 3, rng);
  const std::vector<SampledFunction> system = {family[0]};
  const std::vector<SampledFunction> tests = {family[1], family[0]};

  const RSCheck check = rs_check(system, tests, 2.0, 2.0);
  REQUIRE(check.zero_coefficient_witnesses.size() == 1);
  CHECK(check.zero_coefficient_witnesses[0] == 0);
  CHECK(std::isinf(check.upper_const_est));

  const Json j = to_json(check);
  CHECK(j["upper_const_est"].is_null());
  CHECK(j["lower_const_est"].is_number());
}

TEST_CASE("the tail sum is a certified upper estimate") {
  const double value = tail_sum(100.0, 0.0, 1.0, 2.0, 2.0, 2.0, 1000000);
  CHECK(value >= fixtures::ref::trigamma_101);
  CHECK(value - fixtures::ref::trigamma_101 < 1e-7);

  // More terms can only tighten the estimate.
  CHECK(tail_sum(100.0, 0.0, 1.0, 2.0, 2.0, 2.0, 1000000) <=
        tail_sum(100.0, 0.0, 1.0, 2.0, 2.0, 2.0, 100));

  double previous = 1e9;
  for (double N : {10.0, 100.0, 1000.0}) {
    const double v = tail_sum(N, 0.0, 1.0, 2.0, 2.0, 2.0, 100000);
    CHECK(v < previous);
    previous = v;
  }
}

TEST_CASE("the tail sum rejects divergent or senseless inputs") {
  CHECK_THROWS_AS(tail_sum(100.0, 0.0, 1.0, 2.0, 2.0, 1.0, 1000), hypothesis_violation);
  CHECK_THROWS_AS(tail_sum(1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 1000), std::invalid_argument);
  CHECK_THROWS_AS(tail_sum(100.0, 0.0, 0.0, 2.0, 2.0, 2.0, 1000), std::invalid_argument);
  CHECK_THROWS_AS(tail_sum(100.0, 0.0, 1.0, 0.5, 2.0, 2.0, 1000), std::invalid_argument);
}

TEST_CASE("the obstruction report flags capped systems") {
  const Grid grid = make_grid(32.0, 4096);
  const PerturbedSystem system = build_perturbed_exact(grid, 6, 0.1, 2.0, 2.0);
  const std::vector<GaborIndex> labels(system.spec.indices.begin() + 1,
                                       system.spec.indices.begin() + 7);

  const ObstructionReport report =
      obstruction_report(system.elements, labels, 2.0, 2.0, 2.0, 2.0, 0.5);
  REQUIRE(report.elements.size() == 6);
  for (const ObstructionElement& element : report.elements) {
    CHECK(element.mean_ok);
    CHECK(element.time_disp_ok);
    CHECK(element.freq_disp_ok);
    CHECK(element.kaq_ok);
    REQUIRE(element.index.has_value());
  }
  CHECK(report.evasion_flag);
  CHECK_FALSE(report.narrative.empty());
  REQUIRE(report.rs.has_value());
  CHECK(report.rs->lower_const_est > 0.0);

  const Json j = to_json(report);
  CHECK(j["evasion_flag"] == true);
  CHECK_FALSE(j["rs_check"].is_null());
}

TEST_CASE("the obstruction report stays quiet when a cap fails") {
  const Grid grid = make_grid(32.0, 4096);
  const PerturbedSystem system = build_perturbed_exact(grid, 3, 0.1, 2.0, 2.0);
  const std::vector<GaborIndex> labels(system.spec.indices.begin() + 1,
                                       system.spec.indices.begin() + 4);

  const ObstructionReport report =
      obstruction_report(system.elements, labels, 2.0, 2.0, 2.0, 2.0, 0.05);
  CHECK_FALSE(report.evasion_flag);
  CHECK_FALSE(report.rs.has_value());
  CHECK(to_json(report)["rs_check"].is_null());
}
