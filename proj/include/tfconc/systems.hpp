#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tfconc/grid.hpp"

namespace tfconc {

struct GaborIndex {
  int m = 0; // modulation (frequency shift)
  int n = 0; // translation (time shift)
  friend bool operator==(const GaborIndex&, const GaborIndex&) = default;
};

enum class SystemKind { gabor_full, gabor_exact_G0, perturbed_exact, explicit_samples };

std::string to_string(SystemKind kind);
SystemKind system_kind_from_string(const std::string& s);

struct SystemSpec {
  SystemKind kind = SystemKind::gabor_full;
  std::size_t count = 0;
  double epsilon = 0.0;              // perturbed_exact only
  std::vector<GaborIndex> indices;   // lattice kinds
  std::vector<double> alphas;        // perturbed_exact: 0 < alpha_n < 2^{-n}
};

// L2-normalized Gaussian 2^{1/4} e^{-pi t^2}; fixed by fourier.
SampledFunction gaussian(const Grid& grid);

// g_{m,n}(t) = e^{2 pi i m t} g(t - n). Unit norm; time mean n, frequency
// mean m, both dispersions equal to the Gaussian's. Requires the atom window
// to fit: |n| + 4 < extent/2 and |m| + 4 < dual_extent/2, else
// out_of_window_error.
SampledFunction gabor_atom(const Grid& grid, GaborIndex index);

// Lattice enumerations in square shells max(|m|,|n|) = s, lexicographic
// (m,n) within a shell, starting at (0,0). enumerate_exact_G0 skips (1,1):
// the full lattice system minus that single atom.
std::vector<GaborIndex> enumerate_full(std::size_t count);
SystemSpec enumerate_exact_G0(std::size_t count);

struct PerturbedSystem {
  SystemSpec spec;                      // kind perturbed_exact, with alphas
  std::vector<SampledFunction> elements; // f_1 .. f_count
};

// f_n = (e_1 + alpha_n e_{n+1}) / ||e_1 + alpha_n e_{n+1}||, where e_1, e_2,
// ... is the exact-system enumeration. alpha_n starts at min(2^{-n}, 0.08)/2
// and halves until |mu_p(f_n)| < eps, |mu_q(f_n^)| < eps, Delta_p(f_n) <
// Delta_p(g) + eps and Delta_q(f_n^) < Delta_q(g^) + eps all hold; at most 60
// halvings, then construction_failure naming the violated bound.
PerturbedSystem build_perturbed_exact(const Grid& grid, std::size_t count,
                                      double epsilon, double p, double q);

struct EnvelopePair {
  SampledFunction time_envelope; // pointwise sup of |f_n(t)|, real values
  SampledFunction freq_envelope; // pointwise sup of |f_n^(xi)|
  double time_envelope_norm = 0.0;
  double freq_envelope_norm = 0.0;
};

// Pointwise envelopes of a finite system and their L2 norms.
EnvelopePair envelopes(const std::vector<SampledFunction>& system);

// Recovers e_{n+1} from f_n, e_1 = gaussian and alpha_n alone:
// beta = ||e_1 + alpha e_{n+1}|| = sqrt(1 + alpha (2c + alpha)) with c the
// closed-form lattice overlap Re<e_{n+1}, e_1>, then e_{n+1} =
// (beta f_n - e_1)/alpha. n is 1-based.
SampledFunction reconstruct_e(const PerturbedSystem& system, std::size_t n);

} // namespace tfconc
