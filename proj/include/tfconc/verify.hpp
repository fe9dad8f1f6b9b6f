#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tfconc {

struct VerifyOptions {
  double extent = 32.0;
  std::size_t n_points = 4096;
  std::uint64_t seed = 0;
  // Test hook: nonzero values corrupt the FFT twiddle factors for the whole
  // run, a negative control that must trip the Plancherel check first.
  double fft_corruption = 0.0;
};

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Cross-module invariant suite. Most checks run on the configured grid;
// lattice-window checks refine n_points when the dual extent is too small for
// the atoms they need (the detail string names the grid used). Tolerances
// follow the documented schedule: tight at >= 2048 points, relaxed below.
std::vector<VerifyCheck> run_verify_suite(const VerifyOptions& options);

} // namespace tfconc
