#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "tfconc/grid.hpp"
#include "tfconc/moments.hpp"

namespace tfconc {

using ComplexMatrix = Eigen::MatrixXcd;

struct SeparationResult {
  std::vector<std::size_t> selected; // kept indices, pairwise |gram| < 1/2
  double threshold = 0.5;
  int d_count = 0;    // ceil(D)
  int guarantee = 0;  // ceil((k-1)/(ceil(D)+1)), the certified lower bound
  bool hypothesis_ok = true; // every coherence_count < D
};

// #\{n : |gram(n,m)| >= 1/2\}, diagonal included (so always >= 1 for a unit
// vector).
int coherence_count(const ComplexMatrix& gram, std::size_t m);

// D = 2^s C^s + 1: a coherence-count ceiling implied by an (l^r, l^s)
// coefficient inequality with constant C.
double tchebyshev_D(double C, double s);

// Scan in input order; keep an index, discard all later indices correlated
// >= 1/2 with it. The kept set is pairwise separated below 1/2 regardless of
// the hypothesis; when every coherence_count < D it has at least
// (k-1)/(ceil(D)+1) members. Hypothesis violations flag the result but still
// return the greedy set.
SeparationResult greedy_separated_subset(const ComplexMatrix& gram, double D);

// N = M (ceil(D) + 1) + 1: a system of N or more elements with a size-M cover
// by radius-1/2 balls must put ceil(D)+1 of them in one ball.
std::size_t covering_number_bound(std::size_t M, double D);

// Scan in order; keep a point if its L2 distance to every kept point is
// >= 1/2. Kept points are ball centers covering the input: an upper bound for
// the covering number.
std::vector<std::size_t> greedy_half_net(const std::vector<SampledFunction>& points);

// Upper bound for |<f, g>| from the concentration statistics alone:
// [2^{p/2}(Dp(f)+Dp(g)) + 2^{q/2}(Dq(f^)+Dq(g^))] /
// [|mu_p(f)-mu_p(g)|^{p/2} + |mu_q(f^)-mu_q(g^)|^{q/2}].
// Infinity when both mean gaps vanish.
double inner_product_bound(const ConcentrationReport& rf, const ConcentrationReport& rg);

// c* = min_n |freq_means[n-1]| / n over the 1-based enumeration; the largest
// c certifying |mu_q(e_n^)| >= c n for every listed element.
double growth_certificate(const std::vector<double>& freq_means);

// Gram CSV: header "k=<size>", then k rows of k comma-separated "re+imj"
// entries.
void write_gram_csv(std::ostream& out, const ComplexMatrix& gram);
ComplexMatrix read_gram_csv(std::istream& in);

} // namespace tfconc
