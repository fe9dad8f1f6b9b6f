#include "tfconc/separation.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tfconc/errors.hpp"

namespace tfconc {

namespace {

void require_unit_diagonal(const ComplexMatrix& gram, const char* who) {
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    if (std::abs(gram(i, i) - Complex{1.0, 0.0}) > 1e-6)
      throw std::invalid_argument(std::string(who) +
                                  ": Gram diagonal must be 1 (unit-norm system)");
}

} // namespace

int coherence_count(const ComplexMatrix& gram, std::size_t m) {
  if (gram.rows() != gram.cols())
    throw std::invalid_argument("coherence_count: matrix must be square");
  if (static_cast<Eigen::Index>(m) >= gram.rows())
    throw std::invalid_argument("coherence_count: index out of range");
  require_unit_diagonal(gram, "coherence_count");
  int count = 0;
  for (Eigen::Index n = 0; n < gram.rows(); ++n)
    if (std::abs(gram(n, static_cast<Eigen::Index>(m))) >= 0.5) ++count;
  return count;
}

double tchebyshev_D(double C, double s) {
  if (!(C > 0.0) || !(s > 0.0))
    throw std::invalid_argument("tchebyshev_D: C and s must be positive");
  return std::pow(2.0 * C, s) + 1.0;
}

SeparationResult greedy_separated_subset(const ComplexMatrix& gram, double D) {
  if (gram.rows() != gram.cols())
    throw std::invalid_argument("greedy_separated_subset: matrix must be square");
  if (!(D > 0.0))
    throw std::invalid_argument("greedy_separated_subset: D must be positive");
  require_unit_diagonal(gram, "greedy_separated_subset");

  const auto k = static_cast<std::size_t>(gram.rows());
  SeparationResult result;
  result.d_count = static_cast<int>(std::ceil(D));
  result.guarantee = (k <= 1)
                         ? 0
                         : static_cast<int>((k - 1 + static_cast<std::size_t>(result.d_count)) /
                                            (static_cast<std::size_t>(result.d_count) + 1));

  for (std::size_t m = 0; m < k; ++m)
    if (coherence_count(gram, m) >= D) {
      result.hypothesis_ok = false;
      break;
    }

  std::vector<bool> discarded(k, false);
  for (std::size_t m = 0; m < k; ++m) {
    if (discarded[m]) continue;
    result.selected.push_back(m);
    for (std::size_t n = m + 1; n < k; ++n)
      if (!discarded[n] &&
          std::abs(gram(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m))) >= 0.5)
        discarded[n] = true;
  }
  return result;
}

std::size_t covering_number_bound(std::size_t M, double D) {
  if (M < 1) throw std::invalid_argument("covering_number_bound: M must be >= 1");
  if (!(D > 0.0)) throw std::invalid_argument("covering_number_bound: D must be positive");
  return M * (static_cast<std::size_t>(std::ceil(D)) + 1) + 1;
}

std::vector<std::size_t> greedy_half_net(const std::vector<SampledFunction>& points) {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!points[i].grid.compatible(points[0].grid))
      throw std::invalid_argument("greedy_half_net: points live on different grids");

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool separated = true;
    for (std::size_t j : kept) {
      double sum = 0.0;
      for (std::size_t s = 0; s < points[i].grid.n_points; ++s)
        sum += std::norm(points[i].values[s] - points[j].values[s]);
      if (std::sqrt(points[i].grid.spacing * sum) < 0.5) {
        separated = false;
        break;
      }
    }
    if (separated) kept.push_back(i);
  }
  return kept;
}

double inner_product_bound(const ConcentrationReport& rf, const ConcentrationReport& rg) {
  if (rf.p != rg.p || rf.q != rg.q)
    throw std::invalid_argument("inner_product_bound: reports use different exponents");
  const double numerator =
      std::pow(2.0, rf.p / 2.0) * (rf.time_dispersion + rg.time_dispersion) +
      std::pow(2.0, rf.q / 2.0) * (rf.freq_dispersion + rg.freq_dispersion);
  const double denominator =
      std::pow(std::abs(rf.time_mean - rg.time_mean), rf.p / 2.0) +
      std::pow(std::abs(rf.freq_mean - rg.freq_mean), rf.q / 2.0);
  if (denominator == 0.0) return std::numeric_limits<double>::infinity();
  return numerator / denominator;
}

double growth_certificate(const std::vector<double>& freq_means) {
  if (freq_means.empty())
    throw std::invalid_argument("growth_certificate: empty list");
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < freq_means.size(); ++n)
    c = std::min(c, std::abs(freq_means[n]) / static_cast<double>(n + 1));
  return c;
}

void write_gram_csv(std::ostream& out, const ComplexMatrix& gram) {
  if (gram.rows() != gram.cols())
    throw std::invalid_argument("write_gram_csv: matrix must be square");
  out << "k=" << gram.rows() << '\n';
  char entry[80];
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
      std::snprintf(entry, sizeof entry, "%.17g%+.17gj", gram(i, j).real(),
                    gram(i, j).imag());
      out << (j ? "," : "") << entry;
    }
    out << '\n';
  }
}

ComplexMatrix read_gram_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("k=", 0) != 0)
    throw std::invalid_argument("read_gram_csv: missing 'k=<size>' header");
  const long k = std::stol(line.substr(2));
  if (k <= 0) throw std::invalid_argument("read_gram_csv: size must be positive");

  ComplexMatrix gram(k, k);
  for (long i = 0; i < k; ++i) {
    if (!std::getline(in, line))
      throw std::invalid_argument("read_gram_csv: truncated matrix");
    std::stringstream row(line);
    std::string cell;
    for (long j = 0; j < k; ++j) {
      if (!std::getline(row, cell, ','))
        throw std::invalid_argument("read_gram_csv: short row");
      double re = 0.0, im = 0.0;
      if (std::sscanf(cell.c_str(), "%lf%lfj", &re, &im) != 2)
        throw std::invalid_argument("read_gram_csv: malformed entry: " + cell);
      gram(i, j) = Complex{re, im};
    }
  }
  return gram;
}

} // namespace tfconc
