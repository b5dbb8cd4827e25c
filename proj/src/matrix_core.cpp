#include "dftlab/matrix_core.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace dftlab {

IndexSet::IndexSet(std::int64_t n, std::vector<std::int64_t> indices)
    : n_(n), indices_(std::move(indices)) {
  if (n_ < 0) throw std::domain_error("IndexSet: ambient dimension must be nonnegative");
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 1 || indices_[i] > n_)
      throw std::domain_error("IndexSet: index " + std::to_string(indices_[i]) +
                              " outside [1, " + std::to_string(n_) + "]");
    if (i > 0 && indices_[i] == indices_[i - 1])
      throw std::domain_error("IndexSet: duplicate index " + std::to_string(indices_[i]));
  }
}

IndexSet IndexSet::full(std::int64_t n) {
  std::vector<std::int64_t> all(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
  return IndexSet(n, std::move(all));
}

IndexSet IndexSet::from_mask(std::int64_t n, std::uint64_t mask) {
  if (n < 0 || n > 63) throw std::domain_error("IndexSet::from_mask: n must be in [0, 63]");
  if (n < 64 && (mask >> n) != 0)
    throw std::domain_error("IndexSet::from_mask: mask selects indices beyond n");
  std::vector<std::int64_t> idx;
  idx.reserve(static_cast<std::size_t>(std::popcount(mask)));
  for (std::int64_t j = 0; j < n; ++j)
    if (mask & (std::uint64_t(1) << j)) idx.push_back(j + 1);
  return IndexSet(n, std::move(idx));
}

IndexSet IndexSet::parse(std::int64_t n, std::string_view text) {
  std::vector<std::int64_t> idx;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data() + pos)
      throw std::domain_error("IndexSet::parse: expected an integer in \"" +
                              std::string(text) + "\"");
    idx.push_back(value);
    pos = static_cast<std::size_t>(ptr - text.data());
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != ',')
      throw std::domain_error("IndexSet::parse: expected ',' in \"" + std::string(text) + "\"");
    ++pos;
    skip_ws();
    if (pos == text.size())
      throw std::domain_error("IndexSet::parse: trailing ',' in \"" + std::string(text) + "\"");
  }
  return IndexSet(n, std::move(idx));
}

std::string IndexSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(indices_[i]);
  }
  return out;
}

bool IndexSet::is_cyclic_block() const {
  if (size() <= 1) return true;
  // Sorted indices form a cyclic block iff at most one of the cyclic gaps
  // (successor minus element, wrapping from the last back to the first)
  // differs from 1.
  std::int64_t breaks = 0;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    std::int64_t cur = indices_[i];
    std::int64_t next = (i + 1 < indices_.size()) ? indices_[i + 1] : indices_[0] + n_;
    if (next - cur != 1) ++breaks;
  }
  return breaks <= 1;
}

Complex dft_entry(std::int64_t n, std::int64_t omega, std::int64_t t) {
  if (n < 1) throw std::domain_error("dft_entry: n must be positive");
  if (omega < 1 || omega > n || t < 1 || t > n)
    throw std::domain_error("dft_entry: indices must lie in [1, n]");
  // Reduce the phase argument mod n in exact integer arithmetic; the product
  // can exceed 64 bits before reduction.
  const std::int64_t r =
      static_cast<std::int64_t>((static_cast<__int128>(omega % n) * (t % n)) % n);
  const double theta = 2.0 * std::numbers::pi * (static_cast<double>(r) / static_cast<double>(n));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  return {scale * std::cos(theta), scale * std::sin(theta)};
}

BoundedMatrix BoundedMatrix::dft(std::int64_t n) {
  if (n < 1) throw std::domain_error("BoundedMatrix::dft: n must be positive");
  BoundedMatrix m;
  m.n = n;
  m.entry = [n](std::int64_t omega, std::int64_t t) { return dft_entry(n, omega, t); };
  m.declared_norm_bound = 1.0;
  m.declared_entry_bound = 1.0 / std::sqrt(static_cast<double>(n));
  return m;
}

DenseComplexMatrix submatrix(const BoundedMatrix& a, const IndexSet& omega, const IndexSet& t) {
  if (omega.ambient() != a.n || t.ambient() != a.n)
    throw std::domain_error("submatrix: index set ambient dimension differs from the matrix");
  DenseComplexMatrix m(omega.size(), t.size());
  for (std::int64_t i = 0; i < omega.size(); ++i)
    for (std::int64_t j = 0; j < t.size(); ++j) m(i, j) = a.entry(omega[i], t[j]);
  return m;
}

DenseComplexMatrix GramMatrix::assemble() const {
  const std::int64_t s = omega_size + t_size;
  DenseComplexMatrix g = DenseComplexMatrix::Identity(s, s);
  g.block(0, omega_size, omega_size, t_size) = off_diagonal;
  g.block(omega_size, 0, t_size, omega_size) = off_diagonal.adjoint();
  return g;
}

std::pair<double, double> GramMatrix::extreme_eigenvalues() const {
  const std::int64_t s = omega_size + t_size;
  if (s == 0) return {1.0, 1.0};  // empty collection: sigma = 0, spectrum {1}
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(assemble(),
                                                         Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(s - 1)};
}

GramMatrix gram_matrix(const BoundedMatrix& a, const IndexSet& omega, const IndexSet& t) {
  GramMatrix g;
  g.omega_size = omega.size();
  g.t_size = t.size();
  g.off_diagonal = submatrix(a, omega, t);
  return g;
}

std::pair<IndexSet, IndexSet> dirac_comb(std::int64_t n) {
  if (n < 1) throw std::domain_error("dirac_comb: n must be positive");
  const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (root * root != n) throw std::domain_error("dirac_comb: n must be a perfect square");
  std::vector<std::int64_t> idx(static_cast<std::size_t>(root));
  for (std::int64_t k = 1; k <= root; ++k) idx[static_cast<std::size_t>(k - 1)] = k * root;
  IndexSet s(n, std::move(idx));
  return {s, s};
}

std::int64_t spread(const IndexSet& omega) {
  if (omega.size() < 2) throw std::domain_error("spread: need at least two indices");
  // Indices are sorted, so the minimum circular distance is the minimum
  // cyclic gap between neighbours (the gaps sum to n, hence the smallest one
  // already lies in the symmetric residue range).
  const std::int64_t n = omega.ambient();
  std::int64_t best = n;
  for (std::int64_t i = 0; i < omega.size(); ++i) {
    std::int64_t cur = omega[i];
    std::int64_t next = (i + 1 < omega.size()) ? omega[i + 1] : omega[0] + n;
    best = std::min(best, next - cur);
  }
  return best;
}

}  // namespace dftlab
