#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace dftlab {

using Complex = std::complex<double>;

// Row-major so that walking memory matches the (row, col) nesting used when
// matrices are filled entry-by-entry from an implicit definition.
using DenseComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Sorted subset of {1, ..., n}.  Indices are 1-based throughout; the ambient
/// size n travels with the set so that complements, spreads and sampling all
/// know which cyclic group they live in.
class IndexSet {
 public:
  IndexSet() = default;

  /// Sorts and validates; rejects duplicates and indices outside [1, n].
  IndexSet(std::int64_t n, std::vector<std::int64_t> indices);

  static IndexSet empty(std::int64_t n) { return IndexSet(n, {}); }
  static IndexSet full(std::int64_t n);

  /// Bit j of `mask` (j = 0 is the least significant bit) selects index j+1,
  /// so masks 0, 1, 2, 3 at n = 2 give {}, {1}, {2}, {1,2}.
  static IndexSet from_mask(std::int64_t n, std::uint64_t mask);

  /// Parses "4,8,12,16"; the empty string is the empty set.
  static IndexSet parse(std::int64_t n, std::string_view text);

  std::int64_t ambient() const { return n_; }
  std::int64_t size() const { return static_cast<std::int64_t>(indices_.size()); }
  bool is_empty() const { return indices_.empty(); }

  /// 0-based position -> 1-based index.
  std::int64_t operator[](std::int64_t pos) const { return indices_[static_cast<std::size_t>(pos)]; }

  const std::vector<std::int64_t>& indices() const { return indices_; }
  std::string to_string() const;

  /// True when the set is a block of cyclically consecutive indices (wrapping
  /// past n allowed), e.g. {1,2,15,16} at n=16.  Sets of size <= 1 count.
  bool is_cyclic_block() const;

  bool operator==(const IndexSet& other) const = default;

 private:
  std::int64_t n_ = 0;
  std::vector<std::int64_t> indices_;
};

/// A matrix known only through its entry function plus declared bounds on its
/// spectral norm and entry modulus.  The entry function must be pure: entry
/// evaluation is the only way any consumer reads the matrix, and experiments
/// rely on re-evaluation giving identical values.
struct BoundedMatrix {
  std::int64_t n = 0;
  std::function<Complex(std::int64_t, std::int64_t)> entry;  // 1-based (row, col)
  double declared_norm_bound = 1.0;
  double declared_entry_bound = 1.0;

  /// The unitary discrete Fourier matrix of size n, entries n^{-1/2} e^{2 pi i w t / n}.
  static BoundedMatrix dft(std::int64_t n);
};

/// Entry of the n-by-n unitary DFT matrix at 1-based (omega, t).  The phase
/// argument is reduced mod n in exact integer arithmetic before any floating
/// multiply, so huge indices lose no accuracy.
Complex dft_entry(std::int64_t n, std::int64_t omega, std::int64_t t);

/// Extracts A[rows(omega), cols(t)] densely.  Throws std::domain_error when an
/// ambient size disagrees with a.n.
DenseComplexMatrix submatrix(const BoundedMatrix& a, const IndexSet& omega,
                             const IndexSet& t);

/// Gram matrix of the concatenated dictionary [spikes on T | sines on Omega]:
/// identity diagonal blocks and F_{Omega,T} off-diagonal.  Only the
/// off-diagonal block is stored; assemble() expands it on demand.
struct GramMatrix {
  std::int64_t omega_size = 0;
  std::int64_t t_size = 0;
  DenseComplexMatrix off_diagonal;  // omega_size x t_size

  DenseComplexMatrix assemble() const;

  /// (min, max) eigenvalues, computed from the assembled Hermitian matrix.
  /// These equal 1 -+ ||off_diagonal|| exactly in exact arithmetic.
  std::pair<double, double> extreme_eigenvalues() const;
};

GramMatrix gram_matrix(const BoundedMatrix& a, const IndexSet& omega,
                       const IndexSet& t);

/// The Dirac comb pair T = Omega = {sqrt(n), 2 sqrt(n), ..., n} for square n.
/// Throws std::domain_error unless n is a perfect square.
std::pair<IndexSet, IndexSet> dirac_comb(std::int64_t n);

/// Minimum circular distance between distinct elements: min over pairs of
/// min(|a-b|, n - |a-b|).  Sets with fewer than two elements are a domain
/// error.
std::int64_t spread(const IndexSet& omega);

}  // namespace dftlab
