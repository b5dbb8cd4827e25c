#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dftlab/matrix_core.hpp"

namespace dftlab {

/// Counter-based generator: output k of stream (master_seed, stream_index) is
/// a fixed integer mix of the three values and nothing else, so any trial of
/// any experiment can be replayed in isolation and results do not depend on
/// scheduling.  The mix is the SplitMix64 finalizer, applied twice to spread
/// the (seed, stream) pair into a base and then once per counter step.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

class CounterRng {
 public:
  explicit CounterRng(SeedSpec seed);

  std::uint64_t next_u64();

  /// Uniform in [0, 1), 53 random bits.
  double next_unit();

  /// Uniform in {0, ..., bound-1}, unbiased (Lemire rejection); bound >= 1.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::uint64_t base_ = 0;
  std::uint64_t counter_ = 0;
};

enum class SetModelKind { fixed_cardinality, bernoulli };

/// Distribution over subsets of {1, ..., n}: either exactly m elements drawn
/// uniformly, or each index kept independently with probability delta.
struct RandomSetModel {
  SetModelKind kind = SetModelKind::fixed_cardinality;
  std::int64_t n = 0;
  std::int64_t cardinality = 0;  // fixed_cardinality only
  double delta = 0.0;            // bernoulli rate; for fixed models the requested fraction

  static RandomSetModel fixed(std::int64_t n, std::int64_t m);

  /// Fixed model with m = floor(delta * n).  The floor is taken with a 1e-9
  /// absolute slack so that decimal fractions like 0.3 * 10 land on the
  /// mathematical value rather than one below it.
  static RandomSetModel fixed_fraction(std::int64_t n, double delta);

  static RandomSetModel bernoulli(std::int64_t n, double delta);
};

/// Draws one set.  Fixed-cardinality sampling is a partial Fisher-Yates
/// shuffle followed by a sort; Bernoulli walks the indices in order with one
/// uniform variate each.  Identical (model, seed) gives an identical set on
/// every platform.
IndexSet sample_set(const RandomSetModel& model, SeedSpec seed);

/// All subsets of {1, ..., n} in mask order (so {}, {1}, {2}, {1,2}, ... );
/// with `cardinality` set, only subsets of that size, still in mask order.
/// Guarded to n <= 16.
std::vector<IndexSet> enumerate_sets(std::int64_t n,
                                     std::optional<std::int64_t> cardinality = std::nullopt);

/// Exact P(||projected submatrix|| >= u) by enumerating every outcome with
/// its exact probability.  One-sided keeps T = {1..n} and draws Omega (row
/// projection); two-sided draws rows and columns independently from the same
/// model.  Enumeration cost is the guard: n <= 16 one-sided, n <= 12
/// two-sided.
double exact_tail_probability(const BoundedMatrix& a, const RandomSetModel& model,
                              bool two_sided, double u);

/// Draws with an already-positioned generator; the SeedSpec overload wraps
/// this with a fresh stream.
IndexSet sample_set(const RandomSetModel& model, CounterRng& rng);

/// DFT with independent unimodular random phases on rows and columns
/// (D1 F D2): still unitary with entry modulus n^{-1/2}, but no longer a
/// character table.  Exercises claims that assume only the two bounds.
BoundedMatrix phase_modulated_dft(std::int64_t n, std::uint64_t seed);

}  // namespace dftlab
