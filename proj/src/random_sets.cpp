#include "dftlab/random_sets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "dftlab/spectral.hpp"

namespace dftlab {

namespace {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace

CounterRng::CounterRng(SeedSpec seed)
    : base_(mix64(mix64(seed.master_seed + kGolden) ^
                  mix64(seed.stream_index + 0xD1B54A32D192ED03ULL))) {}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(base_ + counter_ * kGolden);
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t CounterRng::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::domain_error("CounterRng::next_below: bound must be positive");
  // Lemire's unbiased multiply-shift rejection.
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (lo < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * bound;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

RandomSetModel RandomSetModel::fixed(std::int64_t n, std::int64_t m) {
  if (n < 1) throw std::domain_error("RandomSetModel: n must be positive");
  if (m < 0 || m > n) throw std::domain_error("RandomSetModel: cardinality outside [0, n]");
  return {SetModelKind::fixed_cardinality, n, m,
          static_cast<double>(m) / static_cast<double>(n)};
}

RandomSetModel RandomSetModel::fixed_fraction(std::int64_t n, double delta) {
  if (n < 1) throw std::domain_error("RandomSetModel: n must be positive");
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::domain_error("RandomSetModel: delta outside [0, 1]");
  // floor(delta n) with slack so decimal fractions (0.3 * 10 = 2.999...96)
  // land on the mathematical value.
  auto m = static_cast<std::int64_t>(std::floor(delta * static_cast<double>(n) + 1e-9));
  m = std::clamp<std::int64_t>(m, 0, n);
  RandomSetModel model{SetModelKind::fixed_cardinality, n, m, delta};
  return model;
}

RandomSetModel RandomSetModel::bernoulli(std::int64_t n, double delta) {
  if (n < 1) throw std::domain_error("RandomSetModel: n must be positive");
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::domain_error("RandomSetModel: delta outside [0, 1]");
  return {SetModelKind::bernoulli, n, 0, delta};
}

IndexSet sample_set(const RandomSetModel& model, CounterRng& rng) {
  const std::int64_t n = model.n;
  if (model.kind == SetModelKind::fixed_cardinality) {
    const std::int64_t m = model.cardinality;
    std::vector<std::int64_t> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), std::int64_t(1));
    // Partial Fisher-Yates: after m steps the prefix is a uniform m-subset.
    for (std::int64_t i = 0; i < m; ++i) {
      const auto j = i + static_cast<std::int64_t>(
                             rng.next_below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(m));
    return IndexSet(n, std::move(pool));
  }
  std::vector<std::int64_t> idx;
  for (std::int64_t i = 1; i <= n; ++i)
    if (rng.next_unit() < model.delta) idx.push_back(i);
  return IndexSet(n, std::move(idx));
}

IndexSet sample_set(const RandomSetModel& model, SeedSpec seed) {
  CounterRng rng(seed);
  return sample_set(model, rng);
}

std::vector<IndexSet> enumerate_sets(std::int64_t n, std::optional<std::int64_t> cardinality) {
  if (n < 0 || n > 16) throw std::domain_error("enumerate_sets: n must lie in [0, 16]");
  if (cardinality && (*cardinality < 0 || *cardinality > n))
    throw std::domain_error("enumerate_sets: cardinality outside [0, n]");
  std::vector<IndexSet> out;
  const std::uint64_t total = std::uint64_t(1) << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (cardinality && std::popcount(mask) != *cardinality) continue;
    out.push_back(IndexSet::from_mask(n, mask));
  }
  return out;
}

namespace {

// Probability of each subset under the model: uniform over the cardinality
// class, or delta^|S| (1-delta)^(n-|S|).
std::vector<double> cardinality_weights(const RandomSetModel& model) {
  const auto n = static_cast<std::size_t>(model.n);
  std::vector<double> weight_by_card(n + 1, 0.0);
  if (model.kind == SetModelKind::fixed_cardinality) {
    // 1 / binomial(n, m), computed once.
    double log_c = 0.0;
    for (std::int64_t i = 1; i <= model.cardinality; ++i)
      log_c += std::log(static_cast<double>(model.n - model.cardinality + i)) -
               std::log(static_cast<double>(i));
    weight_by_card[static_cast<std::size_t>(model.cardinality)] = std::exp(-log_c);
    return weight_by_card;
  }
  std::vector<double> dpow(n + 1, 1.0), cpow(n + 1, 1.0);
  for (std::size_t k = 1; k <= n; ++k) {
    dpow[k] = dpow[k - 1] * model.delta;
    cpow[k] = cpow[k - 1] * (1.0 - model.delta);
  }
  for (std::size_t k = 0; k <= n; ++k) weight_by_card[k] = dpow[k] * cpow[n - k];
  return weight_by_card;
}

}  // namespace

double exact_tail_probability(const BoundedMatrix& a, const RandomSetModel& model,
                              bool two_sided, double u) {
  if (model.n != a.n)
    throw std::domain_error("exact_tail_probability: model and matrix dimensions differ");
  const std::int64_t guard = two_sided ? 12 : 16;
  if (model.n > guard)
    throw std::domain_error("exact_tail_probability: n exceeds the enumeration guard (" +
                            std::to_string(guard) + ")");

  const auto weights = cardinality_weights(model);
  std::vector<IndexSet> sets;
  if (model.kind == SetModelKind::fixed_cardinality)
    sets = enumerate_sets(model.n, model.cardinality);
  else
    sets = enumerate_sets(model.n);

  double prob = 0.0;
  if (two_sided) {
    for (const auto& rows : sets) {
      const double wr = weights[static_cast<std::size_t>(rows.size())];
      for (const auto& cols : sets) {
        const double wc = weights[static_cast<std::size_t>(cols.size())];
        if (spectral_norm(submatrix(a, rows, cols)).value >= u) prob += wr * wc;
      }
    }
  } else {
    const IndexSet all_cols = IndexSet::full(model.n);
    for (const auto& rows : sets) {
      const double wr = weights[static_cast<std::size_t>(rows.size())];
      if (spectral_norm(submatrix(a, rows, all_cols)).value >= u) prob += wr;
    }
  }
  return std::clamp(prob, 0.0, 1.0);
}

BoundedMatrix phase_modulated_dft(std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("phase_modulated_dft: n must be positive");
  auto row_phase = std::make_shared<std::vector<Complex>>();
  auto col_phase = std::make_shared<std::vector<Complex>>();
  CounterRng rng(SeedSpec{seed, 0x70686173ULL});  // fixed private stream tag
  for (std::int64_t i = 0; i < 2 * n; ++i) {
    const double theta = 2.0 * std::numbers::pi * rng.next_unit();
    auto& target = (i < n) ? *row_phase : *col_phase;
    target.emplace_back(std::cos(theta), std::sin(theta));
  }
  BoundedMatrix m;
  m.n = n;
  m.entry = [n, row_phase, col_phase](std::int64_t omega, std::int64_t t) {
    return (*row_phase)[static_cast<std::size_t>(omega - 1)] * dft_entry(n, omega, t) *
           (*col_phase)[static_cast<std::size_t>(t - 1)];
  };
  m.declared_norm_bound = 1.0;
  m.declared_entry_bound = 1.0 / std::sqrt(static_cast<double>(n));
  return m;
}

}  // namespace dftlab
