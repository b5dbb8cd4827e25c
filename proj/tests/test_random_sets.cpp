#include <cmath>
#include <map>

#include <doctest.h>

#include "dftlab/random_sets.hpp"
#include "dftlab/spectral.hpp"

using namespace dftlab;

TEST_SUITE("randomsets") {

TEST_CASE("counter rng: stream separation and basic ranges") {
  CounterRng a({42, 0}), b({42, 0}), c({42, 1}), d({43, 0});
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_u64() == b.next_u64());
  // Distinct streams and distinct seeds diverge immediately.
  CounterRng a2({42, 0});
  CHECK(a2.next_u64() != c.next_u64());
  CounterRng a3({42, 0});
  CHECK(a3.next_u64() != d.next_u64());

  CounterRng r({1, 2});
  for (int i = 0; i < 1000; ++i) {
    const double u = r.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.next_below(1) == 0);
    CHECK(r.next_below(7) < 7);
  }
}

TEST_CASE("counter rng: unit variates look uniform") {
  CounterRng r({987, 3});
  double sum = 0.0;
  const int reps = 100000;
  for (int i = 0; i < reps; ++i) sum += r.next_unit();
  // SE of the mean is (1/sqrt(12))/sqrt(reps) = 9.1e-4; allow 5 sigma.
  CHECK(sum / reps == doctest::Approx(0.5).epsilon(0.005));
}

TEST_CASE("sample_set: determinism and edge cardinalities") {
  const auto model = RandomSetModel::fixed(20, 7);
  const auto s1 = sample_set(model, SeedSpec{11, 5});
  const auto s2 = sample_set(model, SeedSpec{11, 5});
  CHECK(s1 == s2);
  CHECK(s1.size() == 7);

  CHECK(sample_set(RandomSetModel::fixed(9, 9), SeedSpec{0, 0}) == IndexSet::full(9));
  CHECK(sample_set(RandomSetModel::fixed(9, 0), SeedSpec{0, 0}).is_empty());
  CHECK(sample_set(RandomSetModel::bernoulli(9, 0.0), SeedSpec{0, 0}).is_empty());
  CHECK(sample_set(RandomSetModel::bernoulli(9, 1.0), SeedSpec{0, 0}) == IndexSet::full(9));

  CHECK_THROWS_AS(RandomSetModel::fixed(5, 6), std::domain_error);
  CHECK_THROWS_AS(RandomSetModel::fixed(5, -1), std::domain_error);
  CHECK_THROWS_AS(RandomSetModel::bernoulli(5, 1.5), std::domain_error);
}

TEST_CASE("fixed_fraction floors with decimal slack") {
  CHECK(RandomSetModel::fixed_fraction(10, 0.3).cardinality == 3);   // 0.3*10 = 2.999...
  CHECK(RandomSetModel::fixed_fraction(1024, 1.0 / 1024).cardinality == 1);
  CHECK(RandomSetModel::fixed_fraction(7, 0.99).cardinality == 6);
  CHECK(RandomSetModel::fixed_fraction(8, 0.0).cardinality == 0);
}

TEST_CASE("fixed-cardinality draws are uniform over subsets") {
  std::map<std::uint64_t, int> counts;
  const auto model = RandomSetModel::fixed(4, 2);
  const int reps = 100000;
  for (int i = 0; i < reps; ++i) {
    const auto s = sample_set(model, SeedSpec{2024, static_cast<std::uint64_t>(i)});
    std::uint64_t mask = 0;
    for (auto idx : s.indices()) mask |= 1ULL << (idx - 1);
    counts[mask]++;
  }
  REQUIRE(counts.size() == 6);
  for (const auto& [mask, c] : counts)
    CHECK(static_cast<double>(c) / reps == doctest::Approx(1.0 / 6).epsilon(0.06));
}

TEST_CASE("bernoulli cardinality is binomial") {
  const std::int64_t n = 10;
  const double delta = 0.3;
  const auto model = RandomSetModel::bernoulli(n, delta);
  std::vector<int> counts(n + 1, 0);
  const int reps = 100000;
  for (int i = 0; i < reps; ++i)
    counts[static_cast<std::size_t>(sample_set(model, SeedSpec{77, static_cast<std::uint64_t>(i)}).size())]++;
  for (std::int64_t k = 0; k <= n; ++k) {
    double want = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                           k * std::log(delta) + (n - k) * std::log1p(-delta));
    CHECK(static_cast<double>(counts[static_cast<std::size_t>(k)]) / reps ==
          doctest::Approx(want).epsilon(0.05).scale(1.0));
  }
}

TEST_CASE("enumerate_sets walks masks in order") {
  const auto all = enumerate_sets(2);
  REQUIRE(all.size() == 4);
  CHECK(all[0].is_empty());
  CHECK(all[1].indices() == std::vector<std::int64_t>{1});
  CHECK(all[2].indices() == std::vector<std::int64_t>{2});
  CHECK(all[3].indices() == std::vector<std::int64_t>{1, 2});

  const auto pairs = enumerate_sets(4, 2);
  CHECK(pairs.size() == 6);
  for (const auto& s : pairs) CHECK(s.size() == 2);

  CHECK(enumerate_sets(16, 16).size() == 1);
  CHECK_THROWS_AS(enumerate_sets(17), std::domain_error);
}

TEST_CASE("exact tail probability: endpoints and monotonicity") {
  const auto f = BoundedMatrix::dft(6);
  const auto model = RandomSetModel::fixed(6, 3);
  CHECK(exact_tail_probability(f, model, true, 0.0) == doctest::Approx(1.0));
  CHECK(exact_tail_probability(f, model, true, 1.0 + 1e-6) == 0.0);
  double prev = 1.0;
  for (double u = 0.1; u < 1.05; u += 0.1) {
    const double p = exact_tail_probability(f, model, true, u);
    CHECK(p <= prev + 1e-15);
    prev = p;
  }
  CHECK_THROWS_AS(exact_tail_probability(BoundedMatrix::dft(13), model, true, 0.5),
                  std::domain_error);  // guard: two-sided enumeration capped at n = 12
}

TEST_CASE("exact tail probability matches monte carlo") {
  const std::int64_t n = 8;
  const auto f = BoundedMatrix::dft(n);
  const auto model = RandomSetModel::bernoulli(n, 0.4);
  const double u = 0.75;
  const double exact = exact_tail_probability(f, model, true, u);
  const int reps = 4000;
  int hits = 0;
  for (int i = 0; i < reps; ++i) {
    const auto rows = sample_set(model, SeedSpec{5, 2 * static_cast<std::uint64_t>(i)});
    const auto cols = sample_set(model, SeedSpec{5, 2 * static_cast<std::uint64_t>(i) + 1});
    if (spectral_norm(submatrix(f, rows, cols)).value >= u) ++hits;
  }
  const double freq = static_cast<double>(hits) / reps;
  const double se = std::sqrt(exact * (1.0 - exact) / reps);
  CHECK(std::abs(freq - exact) <= 4.0 * se + 1e-3);
}

TEST_CASE("one-sided tail keeps every column") {
  // One-sided: T = {1..n} fixed, only Omega random.  At u slightly below 1
  // the row projection of a unitary matrix always has norm 1, so the tail
  // probability is exactly P(Omega nonempty).
  const std::int64_t n = 5;
  const double delta = 0.3;
  const auto f = BoundedMatrix::dft(n);
  const double p = exact_tail_probability(f, RandomSetModel::bernoulli(n, delta), false, 0.999);
  CHECK(p == doctest::Approx(1.0 - std::pow(1.0 - delta, n)).epsilon(1e-12));
}

TEST_CASE("phase modulated dft stays unitary with flat entries") {
  const std::int64_t n = 16;
  const auto a = phase_modulated_dft(n, 31);
  const auto b = phase_modulated_dft(n, 31);
  const auto c = phase_modulated_dft(n, 32);
  const auto full = IndexSet::full(n);
  const auto ma = submatrix(a, full, full);
  CHECK(ma == submatrix(b, full, full));
  CHECK(ma != submatrix(c, full, full));
  CHECK((ma.adjoint() * ma - DenseComplexMatrix::Identity(n, n)).norm() <= 1e-12);
  for (std::int64_t w = 1; w <= n; ++w)
    for (std::int64_t t = 1; t <= n; ++t)
      CHECK(std::abs(a.entry(w, t)) == doctest::Approx(0.25).epsilon(1e-13));
}

}  // TEST_SUITE
