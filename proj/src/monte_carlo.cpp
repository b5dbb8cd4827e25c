#include "dftlab/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dftlab/parallel.hpp"

namespace dftlab {

namespace {

// Compensated (Kahan) sum, accumulated strictly in the order values are fed.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double kahan_mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  KahanSum s;
  for (double x : v) s.add(x);
  return s.value() / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  KahanSum ss;
  for (double x : v) ss.add((x - mean) * (x - mean));
  return std::sqrt(ss.value() / static_cast<double>(v.size() - 1));
}

struct NormSample {
  double norm = 0.0;
  std::int64_t rows = 0;
  std::int64_t cols = 0;
};

// Stream layout: trial (point, i) of a plan owns streams (point << 33) + 2i
// (rows) and (point << 33) + 2i + 1 (columns).  Any trial can be replayed in
// isolation and results cannot depend on scheduling.
SeedSpec stream_for(std::uint64_t master_seed, std::uint64_t point, std::uint64_t trial,
                    bool cols) {
  return SeedSpec{master_seed, (point << 33) + 2 * trial + (cols ? 1 : 0)};
}

std::vector<NormSample> sample_norms(const BoundedMatrix& a, const RandomSetModel& rows,
                                     const RandomSetModel& cols, std::int64_t trials,
                                     std::uint64_t master_seed, std::uint64_t point_index,
                                     double tol, std::int64_t entry_budget) {
  if (rows.n != a.n || cols.n != a.n)
    throw std::domain_error("sample_norms: model dimension differs from the matrix");
  std::vector<NormSample> out(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](std::int64_t i) {
    const auto t = static_cast<std::uint64_t>(i);
    const IndexSet omega = sample_set(rows, stream_for(master_seed, point_index, t, false));
    const IndexSet tset = sample_set(cols, stream_for(master_seed, point_index, t, true));
    if (omega.size() * tset.size() > entry_budget)
      throw ResourceBudgetError("trial submatrix of " +
                                std::to_string(omega.size() * tset.size()) +
                                " entries exceeds the dense budget of " +
                                std::to_string(entry_budget));
    auto& slot = out[static_cast<std::size_t>(i)];
    slot.rows = omega.size();
    slot.cols = tset.size();
    slot.norm = spectral_norm(submatrix(a, omega, tset), tol).value;
  });
  return out;
}

double scale_factor(Scaling mode, double delta_row, std::int64_t n, std::int64_t rows,
                    std::int64_t cols) {
  switch (mode) {
    case Scaling::none:
      return 1.0;
    case Scaling::inverse_sqrt_delta:
      return 1.0 / std::sqrt(delta_row);
    case Scaling::inverse_sqrt_max: {
      const std::int64_t m = std::max(rows, cols);
      return m > 0 ? 1.0 / std::sqrt(static_cast<double>(m)) : 0.0;
    }
    case Scaling::sqrt_n_over_omega:
      return rows > 0 ? std::sqrt(static_cast<double>(n) / static_cast<double>(rows)) : 0.0;
  }
  return 1.0;
}

// A constant factor lets scaled aggregates be derived from raw aggregates by
// one multiply each, which keeps the scaled and unscaled sweeps in an exact
// factor relation on identical draws.
bool scale_is_constant(Scaling mode, const GridPoint& p) {
  switch (mode) {
    case Scaling::none:
    case Scaling::inverse_sqrt_delta:
      return true;
    case Scaling::inverse_sqrt_max:
    case Scaling::sqrt_n_over_omega:
      return p.row_model.kind == SetModelKind::fixed_cardinality &&
             p.col_model.kind == SetModelKind::fixed_cardinality;
  }
  return false;
}

struct MomentAccumulation {
  double root = 0.0;
  double root_se = 0.0;
  double moment_se = 0.0;
  double max_norm = 0.0;
};

// Max-normalized plug-in root with a leave-one-out (jackknife) standard
// error; 2q around 126 would underflow without the normalization.
MomentAccumulation accumulate_moment(const std::vector<double>& values, std::int64_t q) {
  const auto n = static_cast<std::int64_t>(values.size());
  MomentAccumulation acc;
  double top = 0.0;
  for (double v : values) top = std::max(top, v);
  acc.max_norm = top;
  if (top == 0.0 || n == 0) return acc;

  const double p2q = 2.0 * static_cast<double>(q);
  std::vector<double> x(values.size());
  KahanSum sum;
  for (std::size_t i = 0; i < values.size(); ++i) {
    x[i] = std::pow(values[i] / top, p2q);
    sum.add(x[i]);
  }
  const double s = sum.value();
  acc.root = top * std::pow(s / static_cast<double>(n), 1.0 / p2q);

  if (n >= 2) {
    std::vector<double> loo(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double rest = std::max(0.0, s - x[i]);
      loo[i] = top * std::pow(rest / static_cast<double>(n - 1), 1.0 / p2q);
    }
    const double loo_mean = kahan_mean(loo);
    KahanSum dev;
    for (double t : loo) dev.add((t - loo_mean) * (t - loo_mean));
    acc.root_se = std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n) *
                            dev.value());
    // Plain standard error of the 2q-th moment itself, in absolute units.
    const double x_mean = s / static_cast<double>(n);
    const double x_std = sample_std(x, x_mean);
    acc.moment_se =
        std::pow(top, p2q) * x_std / std::sqrt(static_cast<double>(n));
  }
  return acc;
}

}  // namespace

const char* scaling_name(Scaling s) {
  switch (s) {
    case Scaling::none: return "none";
    case Scaling::inverse_sqrt_delta: return "inverse_sqrt_delta";
    case Scaling::inverse_sqrt_max: return "inverse_sqrt_max";
    case Scaling::sqrt_n_over_omega: return "sqrt_n_over_omega";
  }
  return "none";
}

std::vector<TrialSummary> run_experiment(const ExperimentPlan& plan) {
  if (plan.trials < 1) throw std::domain_error("run_experiment: trials must be >= 1");
  if (plan.statistic.kind == Statistic::Kind::moment && plan.statistic.q < 1)
    throw std::domain_error("run_experiment: moment statistic needs q >= 1");
  if (plan.statistic.kind == Statistic::Kind::tail && plan.statistic.u < 0)
    throw std::domain_error("run_experiment: tail statistic needs u >= 0");
  if (plan.scaling == Scaling::inverse_sqrt_delta)
    for (const auto& p : plan.grid)
      if (!(p.delta_row > 0))
        throw std::domain_error("run_experiment: delta scaling needs positive delta");

  std::vector<TrialSummary> table;
  table.reserve(plan.grid.size());
  for (std::size_t pi = 0; pi < plan.grid.size(); ++pi) {
    const GridPoint& point = plan.grid[pi];
    const auto samples =
        sample_norms(plan.matrix, point.row_model, point.col_model, plan.trials,
                     plan.master_seed, static_cast<std::uint64_t>(pi), plan.norm_tol,
                     plan.dense_entry_budget);

    const bool constant = scale_is_constant(plan.scaling, point);
    std::vector<double> values(samples.size());
    double factor = 1.0;
    if (constant) {
      // Fixed models draw their cardinality every time, so the factor is a
      // function of the point alone; aggregate raw values, scale aggregates.
      factor = scale_factor(plan.scaling, point.delta_row, plan.matrix.n,
                            point.row_model.cardinality, point.col_model.cardinality);
      for (std::size_t i = 0; i < samples.size(); ++i) values[i] = samples[i].norm;
    } else {
      for (std::size_t i = 0; i < samples.size(); ++i)
        values[i] = samples[i].norm * scale_factor(plan.scaling, point.delta_row,
                                                   plan.matrix.n, samples[i].rows,
                                                   samples[i].cols);
    }

    TrialSummary row;
    row.delta_row = point.delta_row;
    row.delta_col = point.delta_col;
    row.trials = plan.trials;
    double mn = values[0], mx = values[0];
    for (double v : values) {
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    double mean = kahan_mean(values);
    mean = std::clamp(mean, mn, mx);  // compensated mean can round past the hull
    row.std_dev = sample_std(values, mean);
    row.mean = mean;
    row.min = mn;
    row.max = mx;

    if (plan.statistic.kind == Statistic::Kind::moment) {
      const auto acc = accumulate_moment(values, plan.statistic.q);
      row.moment_root = acc.root;
      row.moment_root_se = acc.root_se;
    }
    if (plan.statistic.kind == Statistic::Kind::tail) {
      std::int64_t count = 0;
      if (constant) {
        for (double v : values)
          if (factor * v >= plan.statistic.u) ++count;
      } else {
        for (double v : values)
          if (v >= plan.statistic.u) ++count;
      }
      row.tail_frequency = static_cast<double>(count) / static_cast<double>(plan.trials);
    }

    if (constant && factor != 1.0) {
      row.mean *= factor;
      row.std_dev *= factor;
      row.min *= factor;
      row.max *= factor;
      if (row.moment_root) *row.moment_root *= factor;
      if (row.moment_root_se) *row.moment_root_se *= factor;
    }
    table.push_back(std::move(row));
  }
  return table;
}

MomentEstimate estimate_moment_root(const BoundedMatrix& a, const RandomSetModel& rows,
                                    const RandomSetModel& cols, std::int64_t q,
                                    std::int64_t trials, SeedSpec seed) {
  if (q < 1) throw std::domain_error("estimate_moment_root: q must be >= 1");
  if (trials < 1) throw std::domain_error("estimate_moment_root: trials must be >= 1");
  const auto samples = sample_norms(a, rows, cols, trials, seed.master_seed,
                                    seed.stream_index, kDefaultNormTol,
                                    std::int64_t(1) << 24);
  std::vector<double> values(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) values[i] = samples[i].norm;
  const auto acc = accumulate_moment(values, q);
  MomentEstimate est;
  est.root = acc.root;
  est.root_se = acc.root_se;
  est.moment_se = acc.moment_se;
  est.upper_edge = acc.root + 2.576 * acc.root_se;  // one-sided 99% normal edge
  est.trials = trials;
  est.max_norm = acc.max_norm;
  return est;
}

ExtrapolationCheck verify_extrapolation(std::int64_t n, std::int64_t q, double lambda,
                                        double delta, std::int64_t trials,
                                        std::uint64_t master_seed) {
  const double rho = 1.0 / static_cast<double>(n);
  // Validates every premise (q window included) before any sampling.
  const double probe = extrapolation_bound(0.0, rho, delta, lambda, q, n);
  (void)probe;

  const BoundedMatrix f = BoundedMatrix::dft(n);
  ExtrapolationCheck check;
  check.n = n;
  check.q = q;
  check.lambda = lambda;
  check.delta = delta;
  check.rho = rho;
  check.lhs = estimate_moment_root(f, RandomSetModel::bernoulli(n, delta),
                                   RandomSetModel::bernoulli(n, delta), q, trials,
                                   SeedSpec{master_seed, 0});
  check.small_m = estimate_moment_root(f, RandomSetModel::bernoulli(n, rho),
                                       RandomSetModel::bernoulli(n, rho), q, trials,
                                       SeedSpec{master_seed, 1});
  check.rhs = extrapolation_bound(check.small_m.root, rho, delta, lambda, q, n);
  check.margin = check.rhs - check.lhs.root;
  check.pass = check.lhs.root <= check.rhs;
  return check;
}

double binomial_upper_tail(std::int64_t k, std::int64_t n, double p) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  // Sum C(n,j) p^j (1-p)^(n-j) for j in [k, n], each term via lgamma in log
  // space; terms decay geometrically past the mode, so stop once negligible.
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);
  KahanSum acc;
  const double mode = static_cast<double>(n) * p;
  for (std::int64_t j = k; j <= n; ++j) {
    const double lg = lg_n - std::lgamma(static_cast<double>(j) + 1.0) -
                      std::lgamma(static_cast<double>(n - j) + 1.0) +
                      static_cast<double>(j) * log_p +
                      static_cast<double>(n - j) * log_q;
    const double term = std::exp(lg);
    acc.add(term);
    if (static_cast<double>(j) > mode && term < acc.value() * 1e-17) break;
  }
  return std::clamp(acc.value(), 0.0, 1.0);
}

TailCheck verify_tail(std::int64_t n, double delta, double lambda, std::int64_t q,
                      const std::vector<double>& u_grid, std::int64_t trials,
                      std::uint64_t master_seed, TailVariant variant) {
  if (u_grid.empty()) throw std::domain_error("verify_tail: empty u grid");
  if (trials < 1) throw std::domain_error("verify_tail: trials must be >= 1");
  // Validate all parameters up front via the bound itself.
  for (double u : u_grid) (void)tail_bound(TailParams{n, delta, lambda, q, u}, variant);

  const BoundedMatrix f = BoundedMatrix::dft(n);
  const RandomSetModel model = variant == TailVariant::bernoulli_lemma
                                   ? RandomSetModel::bernoulli(n, delta)
                                   : RandomSetModel::fixed_fraction(n, delta);
  const auto samples =
      sample_norms(f, model, model, trials, master_seed, 0, kDefaultNormTol,
                   std::int64_t(1) << 24);

  TailCheck check;
  check.n = n;
  check.delta = delta;
  check.lambda = lambda;
  check.q = q;
  check.trials = trials;
  check.variant = variant;
  check.pass = true;
  for (double u : u_grid) {
    const auto tb = tail_bound(TailParams{n, delta, lambda, q, u}, variant);
    TailCheckRow row;
    row.u = u;
    row.threshold = tb.threshold;
    row.cap = tb.probability;
    for (const auto& s : samples)
      if (s.norm >= tb.threshold) ++row.exceed_count;
    row.frequency = static_cast<double>(row.exceed_count) / static_cast<double>(trials);
    row.p_value = binomial_upper_tail(row.exceed_count, trials, row.cap);
    // Exceeding the cap is only a violation when the count is statistically
    // incompatible with it (99.9% one-sided).
    row.violation = row.p_value < 0.001;
    if (row.violation) check.pass = false;
    check.rows.push_back(row);
  }
  return check;
}

std::vector<TrialSummary> sweep_square(std::int64_t n, const std::vector<double>& delta_grid,
                                       std::int64_t trials, std::uint64_t master_seed,
                                       bool scaled) {
  ExperimentPlan plan;
  plan.matrix = BoundedMatrix::dft(n);
  plan.trials = trials;
  plan.master_seed = master_seed;
  plan.scaling = scaled ? Scaling::inverse_sqrt_delta : Scaling::none;
  for (double d : delta_grid) {
    if (!(d > 0.0 && d <= 0.5))
      throw std::domain_error("sweep_square: delta grid must lie in (0, 0.5]");
    GridPoint p;
    p.row_model = RandomSetModel::fixed_fraction(n, d);
    p.col_model = RandomSetModel::fixed_fraction(n, d);
    p.delta_row = d;
    p.delta_col = d;
    plan.grid.push_back(std::move(p));
  }
  return run_experiment(plan);
}

std::vector<TrialSummary> sweep_rect(std::int64_t n, const std::vector<double>& delta_t_grid,
                                     const std::vector<double>& delta_omega_grid,
                                     std::int64_t trials, std::uint64_t master_seed,
                                     bool scaled) {
  ExperimentPlan plan;
  plan.matrix = BoundedMatrix::dft(n);
  plan.trials = trials;
  plan.master_seed = master_seed;
  plan.scaling = scaled ? Scaling::inverse_sqrt_max : Scaling::none;
  for (double dt : delta_t_grid) {
    if (!(dt > 0.0 && dt < 1.0))
      throw std::domain_error("sweep_rect: delta grids must lie in (0, 1)");
    for (double dw : delta_omega_grid) {
      if (!(dw > 0.0 && dw < 1.0))
        throw std::domain_error("sweep_rect: delta grids must lie in (0, 1)");
      GridPoint p;
      p.row_model = RandomSetModel::fixed_fraction(n, dw);
      p.col_model = RandomSetModel::fixed_fraction(n, dt);
      p.delta_row = dw;  // Omega
      p.delta_col = dt;  // T
      plan.grid.push_back(std::move(p));
    }
  }
  return run_experiment(plan);
}

ArgmaxResult argmax_scaled_delta(std::int64_t n, std::int64_t trials,
                                 std::uint64_t master_seed) {
  if (n < 2) throw std::domain_error("argmax_scaled_delta: n must be >= 2");
  ExperimentPlan plan;
  plan.matrix = BoundedMatrix::dft(n);
  plan.trials = trials;
  plan.master_seed = master_seed;
  plan.scaling = Scaling::inverse_sqrt_delta;
  const double ratio = std::pow(2.0, 0.25);
  std::int64_t m = 1;
  while (m <= n / 2) {
    GridPoint p;
    p.row_model = RandomSetModel::fixed(n, m);
    p.col_model = RandomSetModel::fixed(n, m);
    p.delta_row = static_cast<double>(m) / static_cast<double>(n);
    p.delta_col = p.delta_row;
    plan.grid.push_back(std::move(p));
    const auto next = static_cast<std::int64_t>(
        std::llround(static_cast<double>(m) * ratio));
    m = std::max(m + 1, next);
  }
  ArgmaxResult result;
  result.table = run_experiment(plan);
  for (const auto& row : result.table) {
    if (row.mean > result.scaled_mean) {
      result.scaled_mean = row.mean;
      result.delta = row.delta_row;
    }
  }
  return result;
}

DonohoStarkCheck verify_donoho_stark(std::int64_t n) {
  if (n < 1 || n > 12)
    throw std::domain_error("verify_donoho_stark: n must lie in [1, 12]");
  const BoundedMatrix f = BoundedMatrix::dft(n);
  const auto sets = enumerate_sets(n);
  const auto count = static_cast<std::int64_t>(sets.size());

  std::vector<double> premise_max(sets.size(), 0.0);
  std::vector<double> excess_max(sets.size(), -1.0);
  parallel_for(count, [&](std::int64_t ri) {
    const IndexSet& rows = sets[static_cast<std::size_t>(ri)];
    double pmax = 0.0, emax = -1.0;
    for (const auto& cols : sets) {
      const double norm = spectral_norm(submatrix(f, rows, cols)).value;
      const double frob_sq = static_cast<double>(rows.size() * cols.size()) /
                             static_cast<double>(n);
      emax = std::max(emax, norm * norm - frob_sq);
      if (rows.size() * cols.size() < n) pmax = std::max(pmax, norm);
    }
    premise_max[static_cast<std::size_t>(ri)] = pmax;
    excess_max[static_cast<std::size_t>(ri)] = emax;
  });

  DonohoStarkCheck check;
  check.n = n;
  check.pairs = count * count;
  for (double v : premise_max) check.max_norm_under_premise = std::max(check.max_norm_under_premise, v);
  for (double v : excess_max) check.max_square_excess = std::max(check.max_square_excess, v);
  check.pass = check.max_norm_under_premise < 1.0 - 1e-9 && check.max_square_excess <= 1e-9;
  return check;
}

TaoCheck verify_tao(std::int64_t n, std::int64_t random_pairs, std::uint64_t seed) {
  if (!is_prime(n)) throw std::domain_error("verify_tao: n must be prime");
  const BoundedMatrix f = BoundedMatrix::dft(n);
  TaoCheck check;
  check.n = n;

  double max_norm = 0.0;
  if (random_pairs <= 0) {
    if (n > 8) throw std::domain_error("verify_tao: exhaustive mode is guarded to n <= 8");
    const auto sets = enumerate_sets(n);
    for (const auto& rows : sets) {
      for (const auto& cols : sets) {
        if (rows.size() + cols.size() > n) continue;
        max_norm = std::max(max_norm, spectral_norm(submatrix(f, rows, cols)).value);
        ++check.pairs;
      }
    }
    check.exhaustive = true;
  } else {
    CounterRng rng(SeedSpec{seed, 0});
    for (std::int64_t i = 0; i < random_pairs; ++i) {
      const auto a = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(n + 1)));
      // Half the draws sit on the boundary |T| + |Omega| = n, where the
      // strict inequality is under the most stress.
      const bool boundary = (rng.next_u64() & 1) != 0;
      const std::int64_t b =
          boundary ? n - a
                   : static_cast<std::int64_t>(
                         rng.next_below(static_cast<std::uint64_t>(n - a + 1)));
      const IndexSet rows = sample_set(RandomSetModel::fixed(n, a), rng);
      const IndexSet cols = sample_set(RandomSetModel::fixed(n, b), rng);
      max_norm = std::max(max_norm, spectral_norm(submatrix(f, rows, cols)).value);
      ++check.pairs;
    }
  }
  check.max_norm_under_premise = max_norm;
  check.min_margin = 1.0 - max_norm;
  check.pass = max_norm < 1.0 - 1e-9;
  return check;
}

LargeSieveCheck verify_large_sieve(std::int64_t n, std::int64_t max_block,
                                   std::int64_t omegas_per_case, std::uint64_t seed) {
  if (n < 2) throw std::domain_error("verify_large_sieve: n must be >= 2");
  if (max_block < 1 || max_block > n)
    throw std::domain_error("verify_large_sieve: max_block must lie in [1, n]");
  if (omegas_per_case < 1)
    throw std::domain_error("verify_large_sieve: need at least one draw per case");
  const BoundedMatrix f = BoundedMatrix::dft(n);

  const std::int64_t cases = n * max_block;
  std::vector<double> case_excess(static_cast<std::size_t>(cases), -1.0);
  parallel_for(cases, [&](std::int64_t ci) {
    const std::int64_t start = ci / max_block + 1;
    const std::int64_t len = ci % max_block + 1;
    std::vector<std::int64_t> block(static_cast<std::size_t>(len));
    for (std::int64_t j = 0; j < len; ++j)
      block[static_cast<std::size_t>(j)] = (start - 1 + j) % n + 1;
    const IndexSet t(n, std::move(block));

    CounterRng rng(SeedSpec{seed, static_cast<std::uint64_t>(ci)});
    double emax = -1.0;
    for (std::int64_t d = 0; d < omegas_per_case; ++d) {
      // Random cardinality in [2, n] (spread needs two indices), then a
      // uniform set of that size.
      const auto k = 2 + static_cast<std::int64_t>(
                             rng.next_below(static_cast<std::uint64_t>(n - 1)));
      const IndexSet omega = sample_set(RandomSetModel::fixed(n, k), rng);
      const double norm = spectral_norm(submatrix(f, omega, t)).value;
      const double bound = (static_cast<double>(len) +
                            static_cast<double>(n) / static_cast<double>(spread(omega)) -
                            1.0) /
                           static_cast<double>(n);
      emax = std::max(emax, norm * norm - bound);
    }
    case_excess[static_cast<std::size_t>(ci)] = emax;
  });

  LargeSieveCheck check;
  check.n = n;
  check.cases = cases;
  check.max_excess = -1.0;
  for (double e : case_excess) check.max_excess = std::max(check.max_excess, e);
  check.pass = check.max_excess <= 1e-9;
  return check;
}

CoordLemmaCheck verify_coords(std::int64_t n, const std::vector<double>& deltas,
                              const std::vector<double>& u_grid) {
  if (n < 1 || n > 12) throw std::domain_error("verify_coords: n must lie in [1, 12]");
  if (deltas.empty() || u_grid.empty())
    throw std::domain_error("verify_coords: empty parameter grid");
  const BoundedMatrix f = BoundedMatrix::dft(n);

  CoordLemmaCheck check;
  check.n = n;
  check.pass = true;
  for (double delta : deltas) {
    const double m_real = delta * static_cast<double>(n);
    const auto m = static_cast<std::int64_t>(std::llround(m_real));
    if (std::abs(m_real - static_cast<double>(m)) > 1e-9)
      throw std::domain_error("verify_coords: delta * n must be an integer");
    const RandomSetModel fixed = RandomSetModel::fixed(n, m);
    const RandomSetModel bern = RandomSetModel::bernoulli(n, delta);
    for (double u : u_grid) {
      CoordLemmaRow row;
      row.delta = delta;
      row.u = u;
      row.p_fixed_one = exact_tail_probability(f, fixed, false, u);
      row.p_bern_one = exact_tail_probability(f, bern, false, u);
      row.p_fixed_two = exact_tail_probability(f, fixed, true, u);
      row.p_bern_two = exact_tail_probability(f, bern, true, u);
      if (row.p_fixed_one > 2.0 * row.p_bern_one + 1e-12) check.pass = false;
      if (row.p_fixed_two > 4.0 * row.p_bern_two + 1e-12) check.pass = false;
      if (row.p_bern_one > 0)
        check.max_ratio_one = std::max(check.max_ratio_one, row.p_fixed_one / row.p_bern_one);
      if (row.p_bern_two > 0)
        check.max_ratio_two = std::max(check.max_ratio_two, row.p_fixed_two / row.p_bern_two);
      check.rows.push_back(row);
    }
  }
  return check;
}

SquareCaseCheck verify_square_case(std::int64_t n, std::int64_t max_m,
                                  const std::vector<double>& u_grid) {
  if (n < 1 || n > 12) throw std::domain_error("verify_square_case: n must lie in [1, 12]");
  if (max_m < 1 || max_m > n)
    throw std::domain_error("verify_square_case: max_m must lie in [1, n]");
  if (u_grid.empty()) throw std::domain_error("verify_square_case: empty u grid");
  const BoundedMatrix f = BoundedMatrix::dft(n);

  SquareCaseCheck check;
  check.n = n;
  check.max_m = max_m;
  check.max_decrease = -1.0;
  for (double u : u_grid) {
    double prev = -1.0;
    for (std::int64_t m = 1; m <= max_m; ++m) {
      const double p =
          exact_tail_probability(f, RandomSetModel::fixed(n, m), true, u);
      if (m > 1) check.max_decrease = std::max(check.max_decrease, prev - p);
      prev = p;
    }
  }
  check.pass = check.max_decrease <= 1e-12;
  return check;
}

}  // namespace dftlab
