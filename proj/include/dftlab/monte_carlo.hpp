#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dftlab/bounds.hpp"
#include "dftlab/matrix_core.hpp"
#include "dftlab/random_sets.hpp"
#include "dftlab/spectral.hpp"

namespace dftlab {

enum class Scaling { none, inverse_sqrt_delta, inverse_sqrt_max, sqrt_n_over_omega };

const char* scaling_name(Scaling s);

struct Statistic {
  enum class Kind { mean_norm, moment, tail } kind = Kind::mean_norm;
  std::int64_t q = 1;  // moment only
  double u = 0.0;      // tail only; threshold applied to the scaled value

  static Statistic mean() { return {}; }
  static Statistic moment(std::int64_t q) { return {Kind::moment, q, 0.0}; }
  static Statistic tail(double u) { return {Kind::tail, 1, u}; }
};

/// One grid point: independent row (Omega) and column (T) set models plus the
/// delta labels the point is reported under.
struct GridPoint {
  RandomSetModel row_model;
  RandomSetModel col_model;
  double delta_row = 0.0;
  double delta_col = 0.0;
};

struct ExperimentPlan {
  BoundedMatrix matrix;
  std::vector<GridPoint> grid;
  std::int64_t trials = 100;
  std::uint64_t master_seed = 0;
  Scaling scaling = Scaling::none;
  Statistic statistic{};
  double norm_tol = kDefaultNormTol;
  // Resource guard: a trial whose |Omega| * |T| exceeds this many entries
  // throws ResourceBudgetError instead of materializing the submatrix.
  std::int64_t dense_entry_budget = std::int64_t(1) << 24;
};

struct ResourceBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrialSummary {
  double delta_row = 0.0;
  double delta_col = 0.0;
  double mean = 0.0;
  double std_dev = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::int64_t trials = 0;
  std::optional<double> moment_root;      // (mean of x^{2q})^{1/2q}
  std::optional<double> moment_root_se;   // jackknife standard error of the root
  std::optional<double> tail_frequency;
};

/// Runs the plan: per grid point and trial, draws Omega and T from streams
/// derived only from (master_seed, point index, trial index), computes the
/// submatrix norm, applies scaling, and aggregates in trial-index order with
/// compensated summation.  Output is a pure function of the plan.
std::vector<TrialSummary> run_experiment(const ExperimentPlan& plan);

struct MomentEstimate {
  double root = 0.0;              // (sum sigma^{2q} / N)^{1/2q}
  double root_se = 0.0;           // jackknife SE of the root
  double moment_se = 0.0;         // plain SE of the 2q-th moment itself
  double upper_edge = 0.0;        // root + 2.576 * root_se
  std::int64_t trials = 0;
  double max_norm = 0.0;
};

/// Empirical moment root over `trials` independent draws of (rows, cols).
/// Samples are max-normalized before powering so that 2q around 126 cannot
/// underflow the accumulator.
MomentEstimate estimate_moment_root(const BoundedMatrix& a, const RandomSetModel& rows,
                                    const RandomSetModel& cols, std::int64_t q,
                                    std::int64_t trials, SeedSpec seed);

struct ExtrapolationCheck {
  std::int64_t n = 0;
  std::int64_t q = 0;
  double lambda = 0.0;
  double delta = 0.0;
  double rho = 0.0;        // 1/n
  MomentEstimate lhs;      // moment root under Bernoulli(delta) both sides
  MomentEstimate small_m;  // moment root under Bernoulli(rho) both sides
  double rhs = 0.0;        // extrapolation_bound applied to small_m.root
  double margin = 0.0;     // rhs - lhs.root
  bool pass = false;
};

/// Checks the extrapolation inequality with both sides estimated empirically:
/// lhs root at rate delta against 8 delta^lambda max{1, n^lambda * small root}.
ExtrapolationCheck verify_extrapolation(std::int64_t n, std::int64_t q, double lambda,
                                        double delta, std::int64_t trials,
                                        std::uint64_t master_seed);

struct TailCheckRow {
  double u = 0.0;
  double threshold = 0.0;
  double cap = 0.0;             // min(1, probability bound)
  std::int64_t exceed_count = 0;
  double frequency = 0.0;
  double p_value = 0.0;         // exact binomial P(X >= count | cap)
  bool violation = false;       // p_value < 0.001
};

struct TailCheck {
  std::int64_t n = 0;
  double delta = 0.0;
  double lambda = 0.0;
  std::int64_t q = 0;
  std::int64_t trials = 0;
  TailVariant variant = TailVariant::fixed_cardinality_corollary;
  std::vector<TailCheckRow> rows;
  bool pass = false;
};

/// Empirical exceedance frequencies against the tail bound, one row per u.
/// A row is a violation only when the exact binomial tail probability of the
/// observed count under the theoretical cap drops below 0.001.
TailCheck verify_tail(std::int64_t n, double delta, double lambda, std::int64_t q,
                      const std::vector<double>& u_grid, std::int64_t trials,
                      std::uint64_t master_seed, TailVariant variant);

/// Square sweep: fixed-cardinality floor(delta n) on both sides per delta.
/// Grid must lie in (0, 0.5].  Scaled variant divides by sqrt(delta).
std::vector<TrialSummary> sweep_square(std::int64_t n, const std::vector<double>& delta_grid,
                                       std::int64_t trials, std::uint64_t master_seed,
                                       bool scaled);

/// Rectangular sweep over the product grid, fixed-cardinality models.
/// Grids must lie in (0, 1).  Scaled variant divides by sqrt(max{|T|,|Omega|}).
std::vector<TrialSummary> sweep_rect(std::int64_t n, const std::vector<double>& delta_t_grid,
                                     const std::vector<double>& delta_omega_grid,
                                     std::int64_t trials, std::uint64_t master_seed,
                                     bool scaled);

struct ArgmaxResult {
  double delta = 0.0;        // grid delta with the largest scaled mean
  double scaled_mean = 0.0;
  std::vector<TrialSummary> table;
};

/// Scans a geometric cardinality grid from m = 1 up to n/2 (ratio 2^{1/4},
/// consecutive at the small end) and returns the delta maximizing the
/// delta^{-1/2}-scaled mean norm.
ArgmaxResult argmax_scaled_delta(std::int64_t n, std::int64_t trials,
                                 std::uint64_t master_seed);

/// Exact binomial upper tail P(Bin(n, p) >= k).
double binomial_upper_tail(std::int64_t k, std::int64_t n, double p);

// --- Exhaustive / randomized statement verifiers (used by the CLI and the
// acceptance suite; each reports the measured margin, not just a verdict). ---

struct DonohoStarkCheck {
  std::int64_t n = 0;
  std::int64_t pairs = 0;
  double max_norm_under_premise = 0.0;  // over pairs with |T||Omega| < n
  double max_square_excess = 0.0;       // max of norm^2 - |T||Omega|/n, all pairs
  bool pass = false;
};
DonohoStarkCheck verify_donoho_stark(std::int64_t n);

struct TaoCheck {
  std::int64_t n = 0;
  std::int64_t pairs = 0;
  bool exhaustive = false;
  double max_norm_under_premise = 0.0;
  double min_margin = 0.0;  // 1 - max norm under premise
  bool pass = false;
};
/// Exhaustive over all pairs when random_pairs == 0 (guarded to n <= 8), else
/// `random_pairs` seeded draws biased toward |T| + |Omega| = n.  n must be
/// prime.
TaoCheck verify_tao(std::int64_t n, std::int64_t random_pairs, std::uint64_t seed);

struct LargeSieveCheck {
  std::int64_t n = 0;
  std::int64_t cases = 0;
  double max_excess = 0.0;  // max of norm^2 - bound
  bool pass = false;
};
/// All cyclic blocks T with |T| <= max_block, `omegas_per_case` random Omega
/// draws per block, squared norm against the large-sieve bound.
LargeSieveCheck verify_large_sieve(std::int64_t n, std::int64_t max_block,
                                   std::int64_t omegas_per_case, std::uint64_t seed);

struct CoordLemmaRow {
  double delta = 0.0;
  double u = 0.0;
  double p_fixed_one = 0.0, p_bern_one = 0.0;   // one-sided tail probabilities
  double p_fixed_two = 0.0, p_bern_two = 0.0;   // two-sided
};
struct CoordLemmaCheck {
  std::int64_t n = 0;
  std::vector<CoordLemmaRow> rows;
  double max_ratio_one = 0.0;  // max P_fixed / P_bern, one-sided (cap 2)
  double max_ratio_two = 0.0;  // two-sided (cap 4)
  bool pass = false;
};
/// Exact enumeration: fixed-cardinality tails dominated by 2x (one-sided) or
/// 4x (two-sided) the Bernoulli tails at the same rate.  Requires integer
/// delta * n.
CoordLemmaCheck verify_coords(std::int64_t n, const std::vector<double>& deltas,
                              const std::vector<double>& u_grid);

struct SquareCaseCheck {
  std::int64_t n = 0;
  std::int64_t max_m = 0;
  double max_decrease = 0.0;  // max over u, m<m' of P_m(u) - P_{m'}(u)
  bool pass = false;
};
/// Exact enumeration monotonicity: for square fixed-cardinality draws the
/// tail P(||F_{Omega,T}|| > u) is nondecreasing in the common cardinality m.
SquareCaseCheck verify_square_case(std::int64_t n, std::int64_t max_m,
                                   const std::vector<double>& u_grid);

}  // namespace dftlab
