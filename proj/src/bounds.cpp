#include "dftlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dftlab/matrix_core.hpp"

namespace dftlab {

namespace {

void check_sizes(std::int64_t t_size, std::int64_t omega_size, std::int64_t n,
                 const char* who) {
  if (n < 1) throw std::domain_error(std::string(who) + ": n must be positive");
  if (t_size < 0 || t_size > n || omega_size < 0 || omega_size > n)
    throw std::domain_error(std::string(who) + ": set sizes must lie in [0, n]");
}

void push(BoundReport& r, const char* name, double value) {
  r.parameters.emplace_back(name, value);
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

BoundReport donoho_stark(std::int64_t t_size, std::int64_t omega_size, std::int64_t n) {
  check_sizes(t_size, omega_size, n, "donoho_stark");
  BoundReport r;
  r.name = "donoho_stark";
  r.quantity = BoundQuantity::norm;
  r.bound_value = std::sqrt(static_cast<double>(t_size) * static_cast<double>(omega_size) /
                            static_cast<double>(n));
  r.premises_hold = t_size * omega_size < n;
  if (r.premises_hold) {
    r.verdict = "linearly independent";
  } else {
    r.premise_detail = "|T||Omega| = " + std::to_string(t_size * omega_size) +
                       " >= n; no conclusion (the Dirac comb attains dependence at "
                       "|T||Omega| = n)";
  }
  push(r, "t_size", static_cast<double>(t_size));
  push(r, "omega_size", static_cast<double>(omega_size));
  push(r, "n", static_cast<double>(n));
  return r;
}

BoundReport additive_bound(std::int64_t t_size, std::int64_t omega_size, std::int64_t n) {
  check_sizes(t_size, omega_size, n, "additive_bound");
  BoundReport r;
  r.name = "additive_bound";
  r.quantity = BoundQuantity::norm;
  r.bound_value = 1.0;
  const std::int64_t sum = t_size + omega_size;
  r.premises_hold = sum * sum < 4 * n;  // |T| + |Omega| < 2 sqrt(n), exactly
  if (r.premises_hold)
    r.verdict = "linearly independent";
  else
    r.premise_detail =
        "|T| + |Omega| = " + std::to_string(sum) + " is not below 2 sqrt(n)";
  push(r, "t_size", static_cast<double>(t_size));
  push(r, "omega_size", static_cast<double>(omega_size));
  push(r, "n", static_cast<double>(n));
  return r;
}

L0Report l0_uncertainty(const Eigen::VectorXcd& x) {
  const auto n = static_cast<std::int64_t>(x.size());
  if (n < 1) throw std::domain_error("l0_uncertainty: empty vector");

  // "Nonzero" is relative: 1e-8 of the largest modulus in each vector, since
  // the DFT of an exactly sparse input carries rounding noise.
  const auto support = [](const Eigen::VectorXcd& v) {
    const double top = v.cwiseAbs().maxCoeff();
    if (top == 0.0) return std::int64_t(-1);
    std::int64_t count = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (std::abs(v(i)) > 1e-8 * top) ++count;
    return count;
  };

  const std::int64_t time_support = support(x);
  if (time_support < 0) throw std::domain_error("l0_uncertainty: zero vector");

  Eigen::VectorXcd fx(n);
  for (std::int64_t w = 1; w <= n; ++w) {
    Complex acc = 0.0;
    for (std::int64_t t = 1; t <= n; ++t) acc += dft_entry(n, w, t) * x(t - 1);
    fx(w - 1) = acc;
  }
  const std::int64_t freq_support = support(fx);

  L0Report rep;
  rep.n = n;
  rep.time_support = time_support;
  rep.frequency_support = freq_support;
  rep.product = time_support * freq_support;
  rep.satisfied = rep.product >= n;
  return rep;
}

BoundReport tao_premise(std::int64_t t_size, std::int64_t omega_size, std::int64_t n) {
  check_sizes(t_size, omega_size, n, "tao_premise");
  BoundReport r;
  r.name = "tao";
  r.quantity = BoundQuantity::norm;
  r.bound_value = 1.0;  // strict inequality asserted; no quantitative gap
  const bool prime = is_prime(n);
  r.premises_hold = prime && (t_size + omega_size <= n);
  if (r.premises_hold) {
    r.verdict = "linearly independent (strictly, no conditioning information)";
  } else if (!prime) {
    r.premise_detail = "n = " + std::to_string(n) + " is not prime";
  } else {
    r.premise_detail = "|T| + |Omega| = " + std::to_string(t_size + omega_size) +
                       " exceeds n = " + std::to_string(n);
  }
  push(r, "t_size", static_cast<double>(t_size));
  push(r, "omega_size", static_cast<double>(omega_size));
  push(r, "n", static_cast<double>(n));
  return r;
}

BoundReport large_sieve(std::int64_t t_size, std::int64_t spread_value, std::int64_t n) {
  if (n < 1) throw std::domain_error("large_sieve: n must be positive");
  if (t_size < 0 || t_size > n)
    throw std::domain_error("large_sieve: t_size must lie in [0, n]");
  if (spread_value < 1) throw std::domain_error("large_sieve: spread must be >= 1");
  BoundReport r;
  r.name = "large_sieve";
  r.quantity = BoundQuantity::norm_squared;
  const double n_over_spread = static_cast<double>(n) / static_cast<double>(spread_value);
  r.bound_value = (static_cast<double>(t_size) + n_over_spread - 1.0) / static_cast<double>(n);
  r.premises_hold = true;
  r.premise_detail = "assumes T is a cyclic block of consecutive indices (caller-asserted)";
  if (static_cast<double>(t_size) + n_over_spread < static_cast<double>(n) + 1.0)
    r.verdict = "linearly independent";
  push(r, "t_size", static_cast<double>(t_size));
  push(r, "spread", static_cast<double>(spread_value));
  push(r, "n", static_cast<double>(n));
  return r;
}

BoundReport candes_romberg(std::int64_t t_size, std::int64_t omega_size, std::int64_t n,
                           double s, double prob_constant) {
  check_sizes(t_size, omega_size, n, "candes_romberg");
  if (s < 1.0) throw std::domain_error("candes_romberg: s must be >= 1");
  BoundReport r;
  r.name = "candes_romberg";
  r.quantity = BoundQuantity::norm_squared;
  r.bound_value = 0.5;
  r.conjectural = {"C"};
  const double log_n = std::log(static_cast<double>(n));
  const double size_cap =
      n >= 2 ? 0.2791 * static_cast<double>(n) / std::sqrt((s + 1.0) * log_n) : 0.0;
  r.premises_hold =
      n >= 512 && static_cast<double>(t_size + omega_size) <= size_cap;
  if (n < 512)
    r.premise_detail = "n < 512, below the theorem's floor";
  else if (!r.premises_hold)
    r.premise_detail = "|T| + |Omega| exceeds the size cap";
  if (r.premises_hold) r.verdict = "squared norm below 1/2 with the stated probability";
  if (n >= 2)
    r.failure_probability = std::clamp(
        prob_constant * std::sqrt((s + 1.0) * log_n) * std::pow(static_cast<double>(n), -s),
        0.0, 1.0);
  push(r, "t_size", static_cast<double>(t_size));
  push(r, "omega_size", static_cast<double>(omega_size));
  push(r, "n", static_cast<double>(n));
  push(r, "s", s);
  push(r, "C", prob_constant);
  push(r, "size_cap", size_cap);
  return r;
}

BoundReport random_subdict(std::int64_t t_size, std::int64_t omega_size, std::int64_t n,
                           double s, double c_param) {
  check_sizes(t_size, omega_size, n, "random_subdict");
  BoundReport r;
  r.name = "random_subdict";
  r.quantity = BoundQuantity::norm_squared;
  r.bound_value = 0.5;
  r.conjectural = {"c"};
  const double log_n = std::log(static_cast<double>(n));
  const double lhs = static_cast<double>(t_size) * log_n + static_cast<double>(omega_size);
  const double cap = s > 0 ? c_param * static_cast<double>(n) / s : 0.0;
  r.premises_hold = s >= 1.0 && lhs <= cap;
  if (s < 1.0)
    r.premise_detail = "s must be >= 1";
  else if (!r.premises_hold)
    r.premise_detail = "|T| ln n + |Omega| exceeds c n / s";
  if (r.premises_hold) r.verdict = "squared norm below 1/2 with the stated probability";
  r.failure_probability = std::clamp(std::pow(static_cast<double>(n), -s), 0.0, 1.0);
  push(r, "t_size", static_cast<double>(t_size));
  push(r, "omega_size", static_cast<double>(omega_size));
  push(r, "n", static_cast<double>(n));
  push(r, "s", s);
  push(r, "c", c_param);
  push(r, "weighted_size", lhs);
  push(r, "size_cap", cap);
  return r;
}

BoundReport rip_partition_bound(std::int64_t t_size, std::int64_t omega_size, std::int64_t n,
                                double s, double c_param) {
  check_sizes(t_size, omega_size, n, "rip_partition_bound");
  if (s <= 0.0) throw std::domain_error("rip_partition_bound: s must be positive");
  if (c_param <= 0.0) throw std::domain_error("rip_partition_bound: c must be positive");
  BoundReport r;
  r.name = "rip_partition_bound";
  r.quantity = BoundQuantity::norm_squared;
  r.conjectural = {"c"};
  const double log_n = std::log(static_cast<double>(n));
  const double log5 = std::pow(log_n, 5.0);
  // m columns per partition cell; the cell norms come from the RIP window
  // ||F_{Omega,T_k}||^2 <= 3|Omega|/2n, and the bound telescopes to
  // (2|T|/m)(3|Omega|/2n) = 3 |T| s ln^5 n / (c n), independent of |Omega|.
  const double m = log5 > 0 ? c_param * static_cast<double>(omega_size) / (s * log5) : 0.0;
  r.bound_value = 3.0 * static_cast<double>(t_size) * s * log5 /
                  (c_param * static_cast<double>(n));
  const bool omega_ok = 3 * omega_size <= n;
  r.premises_hold = omega_ok && r.bound_value <= 0.5;
  if (!omega_ok)
    r.premise_detail = "|Omega| exceeds n/3";
  else if (!r.premises_hold)
    r.premise_detail = "partition bound exceeds 1/2 at these parameters";
  if (r.premises_hold) r.verdict = "squared norm at most the partition bound";
  push(r, "t_size", static_cast<double>(t_size));
  push(r, "omega_size", static_cast<double>(omega_size));
  push(r, "n", static_cast<double>(n));
  push(r, "s", s);
  push(r, "c", c_param);
  push(r, "cell_size", m);
  push(r, "partition_count",
       m > 0 ? std::ceil(2.0 * static_cast<double>(t_size) / m) : 0.0);
  return r;
}

double small_moment_bound(std::int64_t n, std::int64_t q) {
  if (n < 1) throw std::domain_error("small_moment_bound: n must be positive");
  const double two_log_n = 2.0 * std::log(static_cast<double>(n));
  if (two_log_n < std::exp(1.0))
    throw std::domain_error("small_moment_bound: needs 2 ln n >= e");
  if (static_cast<double>(q) < two_log_n)
    throw std::domain_error("small_moment_bound: needs q >= 2 ln n");
  return 2.0 * static_cast<double>(q) / std::sqrt(static_cast<double>(n));
}

namespace {

// The proposition wants 13 ln n <= q <= n/2; the floor makes its own stated
// minimum viable point (n = 128, q = 63, where 13 ln 128 = 63.08) admissible.
void check_q_premise(std::int64_t q, std::int64_t n, const char* who) {
  if (n < 2) throw std::domain_error(std::string(who) + ": n must be >= 2");
  const auto q_floor =
      static_cast<std::int64_t>(std::floor(13.0 * std::log(static_cast<double>(n))));
  if (q < q_floor || 2 * q > n)
    throw std::domain_error(std::string(who) +
                            ": q outside [floor(13 ln n), n/2] = [" +
                            std::to_string(q_floor) + ", " + std::to_string(n / 2) + "]");
}

}  // namespace

double extrapolation_bound(double small_moment, double rho, double delta, double lambda,
                           std::int64_t q, std::int64_t n) {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::domain_error("extrapolation_bound: rho must lie in (0, 1)");
  if (!(delta >= rho && delta <= 1.0))
    throw std::domain_error("extrapolation_bound: delta must lie in [rho, 1]");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::domain_error("extrapolation_bound: lambda must lie in [0, 1]");
  if (small_moment < 0.0)
    throw std::domain_error("extrapolation_bound: moment must be nonnegative");
  check_q_premise(q, n, "extrapolation_bound");
  return 8.0 * std::pow(delta, lambda) *
         std::max(1.0, std::pow(rho, -lambda) * small_moment);
}

TailBoundResult tail_bound(const TailParams& p, TailVariant variant) {
  check_q_premise(p.q, p.n, "tail_bound");
  if (!(p.delta >= 1.0 / static_cast<double>(p.n) && p.delta <= 1.0))
    throw std::domain_error("tail_bound: delta must lie in [1/n, 1]");
  if (!(p.lambda > 0.0 && p.lambda < 1.0))
    throw std::domain_error("tail_bound: lambda must lie in (0, 1)");
  if (p.u < 1.0) throw std::domain_error("tail_bound: u must be >= 1");
  TailBoundResult r;
  const double saturation =
      2.0 * static_cast<double>(p.q) * std::pow(static_cast<double>(p.n), p.lambda - 0.5);
  r.threshold = 8.0 * std::pow(p.delta, p.lambda) * std::max(1.0, saturation) * p.u;
  const double constant = variant == TailVariant::fixed_cardinality_corollary ? 4.0 : 1.0;
  r.probability =
      std::min(1.0, constant * std::pow(p.u, -2.0 * static_cast<double>(p.q)));
  return r;
}

MarkovBound markov_coefficient_bound(std::int64_t r, std::int64_t k, double max_abs) {
  if (r < 0 || k < 0 || k > r)
    throw std::domain_error("markov_coefficient_bound: need 0 <= k <= r");
  if (max_abs < 0.0)
    throw std::domain_error("markov_coefficient_bound: max_abs must be nonnegative");
  double tight = max_abs;
  for (std::int64_t i = 1; i <= k; ++i)
    tight *= static_cast<double>(r) / static_cast<double>(i);
  return {tight, std::exp(static_cast<double>(r)) * max_abs};
}

BoundReport both_rand_thresholds(std::int64_t n, double epsilon, double c_cap) {
  if (n < 1) throw std::domain_error("both_rand_thresholds: n must be positive");
  if (epsilon <= 0.0) throw std::domain_error("both_rand_thresholds: epsilon must be positive");
  BoundReport r;
  r.name = "both_rand";
  r.quantity = BoundQuantity::norm;
  r.bound_value = 1.0;  // independence claim
  r.conjectural = {"C"};
  const double c_eps = std::exp(-c_cap / epsilon);
  const double budget = c_eps * static_cast<double>(n);
  r.premises_hold = true;
  r.verdict = "random T, Omega with |T| + |Omega| <= size_budget are linearly "
              "independent except with the stated probability";
  r.failure_probability =
      std::clamp(std::exp(-std::pow(static_cast<double>(n), 0.5 - epsilon)), 0.0, 1.0);
  push(r, "n", static_cast<double>(n));
  push(r, "epsilon", epsilon);
  push(r, "C", c_cap);
  push(r, "c_eps", c_eps);
  push(r, "size_budget", budget);
  return r;
}

}  // namespace dftlab
