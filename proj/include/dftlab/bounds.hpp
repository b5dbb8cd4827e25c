#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace dftlab {

/// Whether bound_value caps the norm itself or its square.  The two are never
/// silently converted; every report says which one it carries.
enum class BoundQuantity { norm, norm_squared };

/// One evaluated bound.  `parameters` keeps insertion order so serialized
/// reports list inputs the way the formula reads; names listed in
/// `conjectural` are constants with no published value (defaulted to 1 by the
/// evaluators) and are surfaced so nobody mistakes the output for a certified
/// number.
struct BoundReport {
  std::string name;
  bool premises_hold = false;
  std::string premise_detail;
  std::string verdict;
  double bound_value = 0.0;
  BoundQuantity quantity = BoundQuantity::norm;
  std::optional<double> failure_probability;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::string> conjectural;
};

bool is_prime(std::int64_t n);

// All logarithms in this module are natural logs.

/// bound sqrt(|Omega| |T| / n) on the norm; premise |T| |Omega| < n gives
/// linear independence.  Sizes outside [0, n] are a domain error.
BoundReport donoho_stark(std::int64_t t_size, std::int64_t omega_size, std::int64_t n);

/// Additive form: independence whenever |T| + |Omega| < 2 sqrt(n), compared
/// in exact integer arithmetic.
BoundReport additive_bound(std::int64_t t_size, std::int64_t omega_size, std::int64_t n);

struct L0Report {
  std::int64_t time_support = 0;       // nonzeros of x
  std::int64_t frequency_support = 0;  // nonzeros of Fx
  std::int64_t product = 0;
  std::int64_t n = 0;
  bool satisfied = false;              // product >= n
};

/// l0 uncertainty principle for a nonzero vector; "nonzero" means modulus
/// above 1e-8 times the largest modulus in the respective vector, since the
/// DFT of an exactly sparse input carries rounding noise.
L0Report l0_uncertainty(const Eigen::VectorXcd& x);

/// Strict-independence certificate for prime n: premises hold when n is prime
/// and |T| + |Omega| <= n.  No quantitative gap is asserted (bound_value 1).
BoundReport tao_premise(std::int64_t t_size, std::int64_t omega_size, std::int64_t n);

/// Large sieve: ||F_{Omega,T}||^2 <= (|T| + n/spread - 1)/n, valid when T is
/// a cyclic block of consecutive indices (caller-asserted; recorded in the
/// report).  spread_value < 1 is a domain error.
BoundReport large_sieve(std::int64_t t_size, std::int64_t spread_value, std::int64_t n);

/// Uniform-uncertainty threshold: for n >= 512 and |T| + |Omega| up to
/// 0.2791 n / sqrt((s+1) ln n), the squared norm stays below 1/2 except with
/// probability C ((s+1) ln n)^{1/2} n^{-s}.  C is unpublished (conjectural,
/// default 1).  s < 1 is a domain error.
BoundReport candes_romberg(std::int64_t t_size, std::int64_t omega_size, std::int64_t n,
                           double s, double prob_constant = 1.0);

/// Random-subdictionary threshold: |T| ln n + |Omega| <= c n / s keeps the
/// squared norm below 1/2 except with probability n^{-s}.  c unpublished
/// (conjectural, default 1).
BoundReport random_subdict(std::int64_t t_size, std::int64_t omega_size, std::int64_t n,
                           double s, double c_param = 1.0);

/// Partition bound assembled from restricted-isometry machinery: with
/// m = c |Omega| / (s ln^5 n) columns per cell, the squared norm is at most
/// (2|T|/m)(3|Omega|/2n) = 3 |T| s ln^5 n / (c n).  Premises: |Omega| <= n/3
/// and bound <= 1/2.  Constant conjectural (default 1).
BoundReport rip_partition_bound(std::int64_t t_size, std::int64_t omega_size, std::int64_t n,
                                double s, double c_param = 1.0);

/// Moment bound 2q n^{-1/2} on (E ||R_rho F R_rho'||^{2q})^{1/2q} at
/// rho = 1/n.  Premises q >= 2 ln n and 2 ln n >= e; violations throw
/// std::domain_error.
double small_moment_bound(std::int64_t n, std::int64_t q);

/// Extrapolates a moment root at sparse rate rho up to rate delta:
/// 8 delta^lambda max{1, rho^{-lambda} small_moment}.  Premises
/// rho in (0,1), delta in [rho, 1], lambda in [0,1], and
/// floor(13 ln n) <= q <= n/2; violations throw std::domain_error.
double extrapolation_bound(double small_moment, double rho, double delta, double lambda,
                           std::int64_t q, std::int64_t n);

enum class TailVariant { bernoulli_lemma, fixed_cardinality_corollary };

struct TailParams {
  std::int64_t n = 0;
  double delta = 0.0;   // in [1/n, 1]
  double lambda = 0.0;  // in (0, 1)
  std::int64_t q = 0;   // floor(13 ln n) <= q <= n/2
  double u = 1.0;       // >= 1
};

struct TailBoundResult {
  double threshold = 0.0;    // 8 delta^lambda max{1, 2q n^{lambda-1/2}} u
  double probability = 0.0;  // u^{-2q} (lemma) or 4 u^{-2q} (corollary), clamped to 1
};

/// Tail bound P(||F_{Omega,T}|| > threshold) <= probability for independent
/// Bernoulli(delta) row/column sets (lemma variant) or fixed cardinality
/// floor(delta n) (corollary variant, probability constant 4).  Parameter
/// violations throw std::domain_error.
TailBoundResult tail_bound(const TailParams& p, TailVariant variant);

struct MarkovBound {
  double tight = 0.0;  // (r^k / k!) max_abs
  double loose = 0.0;  // e^r max_abs
};

/// Coefficient bound for a degree-r polynomial p with |p| <= max_abs on
/// [-1, 1]: |c_k| <= (r^k / k!) max_abs <= e^r max_abs.  Requires
/// 0 <= k <= r.
MarkovBound markov_coefficient_bound(std::int64_t r, std::int64_t k, double max_abs);

/// Simultaneous-randomness thresholds: sets with |T| + |Omega| up to
/// c(eps) n stay independent except with probability exp(-n^{1/2 - eps}),
/// where c(eps) = e^{-C/eps} and C is unpublished (c_cap, conjectural,
/// default 1).  Requires eps > 0.
BoundReport both_rand_thresholds(std::int64_t n, double epsilon, double c_cap = 1.0);

}  // namespace dftlab
