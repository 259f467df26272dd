#pragma once

// Exact and bounding evaluations of the single-receiver reception
// probability, the expected reception count of a random family member, and
// the tail bounds that turn the expectation into a high-probability bound.

#include <cfloat>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "radiolab/error.hpp"

namespace radiolab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Probability held as an exact fraction in lowest terms.
class ExactProb {
 public:
  ExactProb() = default;
  explicit ExactProb(Rational value) : value_(std::move(value)) {
    if (value_ < 0 || value_ > 1) throw input_error("probability outside [0, 1]");
  }

  const Rational& value() const noexcept { return value_; }
  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  double to_double() const { return radiolab::to_double(value_); }

  friend bool operator==(const ExactProb&, const ExactProb&) = default;

 private:
  Rational value_{0};
};

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

inline bool is_power_of_two(std::uint64_t x) noexcept { return x != 0 && (x & (x - 1)) == 0; }

inline unsigned floor_log2(std::uint64_t x) noexcept {
  unsigned l = 0;
  while (x >>= 1) ++l;
  return l;
}

namespace detail {

inline void check_sender_fraction(std::uint64_t n_prime, std::uint64_t s) {
  if (n_prime == 0) throw input_error("n' must be positive");
  if (s > n_prime) throw input_error("transmitter count s=" + std::to_string(s) + " exceeds n'=" + std::to_string(n_prime));
}

inline void check_chain_domain(std::uint64_t n_prime, std::uint64_t s, std::uint64_t delta) {
  check_sender_fraction(n_prime, s);
  if (s == 0) throw input_error("s must be at least 1");
  if (delta == 0 || delta > n_prime - s + 1) {
    throw input_error("degree " + std::to_string(delta) + " outside [1, n'-s+1]");
  }
}

// x e^{-x} scaled by e, x = s*delta/n'.
inline double upper_term(double n_prime, double s, double delta) {
  const double x = s * delta / n_prime;
  return std::exp(1.0) * x * std::exp(-x);
}

}  // namespace detail

// Probability that a receiver with `delta` uniformly random distinct sender
// neighbors has exactly one neighbor among a fixed set of s transmitters.
inline ExactProb p_delta(std::uint64_t n_prime, std::uint64_t s, std::uint64_t delta) {
  detail::check_sender_fraction(n_prime, s);
  if (delta == 0) throw input_error("degree must be at least 1");
  if (s == 0 || delta > n_prime - s + 1) return ExactProb{};
  return ExactProb(Rational(BigInt(s) * binomial(n_prime - s, delta - 1), binomial(n_prime, delta)));
}

// Log-space evaluation for n' beyond exact-arithmetic convenience; relative
// error against the exact value stays below 1e-10 for the sizes tested.
inline double p_delta_float(std::uint64_t n_prime, std::uint64_t s, std::uint64_t delta) {
  detail::check_sender_fraction(n_prime, s);
  if (delta == 0) throw input_error("degree must be at least 1");
  if (s == 0 || delta > n_prime - s + 1) return 0.0;
  auto lchoose = [](double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); };
  const auto np = static_cast<double>(n_prime);
  const auto sf = static_cast<double>(s);
  const auto d = static_cast<double>(delta);
  return std::exp(std::log(sf) + lchoose(np - sf, d - 1) - lchoose(np, d));
}

// e * (s*delta/n') * exp(-s*delta/n'); an upper bound on p_delta.
inline double p_delta_upper(std::uint64_t n_prime, std::uint64_t s, std::uint64_t delta) {
  detail::check_chain_domain(n_prime, s, delta);
  return detail::upper_term(static_cast<double>(n_prime), static_cast<double>(s), static_cast<double>(delta));
}

// Exact expected number of receivers that hear a fixed set of s transmitters
// in a random family member with n' receivers per class of degree 2^i,
// i = 1..log2 n'.
inline Rational expected_receivers(std::uint64_t n_prime, std::uint64_t s) {
  detail::check_sender_fraction(n_prime, s);
  if (!is_power_of_two(n_prime)) throw input_error("n' must be a power of two");
  Rational sum = 0;
  const unsigned classes = floor_log2(n_prime);
  for (unsigned i = 1; i <= classes; ++i) sum += p_delta(n_prime, s, std::uint64_t{1} << i).value();
  return sum * n_prime;
}

// 2^floor(log2(n'/s)): the largest power of two with s * delta_star <= n'.
inline std::uint64_t delta_star(std::uint64_t n_prime, std::uint64_t s) {
  detail::check_sender_fraction(n_prime, s);
  if (s == 0) throw input_error("delta_star needs s >= 1");
  std::uint64_t d = 1;
  while (s * (d * 2) <= n_prime) d *= 2;
  return d;
}

// Termwise bound e*n'*sum_i (s 2^i/n') exp(-s 2^i/n') before the split.
inline double expected_receivers_termwise(std::uint64_t n_prime, std::uint64_t s) {
  detail::check_sender_fraction(n_prime, s);
  if (!is_power_of_two(n_prime)) throw input_error("n' must be a power of two");
  if (s == 0) return 0.0;
  double sum = 0.0;
  const unsigned classes = floor_log2(n_prime);
  for (unsigned i = 1; i <= classes; ++i) {
    sum += detail::upper_term(static_cast<double>(n_prime), static_cast<double>(s), std::ldexp(1.0, static_cast<int>(i)));
  }
  return static_cast<double>(n_prime) * sum;
}

// Bound split at delta_star into the two finite geometric sums
//   e*n' * ( sum_{j=0}^{d-1} 2^-j + sum_{j=0}^{L-d-1} 2^{j+1} / e^{2^j} ),
// with d = log2 delta_star and L = log2 n'. s = 0 yields 0 (nobody transmits).
inline double expected_receivers_upper(std::uint64_t n_prime, std::uint64_t s) {
  detail::check_sender_fraction(n_prime, s);
  if (!is_power_of_two(n_prime)) throw input_error("n' must be a power of two");
  if (s == 0) return 0.0;
  const unsigned d = floor_log2(delta_star(n_prime, s));
  const unsigned levels = floor_log2(n_prime);
  double low = 0.0;
  for (unsigned j = 0; j < d; ++j) low += std::ldexp(1.0, -static_cast<int>(j));
  double high = 0.0;
  for (unsigned j = 0; j + d < levels; ++j) {
    high += std::ldexp(1.0, static_cast<int>(j) + 1) * std::exp(-std::ldexp(1.0, static_cast<int>(j)));
  }
  return std::exp(1.0) * static_cast<double>(n_prime) * (low + high);
}

// sum_{j>=0} 2^-j + sum_{j>=0} 2^{j+1}/e^{2^j}; times e this is the
// per-sender constant below 10.
inline double expectation_series_constant() {
  double high = 0.0;
  for (int j = 0; j < 12; ++j) high += std::ldexp(1.0, j + 1) * std::exp(-std::ldexp(1.0, j));
  return 2.0 + high;
}

// exp(a - mu - a ln(a/mu)) >= Pr(X >= a) for a sum of independent Bernoulli
// variables with mean at most mu.
inline double chernoff_log_tail(double mu, double a) {
  if (!(mu > 0.0)) throw input_error("chernoff bound needs mu > 0");
  if (!(a > mu)) throw input_error("chernoff bound is vacuous unless a > mu");
  return a - mu - a * std::log(a / mu);
}

inline double chernoff_tail(double mu, double a) { return std::exp(chernoff_log_tail(mu, a)); }

// 2^{n'} e^{-3n'}: union of the per-set tail over every sender subset.
inline double union_failure_log_bound(std::uint64_t n_prime) {
  if (n_prime == 0) throw input_error("n' must be positive");
  return static_cast<double>(n_prime) * (std::log(2.0) - 3.0);
}

inline double union_failure_bound(std::uint64_t n_prime) { return std::exp(union_failure_log_bound(n_prime)); }

struct ChainStep {
  std::string label;
  double value = 0.0;
  std::optional<Rational> exact;  // set when the expression was evaluated exactly
};

struct BoundChainReport {
  std::uint64_t n_prime = 0;
  std::uint64_t s = 0;
  std::optional<std::uint64_t> delta;
  std::optional<std::uint64_t> delta_star;
  std::vector<ChainStep> steps;
  std::vector<std::string> failures;
  bool pass = false;
};

namespace detail {

// Slack for float-vs-float comparisons: each analytic expression is a handful
// of correctly rounded operations plus libm exp/log, far below 64 ulp.
inline constexpr double kChainSlack = 64 * DBL_EPSILON;

inline bool rounded_le(double lhs, double rhs) { return lhs <= rhs + std::fabs(rhs) * kChainSlack; }

inline void check_monotone(BoundChainReport& report) {
  for (std::size_t k = 0; k + 1 < report.steps.size(); ++k) {
    const auto& lhs = report.steps[k];
    const auto& rhs = report.steps[k + 1];
    const bool ok = (lhs.exact && rhs.exact) ? *lhs.exact <= *rhs.exact : rounded_le(lhs.value, rhs.value);
    if (!ok) report.failures.push_back(lhs.label + " > " + rhs.label);
  }
  report.pass = report.failures.empty();
}

}  // namespace detail

// Evaluates every expression in the chain
//   hypergeometric = product <= power <= exp(n'-1) <= exp(n') = factored <= final
// and records whether each is bounded by the next. The first three are exact.
inline BoundChainReport certify_chain(std::uint64_t n_prime, std::uint64_t s, std::uint64_t delta) {
  detail::check_chain_domain(n_prime, s, delta);
  BoundChainReport report;
  report.n_prime = n_prime;
  report.s = s;
  report.delta = delta;
  report.delta_star = delta_star(n_prime, s);

  const Rational lead(BigInt(s) * delta, BigInt(n_prime));
  const Rational hyper = p_delta(n_prime, s, delta).value();

  Rational product = lead;
  for (std::uint64_t i = 1; i < delta; ++i) product *= 1 - Rational(BigInt(s - 1), BigInt(n_prime - i));

  Rational power = lead;
  if (delta > 1) {
    const Rational base = 1 - Rational(BigInt(s - 1), BigInt(n_prime - 1));
    for (std::uint64_t i = 1; i < delta; ++i) power *= base;
  }

  const double np = static_cast<double>(n_prime);
  const double sf = static_cast<double>(s);
  const double d = static_cast<double>(delta);
  const double leadf = sf * d / np;
  const double exp_prev = (s == 1 || delta == 1) ? leadf : leadf * std::exp(-(sf - 1) / (np - 1) * (d - 1));
  const double exp_cur = leadf * std::exp(-(sf - 1) / np * (d - 1));
  const double factored = leadf * std::exp(-sf / np * d) * std::exp((sf + d - 1) / np);
  const double final_bound = detail::upper_term(np, sf, d);

  report.steps = {
      {"hypergeometric", to_double(hyper), hyper},
      {"product", to_double(product), product},
      {"power", to_double(power), power},
      {"exp_nprime_minus_1", exp_prev, std::nullopt},
      {"exp_nprime", exp_cur, std::nullopt},
      {"factored", factored, std::nullopt},
      {"final", final_bound, std::nullopt},
  };
  detail::check_monotone(report);
  if (hyper != product) {
    report.failures.push_back("hypergeometric != product");
    report.pass = false;
  }
  // The factored form is an identity rewrite of the exp(n') form.
  if (!detail::rounded_le(factored, exp_cur)) {
    report.failures.push_back("factored != exp_nprime");
    report.pass = false;
  }
  return report;
}

// Expectation chain: exact <= termwise <= split <= series <= 10 n'.
inline BoundChainReport certify_expectation(std::uint64_t n_prime, std::uint64_t s) {
  BoundChainReport report;
  report.n_prime = n_prime;
  report.s = s;
  const Rational exact = expected_receivers(n_prime, s);
  if (s > 0) report.delta_star = delta_star(n_prime, s);
  const double np = static_cast<double>(n_prime);
  report.steps = {
      {"exact", to_double(exact), exact},
      {"termwise", expected_receivers_termwise(n_prime, s), std::nullopt},
      {"split", expected_receivers_upper(n_prime, s), std::nullopt},
      {"series", s == 0 ? 0.0 : std::exp(1.0) * np * expectation_series_constant(), std::nullopt},
      {"ten_nprime", 10.0 * np, Rational(10 * n_prime)},
  };
  detail::check_monotone(report);
  if (!(exact < 10 * n_prime)) {
    report.failures.push_back("exact >= 10n'");
    report.pass = false;
  }
  return report;
}

}  // namespace radiolab
