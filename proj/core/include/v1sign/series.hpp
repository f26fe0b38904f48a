#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace v1sign {

/// Power series with integer coefficients, exact modulo q^(order+1).
///
/// Values are immutable once built; every operation returns a new series.
class TruncatedIntSeries {
 public:
  /// The zero series of the given order.
  explicit TruncatedIntSeries(std::size_t order);
  /// Takes ownership of `coeffs`; the order is coeffs.size() - 1. Throws
  /// InvalidInput on an empty vector.
  explicit TruncatedIntSeries(std::vector<mpz_class> coeffs);

  static TruncatedIntSeries one(std::size_t order);
  /// Sum of the given sparse (degree, value) terms; degrees above order are dropped.
  static TruncatedIntSeries from_terms(std::size_t order,
                                       std::initializer_list<std::pair<std::size_t, long>> terms);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const mpz_class& operator[](std::size_t k) const { return coeffs_[k]; }
  std::span<const mpz_class> coeffs() const noexcept { return coeffs_; }
  std::vector<mpz_class> release() && { return std::move(coeffs_); }

  friend bool operator==(const TruncatedIntSeries&, const TruncatedIntSeries&) = default;

 private:
  std::vector<mpz_class> coeffs_;
};

/// Exact product modulo q^(order+1). Orders must match (ContractViolation).
TruncatedIntSeries series_mul(const TruncatedIntSeries& a, const TruncatedIntSeries& b);

/// Exact multiplicative inverse. The constant term must be 1 (InvalidInput
/// otherwise), which keeps every coefficient of the inverse integral.
TruncatedIntSeries series_inverse(const TruncatedIntSeries& a);

/// prod_{k=1}^{n} (1 + q^{2k}) truncated at q^order; the empty product is 1.
TruncatedIntSeries pochhammer_neg_q2(std::size_t n, std::size_t order);

/// Divides `s` in place by (1 + q^step): s[i] <- s[i] - s[i - step].
void divide_by_one_plus_power(std::vector<mpz_class>& s, std::size_t step);

/// Default upper bound on max_n accepted by v1_coefficients.
inline constexpr std::size_t kDefaultMaxNCeiling = 50'000;

struct CoefficientOptions {
  std::size_t ceiling = kDefaultMaxNCeiling;
  /// Worker threads sharing the outer sum; 0 and 1 both mean sequential.
  unsigned jobs = 1;
};

/// V_1(0), ..., V_1(max_n): the coefficients of
///   v_1(q) = sum_{n>=0} q^{n(n+1)/2} / prod_{k=1}^{n} (1 + q^{2k}).
/// Only outer terms with n(n+1)/2 <= max_n contribute. Throws
/// ResourceLimitError when max_n exceeds options.ceiling.
std::vector<mpz_class> v1_coefficients(std::size_t max_n, const CoefficientOptions& options = {});

/// Largest outer index n with n(n+1)/2 <= max_n.
std::size_t outer_terms_needed(std::size_t max_n) noexcept;

}  // namespace v1sign
