#pragma once

#include <cstddef>

#include <gmpxx.h>

#include "v1sign/enclosure.hpp"

namespace v1sign {

/// How hard the constant computations may work.
struct PrecisionBudget {
  /// Requested maximum width of the G enclosure.
  mpq_class target_width{1, 1'000'000'000'000};  // 1e-12
  /// Cap on the number of grouped terms B_0..B_M summed for G.
  std::size_t max_terms = 50'000'000;
  /// Decimal digits carried by irrational endpoints (sqrt 3, pi, roots).
  unsigned working_digits = 50;

  Precision precision() const { return Precision::from_digits(working_digits); }
  /// Throws InvalidInput unless target_width > 0, 1 <= max_terms <= kMaxGroupedTerms
  /// and working_digits >= 10.
  void validate() const;
};

/// Hard limit keeping (6M+5)^2 inside 64 bits in the fixed-point summation.
inline constexpr std::size_t kMaxGroupedTerms = 400'000'000;

/// B_m = 1/(6m+1)^2 + 1/(6m+2)^2 - 1/(6m+4)^2 - 1/(6m+5)^2, exactly.
mpq_class bw_group_term(std::size_t m);

/// The tail bound sum_{m>M} B_m <= 1/(6M+1)^2.
mpq_class bw_tail_bound(std::size_t M);

/// sqrt(3)/2 at precision p.
Enclosure sqrt3_over_2(Precision p);

/// S_M = (sqrt 3 / 2) * sum_{m=0}^{M} B_m.
///
/// For M <= kExactPartialSumTerms the rational sum is exact and only the
/// sqrt(3)/2 factor widens the result. Beyond that the sum is accumulated in
/// fixed point with floor/ceil per term at min(bits, 192) + 64 fractional
/// bits, far below the tail bound for any M <= kMaxGroupedTerms.
Enclosure bw_partial_sum(std::size_t M, Precision p = Precision{});

inline constexpr std::size_t kExactPartialSumTerms = 256;

/// G = D(e^{i pi/3}) enclosed by [S_M, S_M + (sqrt 3/2)/(6M+1)^2].
Enclosure dilog_G_at(std::size_t M, Precision p = Precision{});

/// Number of grouped terms dilog_G picks for a budget.
std::size_t dilog_terms_for(const PrecisionBudget& budget);

/// G with width <= budget.target_width. Throws PrecisionError (carrying the
/// enclosure at max_terms) if the budget cannot reach the target.
Enclosure dilog_G(const PrecisionBudget& budget = {});

struct DilogResult {
  Enclosure G;
  std::size_t terms = 0;  // the M used
};
DilogResult dilog_G_with_terms(const PrecisionBudget& budget = {});

/// c = sqrt(2|V|) with |V| = G/8, i.e. sqrt(G/4).
Enclosure constant_c(const PrecisionBudget& budget = {});

/// alpha = pi^2 / (2|V|) = 4 pi^2 / G.
Enclosure constant_alpha(const PrecisionBudget& budget = {});

struct Amplitudes {
  Enclosure gamma_plus;   // 1 / (2 (3 (2 - sqrt 3))^{1/4})
  Enclosure gamma_minus;  // 1 / (2 (3 (2 + sqrt 3))^{1/4})
  Enclosure A0;           // gamma_plus + gamma_minus
  Enclosure A1;           // gamma_plus - gamma_minus
};

Amplitudes amplitudes(Precision p = Precision{});

/// Everything the asymptotic layer needs, computed once per budget.
struct ConstantSet {
  PrecisionBudget budget;
  std::size_t g_terms = 0;
  Enclosure pi;
  Enclosure G;
  Enclosure abs_V;
  Enclosure c;
  Enclosure alpha;
  Amplitudes amp;
};

ConstantSet compute_constants(const PrecisionBudget& budget = {});

/// Builds the remaining members from an already certified G.
ConstantSet constants_from_G(const PrecisionBudget& budget, const Enclosure& G, std::size_t g_terms);

}  // namespace v1sign
