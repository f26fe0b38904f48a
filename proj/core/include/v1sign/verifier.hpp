#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "v1sign/asymptotics.hpp"

namespace v1sign {

/// coeffs[n] = V_1(n), starting at n = 0.
using CoefficientSpan = std::span<const mpz_class>;

/// Published values around the first four same-sign triples.
inline constexpr std::array<std::pair<int, long>, 20> kInitialValues{{
    {292, -367}, {293, 4},    {294, 375},   {295, 9},    {296, -381},
    {409, -465}, {410, 27},   {411, 473},   {412, 4},    {413, -497},
    {544, 6195}, {545, -18},  {546, -6309}, {547, -20},  {548, 6418},
    {701, 8365}, {702, -273}, {703, -8550}, {704, -224}, {705, 8716},
}};

/// N_5..N_8 of the same-sign sequence.
inline constexpr std::array<std::int64_t, 4> kInitialStarts{293, 410, 545, 702};

struct ObservedTriple {
  std::int64_t start = 0;
  int sign = 0;  // common sign of V(start), V(start+1), V(start+2)
  friend bool operator==(const ObservedTriple&, const ObservedTriple&) = default;
};

/// Every start in [n_lo, n_hi] with three consecutive nonzero same-sign
/// coefficients. Overlapping runs give one entry per start.
/// Needs coeffs to cover n_hi + 2 (ContractViolation otherwise).
std::vector<ObservedTriple> scan_triples(CoefficientSpan coeffs, std::int64_t n_lo, std::int64_t n_hi);

/// Strict local minima of |V| at n in (n_lo, n_hi); endpoints excluded.
std::vector<std::int64_t> scan_local_minima(CoefficientSpan coeffs, std::int64_t n_lo, std::int64_t n_hi);

bool is_strict_local_min(CoefficientSpan coeffs, std::int64_t n);

struct WindowStats {
  std::int64_t n_lo = 0;
  std::int64_t n_hi = 0;
  std::size_t windows = 0;
  std::size_t passed = 0;
  std::vector<std::int64_t> failures;  // window starts
  double pass_fraction() const { return windows == 0 ? 0.0 : static_cast<double>(passed) / windows; }
};

/// Windows V(n..n+3) for n in [n_lo, n_hi]: pass iff exactly two values are
/// positive and two negative (a zero fails). Needs coverage of n_hi + 3.
WindowStats conjecture4_windows(CoefficientSpan coeffs, std::int64_t n_lo, std::int64_t n_hi);

/// Failing windows [n, n+3] that are not certainly within `radius` of some
/// crossing t, i.e. no t with n <= t.lo + radius and n + 3 >= t.hi - radius.
std::vector<std::int64_t> unlocalized_failures(const std::vector<std::int64_t>& failures,
                                               const std::vector<Enclosure>& crossings, long radius = 3);

struct Match {
  CandidateTriple candidate;
  std::int64_t observed_start = 0;
  std::int64_t offset = 0;  // observed - predicted
};

struct MatchResult {
  std::vector<Match> matches;
  std::vector<CandidateTriple> unmatched_predictions;
  std::vector<ObservedTriple> unmatched_observations;
  /// Smallest candidate m from which every candidate is matched with offset 0.
  std::optional<std::size_t> threshold_m;
};

/// One-to-one pairing of observations and candidates within +-window,
/// closest pairs first (ties: lower observed start, then lower candidate start).
MatchResult match_predictions(const std::vector<ObservedTriple>& observed,
                              const std::vector<CandidateTriple>& candidates, int window = 2);

struct RatioStats {
  std::size_t count = 0;
  double min = 0;
  double median = 0;
  double max = 0;
};

struct AccuracyStats {
  std::int64_t n_lo = 0;
  std::int64_t n_hi = 0;
  std::size_t evaluated = 0;
  std::size_t determined = 0;
  std::size_t agreeing = 0;
  std::vector<std::int64_t> disagreements;
  std::vector<std::int64_t> undetermined;
  /// |V(n)| / exp(mid log|T(n)|) over determined n at least `crossing_radius`
  /// away from every crossing.
  RatioStats magnitude_ratio;
  double sign_agreement() const {
    return determined == 0 ? 0.0 : static_cast<double>(agreeing) / determined;
  }
};

/// Compares main-term signs and magnitudes with the exact coefficients on
/// [n_lo, n_hi] (n_lo >= 1). Work is split over `jobs` threads; the result
/// does not depend on the split.
AccuracyStats main_term_accuracy(CoefficientSpan coeffs, std::int64_t n_lo, std::int64_t n_hi,
                                 const AsymptoticContext& ctx, unsigned jobs = 1, long crossing_radius = 3);

enum class SequenceOrigin { initial, minus, plus };

struct SequenceEntry {
  int index = 0;  // n in N_n
  std::int64_t start = 0;
  SequenceOrigin origin = SequenceOrigin::initial;
  std::optional<std::size_t> m;
  int sign = 0;
  bool same_sign = false;
  bool start_is_min = false;
  bool end_is_min = false;
  bool bound_ok = false;  // N_n > 10 n^2 for n >= 9; vacuous before
  bool verified() const { return same_sign && (start_is_min || end_is_min) && bound_ok; }
};

struct SequenceCertificate {
  std::vector<SequenceEntry> entries;
  std::optional<int> failure_index;  // first n that could not be supplied
  bool complete() const { return !failure_index.has_value(); }
};

/// N_5..N_8 = 293, 410, 545, 702, then alternately a minus-family candidate
/// N_{m_j} (m_j >= 2j - 1) and a plus-family candidate M_{l_j} (l_j >= 2j),
/// each strictly larger than the previous entry and than 10 n^2, and each
/// confirmed same-sign with a local-minimum endpoint in `coeffs`.
/// `candidates` supplies the admissible families to draw from; pass only
/// indices whose quadratic value keeps the chosen distance from the integers.
SequenceCertificate build_sequence(int n_max, CoefficientSpan coeffs,
                                   const std::vector<CandidateTriple>& candidates);

/// True iff the coefficients agree with all 20 listed values. Needs coverage of 705.
bool verify_initial_values(CoefficientSpan coeffs);

struct GapStats {
  std::size_t count = 0;
  double left_min = 0;
  double left_max = 0;
  double right_min = 0;
  double right_max = 0;
};

GapStats zero_gap_stats(const std::vector<CandidateTriple>& candidates, const AsymptoticContext& ctx);

struct ScanOptions {
  mpq_class delta{1, 4};
  bool admissible_only = true;
  int match_window = 2;
  unsigned jobs = 1;
  bool with_accuracy = true;
};

/// Everything observed and predicted on [n_lo, n_hi]. Triple starts lie in
/// [n_lo, n_hi - 2], minima in (n_lo, n_hi), windows start in [n_lo, n_hi - 3].
struct ScanReport {
  std::int64_t n_lo = 0;
  std::int64_t n_hi = 0;
  mpq_class delta;
  std::vector<ObservedTriple> triples;
  std::vector<std::int64_t> minima;
  WindowStats conj4;
  std::vector<std::int64_t> conj4_unlocalized;
  std::vector<CandidateTriple> candidates;
  std::vector<std::size_t> skipped_candidates;
  MatchResult matching;
  std::optional<AccuracyStats> accuracy;
  GapStats gaps;
};

ScanReport scan_range(CoefficientSpan coeffs, std::int64_t n_lo, std::int64_t n_hi,
                      const AsymptoticContext& ctx, const ScanOptions& options = {});

struct InvariantCheck {
  std::string name;
  bool passed = true;
  std::vector<std::int64_t> counterexamples;
};

/// Hard assertions on a scan: failing windows localize near crossings, exact
/// matches at m >= threshold have strict-minimum endpoints that are smaller in
/// magnitude than their neighbours, and matched starts have family parity.
std::vector<InvariantCheck> scan_invariants(const ScanReport& rep, CoefficientSpan coeffs);

}  // namespace v1sign
