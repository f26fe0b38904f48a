#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "v1sign/constants.hpp"
#include "v1sign/enclosure.hpp"

namespace v1sign {

/// Which trigonometric factor a crossing belongs to: F_- = cos - sin has
/// zeros r_m = pi(m + 1/4), F_+ = cos + sin has zeros s_m = pi(m + 3/4).
enum class Family { minus, plus };

std::string_view to_string(Family f) noexcept;
/// "minus" or "plus"; anything else is InvalidInput.
Family parse_family(std::string_view text);

/// A ladder of precision budgets with lazily computed, cached constants.
///
/// Level 0 is used first; a sign or floor that cannot be decided moves the
/// computation to the next level. The default ladder doubles the working
/// digits 50 -> 800 while tightening the G enclosure 1e-12 -> 1e-16.
/// Safe to share between threads.
class AsymptoticContext {
 public:
  AsymptoticContext();
  explicit AsymptoticContext(std::vector<PrecisionBudget> ladder);

  static std::vector<PrecisionBudget> default_ladder();

  std::size_t levels() const noexcept { return ladder_.size(); }
  const PrecisionBudget& budget(std::size_t level) const { return ladder_.at(level); }
  Precision precision(std::size_t level) const { return ladder_.at(level).precision(); }
  const ConstantSet& constants(std::size_t level = 0) const;

 private:
  std::vector<PrecisionBudget> ladder_;
  mutable std::vector<std::unique_ptr<ConstantSet>> cache_;
  mutable std::mutex mutex_;
};

Enclosure f_minus(const Enclosure& x, Precision p);
Enclosure f_plus(const Enclosure& x, Precision p);
Enclosure f_family(Family f, const Enclosure& x, Precision p);

/// pi (m + 1/4) and pi (m + 3/4).
Enclosure zero_r(std::size_t m, const ConstantSet& k);
Enclosure zero_s(std::size_t m, const ConstantSet& k);
Enclosure zero_of(Family f, std::size_t m, const ConstantSet& k);

/// P_-(m) = alpha (m + 1/4)^2 and P_+(m) = alpha (m + 3/4)^2.
Enclosure quad_minus(std::size_t m, const ConstantSet& k);
Enclosure quad_plus(std::size_t m, const ConstantSet& k);
Enclosure quad(Family f, std::size_t m, const ConstantSet& k);

/// Enclosure of min_k |x - k|. Needs width(x) < 1/2, else PrecisionError.
Enclosure dist_to_int(const Enclosure& x);

struct AdmissibleSearch {
  std::vector<std::size_t> admissible;  // dist lower bound >= delta
  std::vector<std::size_t> undecided;   // dist enclosure straddles delta at every level
};

/// All m <= m_max whose quadratic value provably keeps distance >= delta from
/// the integers. delta must lie in (0, 1/2).
AdmissibleSearch admissible_indices(Family f, std::size_t m_max, const mpq_class& delta,
                                    const AsymptoticContext& ctx);

struct ResidueClass {
  std::uint64_t r = 0;
  mpq_class value;     // P(r) under alpha = a/b
  mpq_class fraction;  // P(r) - floor(P(r))
  bool integral = false;
};

/// Period-4b structure of P_-, P_+ under a hypothesised alpha = a/b.
struct PeriodicityReport {
  mpz_class a;
  mpz_class b;
  std::uint64_t period = 0;  // 4b
  std::vector<ResidueClass> minus;
  std::vector<ResidueClass> plus;
  /// P(r + 4b) - P(r) equals 8ar + 16ab + 2a (minus) / 8ar + 16ab + 6a (plus)
  /// and is an integer, for every r in [0, 4b].
  bool minus_identity_holds = false;
  bool plus_identity_holds = false;
  /// Smallest positive distance to Z over the non-integral classes, if any.
  std::optional<mpq_class> delta_minus;
  std::optional<mpq_class> delta_plus;
};

/// b > 0, gcd(a, b) = 1 and b <= kMaxDiagnosticDenominator; InvalidInput otherwise.
PeriodicityReport periodicity_diagnostic(const mpz_class& a, const mpz_class& b);

inline constexpr unsigned long kMaxDiagnosticDenominator = 1'000'000;

/// A predicted same-sign triple: start is the unique even (minus) or odd
/// (plus) integer with start < t < start + 2, t = P_family(m).
struct CandidateTriple {
  Family family = Family::minus;
  std::size_t m = 0;
  std::int64_t start = 0;
  Enclosure t;
  Enclosure dist;
  std::size_t level = 0;  // ladder level that decided the floor
};

/// Throws PrecisionError if the floor stays undecided on every ladder level.
CandidateTriple candidate(Family f, std::size_t m, const AsymptoticContext& ctx);

struct CandidateList {
  std::vector<CandidateTriple> candidates;
  std::vector<std::size_t> skipped;  // m whose floor stayed undecided
};

/// Candidates of one family whose start + 2 <= n_max (m increasing).
/// Undecidable indices are skipped and listed rather than guessed.
CandidateList candidates_up_to(Family f, std::int64_t n_max, const AsymptoticContext& ctx);

/// All crossing positions P_-(m), P_+(m) <= n_max, sorted by lower endpoint.
std::vector<Enclosure> crossings_up_to(std::int64_t n_max, const ConstantSet& k);

enum class PredictedSign : int { negative = -1, undetermined = 0, positive = 1 };

/// Main term T(n) of the parity-split asymptotic:
///   even n: (-1)^{n/2}     e^{c sqrt n} / sqrt n * A0 * F_-(c sqrt n)
///   odd n:  (-1)^{(n-1)/2} e^{c sqrt n} / sqrt n * A1 * F_+(c sqrt n)
struct MainTermEstimate {
  std::uint64_t n = 0;
  PredictedSign sign = PredictedSign::undetermined;
  /// log |T(n)| = c sqrt n - (1/2) log n + log A + log |F|; absent when the
  /// trig factor is not certified nonzero.
  std::optional<Enclosure> log_magnitude;
  int parity_factor = 1;  // (-1)^{floor(n/2)}
  Enclosure trig_value;
  std::size_t level = 0;
};

/// n >= 1 (InvalidInput otherwise). Undetermined signs are a normal outcome
/// near crossings once the ladder is exhausted.
MainTermEstimate main_term(std::uint64_t n, const AsymptoticContext& ctx);

/// c sqrt n at a given ladder level.
Enclosure evaluation_point(std::uint64_t n, const ConstantSet& k);

/// Scaled distances from the zero to the outer evaluation points of a
/// candidate: (zero - c sqrt start) sqrt start and (c sqrt(start+2) - zero) sqrt start.
/// Both stay inside fixed positive bounds as m grows.
struct ZeroGap {
  Enclosure left;
  Enclosure right;
};
ZeroGap zero_gap(const CandidateTriple& cand, const AsymptoticContext& ctx);

}  // namespace v1sign
