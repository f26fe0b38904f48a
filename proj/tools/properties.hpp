#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace v1sign::cli {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;  // empty when all cases pass
  bool passed() const { return cases > 0 && failures == 0; }
};

inline constexpr std::uint64_t kPropertySeed = 0x76317369676e;

/// Inverse multiply-back on random unit-constant series.
SuiteResult series_inverse_suite(std::uint64_t seed, std::size_t cases = 200);
/// F_-(x)^2 + F_+(x)^2 encloses 2 for random rational x in [0, 1e6].
SuiteResult pythagorean_suite(std::uint64_t seed, std::size_t cases = 200);
/// Tighter G budgets give enclosures inside looser ones.
SuiteResult budget_nesting_suite(std::uint64_t seed, std::size_t cases = 8);
/// Period-4b identities of the rational diagnostic for random coprime (a, b).
SuiteResult periodicity_suite(std::uint64_t seed, std::size_t cases = 20);

std::vector<SuiteResult> run_property_suites(std::uint64_t seed = kPropertySeed);

}  // namespace v1sign::cli
