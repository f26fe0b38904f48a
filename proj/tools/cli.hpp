#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace v1sign::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kIoError = 3,
  kPrecisionError = 4,
  kResourceLimit = 5,
  kInternalError = 6,
};

/// Environment variable overriding the max_n ceiling (default 50000).
inline constexpr const char* kCeilingEnv = "V1SIGN_MAX_N_CEILING";

enum class Subcommand { coeffs, constants, predict, scan, verify, report };
enum class Format { csv, json };

struct RunConfig {
  Subcommand subcommand = Subcommand::verify;
  std::optional<std::size_t> max_n;
  std::size_t m_max = 10;
  mpq_class delta{1, 4};
  unsigned digits = 50;
  mpq_class width{1, 1'000'000'000'000};
  std::string family;  // predict: "minus" or "plus"; empty means both
  bool admissible_only = false;
  std::optional<std::string> coeffs_csv;
  std::optional<long long> from;
  std::optional<long long> to;
  int sequence_n_max = 12;
  std::optional<std::string> output_path;
  std::optional<Format> format;
  bool force = false;
  unsigned jobs = 1;
  std::size_t ceiling = 50'000;
};

/// Parses argv. Returns the config, or an exit code when parsing ended the
/// run (help printed, or a usage error reported on `err`).
std::variant<RunConfig, int> parse_command_line(int argc, const char* const* argv, std::ostream& out,
                                                std::ostream& err);

/// Validates flag combinations; returns an error message for bad ones.
std::optional<std::string> validate(const RunConfig& config);

/// Executes one subcommand. Artifacts go to config.output_path or `out`;
/// diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace v1sign::cli
