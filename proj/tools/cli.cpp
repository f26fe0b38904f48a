#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "properties.hpp"
#include "v1sign/asymptotics.hpp"
#include "v1sign/coeff_io.hpp"
#include "v1sign/constants.hpp"
#include "v1sign/errors.hpp"
#include "v1sign/report_json.hpp"
#include "v1sign/series.hpp"
#include "v1sign/verifier.hpp"

namespace v1sign::cli {
namespace {

constexpr std::size_t kVerifyDefaultMaxN = 705;
constexpr std::size_t kReportDefaultMaxN = 5000;

const char* const kExitCodeHelp =
    "Exit codes:\n"
    "  0  success (for verify/scan: every hard assertion passed)\n"
    "  1  verification failed (a check or invariant did not hold)\n"
    "  2  usage error (bad flags, invalid rationals, uncovered ranges, malformed input)\n"
    "  3  I/O error (unreadable input, output exists without --force, write failure)\n"
    "  4  precision error (an enclosure could not be narrowed within the budget)\n"
    "  5  resource ceiling exceeded (max_n above the ceiling; see V1SIGN_MAX_N_CEILING)\n"
    "  6  internal error\n";

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string_view subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::coeffs: return "coeffs";
    case Subcommand::constants: return "constants";
    case Subcommand::predict: return "predict";
    case Subcommand::scan: return "scan";
    case Subcommand::verify: return "verify";
    case Subcommand::report: return "report";
  }
  return "?";
}

std::size_t ceiling_from_env() {
  const char* raw = std::getenv(kCeilingEnv);
  if (raw == nullptr || *raw == '\0') return kDefaultMaxNCeiling;
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(raw, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || raw[pos] != '\0' || value == 0) {
    throw UsageError(std::string(kCeilingEnv) + " must be a positive integer, got '" + raw + "'");
  }
  return static_cast<std::size_t>(value);
}

/// Refuses to clobber existing artifacts before any computation starts.
void check_output_target(const RunConfig& config) {
  if (!config.output_path) return;
  const std::filesystem::path path(*config.output_path);
  std::error_code ec;
  if (std::filesystem::exists(path, ec) && !config.force) {
    throw IoError("output file '" + path.string() + "' exists; pass --force to overwrite");
  }
  if (std::filesystem::is_directory(path, ec)) throw IoError("output path '" + path.string() + "' is a directory");
}

void emit(const RunConfig& config, const std::string& artifact, std::ostream& out) {
  if (!config.output_path) {
    out << artifact;
    out.flush();
    return;
  }
  std::ofstream file(*config.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + *config.output_path + "' for writing");
  file << artifact;
  file.close();
  if (!file) throw IoError("failed writing '" + *config.output_path + "'");
}

std::vector<mpz_class> load_coefficients(const RunConfig& config) {
  if (config.coeffs_csv) {
    std::ifstream in(*config.coeffs_csv, std::ios::binary);
    if (!in) throw IoError("cannot read coefficient CSV '" + *config.coeffs_csv + "'");
    auto coeffs = read_coefficients_csv(in);
    if (coeffs.size() - 1 > config.ceiling) {
      throw ResourceLimitError("coefficient CSV exceeds the max_n ceiling", coeffs.size() - 1, config.ceiling);
    }
    return coeffs;
  }
  return v1_coefficients(*config.max_n, CoefficientOptions{config.ceiling, config.jobs});
}

/// Candidates up to n_max whose distance lower bound is at least delta.
std::vector<CandidateTriple> admissible_candidates(std::int64_t n_max, const mpq_class& delta,
                                                   const AsymptoticContext& ctx, std::ostream& err) {
  std::vector<CandidateTriple> out;
  for (Family f : {Family::minus, Family::plus}) {
    CandidateList list = candidates_up_to(f, n_max, ctx);
    for (std::size_t m : list.skipped) {
      err << "warning: " << to_string(f) << " candidate m=" << m << " skipped (floor undecided)\n";
    }
    for (CandidateTriple& c : list.candidates) {
      if (c.dist.lo() >= delta) out.push_back(std::move(c));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

int run_coeffs(const RunConfig& config, std::ostream& out) {
  const auto coeffs = load_coefficients(config);
  std::ostringstream csv;
  write_coefficients_csv(csv, coeffs);
  emit(config, csv.str(), out);
  return kOk;
}

int run_constants(const RunConfig& config, std::ostream& out) {
  PrecisionBudget budget;
  budget.working_digits = config.digits;
  budget.target_width = config.width;
  budget.validate();
  const ConstantSet k = compute_constants(budget);
  emit(config, constants_json(k, config.digits), out);
  return kOk;
}

int run_predict(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const AsymptoticContext ctx;
  std::vector<Family> families;
  if (config.family.empty()) {
    families = {Family::minus, Family::plus};
  } else {
    families = {parse_family(config.family)};
  }
  std::vector<CandidateTriple> rows;
  for (Family f : families) {
    std::vector<std::size_t> keep;
    if (config.admissible_only) {
      AdmissibleSearch search = admissible_indices(f, config.m_max, config.delta, ctx);
      for (std::size_t m : search.undecided) {
        err << "warning: " << to_string(f) << " m=" << m << " admissibility undecided\n";
      }
      keep = std::move(search.admissible);
    } else {
      for (std::size_t m = 0; m <= config.m_max; ++m) keep.push_back(m);
    }
    for (std::size_t m : keep) {
      try {
        rows.push_back(candidate(f, m, ctx));
      } catch (const PrecisionError&) {
        err << "warning: " << to_string(f) << " candidate m=" << m << " skipped (floor undecided)\n";
      }
    }
  }
  std::ostringstream csv;
  write_candidates_csv(csv, rows);
  emit(config, csv.str(), out);
  return kOk;
}

std::string scan_csv(const ScanReport& rep, const std::vector<InvariantCheck>& invariants) {
  std::ostringstream o;
  o << "# triples\nstart,common_sign\n";
  for (const auto& t : rep.triples) o << t.start << ',' << t.sign << '\n';
  o << "# minima\nn\n";
  for (auto n : rep.minima) o << n << '\n';
  o << "# conj4_violations\nn,localized\n";
  for (auto n : rep.conj4.failures) {
    const bool unloc = std::binary_search(rep.conj4_unlocalized.begin(), rep.conj4_unlocalized.end(), n);
    o << n << ',' << (unloc ? 0 : 1) << '\n';
  }
  o << "# candidates\n";
  write_candidates_csv(o, rep.candidates);
  o << "# matches\nfamily,m,start,observed_start,offset\n";
  for (const auto& m : rep.matching.matches) {
    o << to_string(m.candidate.family) << ',' << m.candidate.m << ',' << m.candidate.start << ','
      << m.observed_start << ',' << m.offset << '\n';
  }
  o << "# summary\nkey,value\n";
  o << "n_lo," << rep.n_lo << "\nn_hi," << rep.n_hi << "\ndelta," << rep.delta.get_str() << '\n';
  o << "conj4_windows," << rep.conj4.windows << "\nconj4_passed," << rep.conj4.passed << '\n';
  o << "threshold_m," << (rep.matching.threshold_m ? std::to_string(*rep.matching.threshold_m) : "") << '\n';
  if (rep.accuracy) {
    o << "sign_determined," << rep.accuracy->determined << "\nsign_agreeing," << rep.accuracy->agreeing << '\n';
    o << std::setprecision(17) << "ratio_median," << rep.accuracy->magnitude_ratio.median << '\n';
  }
  for (const auto& c : invariants) o << "invariant_" << c.name << ',' << (c.passed ? "pass" : "fail") << '\n';
  return o.str();
}

int run_scan(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto coeffs = load_coefficients(config);
  const auto top = static_cast<long long>(coeffs.size()) - 1;
  const long long lo = config.from.value_or(1);
  const long long hi = config.to.value_or(top);
  if (hi > top) {
    throw UsageError("--to " + std::to_string(hi) + " exceeds coefficient coverage " + std::to_string(top));
  }
  if (hi - lo < 3) throw UsageError("scan range must contain at least four indices");

  const AsymptoticContext ctx;
  ScanOptions opts;
  opts.delta = config.delta;
  opts.admissible_only = config.admissible_only;
  opts.jobs = config.jobs;
  const ScanReport rep = scan_range(coeffs, lo, hi, ctx, opts);
  for (std::size_t m : rep.skipped_candidates) err << "warning: candidate m=" << m << " skipped\n";
  const auto invariants = scan_invariants(rep, coeffs);

  const Format fmt = config.format.value_or(Format::json);
  emit(config, fmt == Format::json ? scan_report_json(rep, 12, invariants) : scan_csv(rep, invariants), out);

  bool ok = true;
  for (const auto& c : invariants) {
    if (!c.passed) {
      ok = false;
      err << "invariant failed: " << c.name << " (" << c.counterexamples.size() << " counterexamples)\n";
    }
  }
  return ok ? kOk : kVerificationFailed;
}

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<Check> verification_checks(const RunConfig& config, std::span<const mpz_class> coeffs,
                                       const AsymptoticContext& ctx, std::ostream& err) {
  std::vector<Check> checks;

  {
    Check c{"initial_values", verify_initial_values(coeffs), {}};
    std::size_t hits = 0;
    for (const auto& [n, v] : kInitialValues) hits += coeffs[static_cast<std::size_t>(n)] == v ? 1 : 0;
    c.detail = std::to_string(hits) + "/" + std::to_string(kInitialValues.size()) + " values match";
    checks.push_back(std::move(c));
  }

  {
    const ConstantSet& k = ctx.constants(0);
    const Enclosure g_bracket(mpq_class("10147430670/10000000000"), mpq_class("10149758071/10000000000"));
    const Enclosure a_bracket(mpq_class("388959/10000"), mpq_class("389049/10000"));
    const bool ok = k.G.width() <= k.budget.target_width && g_bracket.contains(k.G) &&
                    a_bracket.contains(k.alpha) && excludes_all_integers(k.alpha);
    checks.push_back({"constants", ok, "G " + k.G.to_string(14) + ", alpha " + k.alpha.to_string(10)});
  }

  {
    const CandidateTriple p2 = candidate(Family::plus, 2, ctx);
    const CandidateTriple m3 = candidate(Family::minus, 3, ctx);
    checks.push_back({"candidates", p2.start == 293 && m3.start == 410,
                      "plus m=2 -> " + std::to_string(p2.start) + ", minus m=3 -> " + std::to_string(m3.start)});
  }

  for (const SuiteResult& s : run_property_suites(kPropertySeed)) {
    std::string detail = std::to_string(s.cases - s.failures) + "/" + std::to_string(s.cases) + " cases";
    if (!s.first_failure.empty()) detail += "; first failure " + s.first_failure;
    checks.push_back({"property_" + s.name, s.passed(), detail});
  }

  {
    const auto n_max = static_cast<std::int64_t>(coeffs.size()) - 1;
    const SequenceCertificate cert =
        build_sequence(std::max(config.sequence_n_max, 8), coeffs, admissible_candidates(n_max, config.delta, ctx, err));
    bool ok = cert.entries.size() >= 4;
    std::int64_t previous = 0;
    for (const auto& e : cert.entries) {
      ok = ok && e.verified() && e.start > previous;
      previous = e.start;
    }
    std::string detail = std::to_string(cert.entries.size()) + " entries verified";
    if (cert.failure_index) detail += ", stopped at N_" + std::to_string(*cert.failure_index);
    checks.push_back({"sequence", ok, detail});
  }
  return checks;
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto coeffs = load_coefficients(config);
  if (coeffs.size() <= kVerifyDefaultMaxN) throw UsageError("verify needs coefficients up to at least 705");
  const AsymptoticContext ctx;
  const auto checks = verification_checks(config, coeffs, ctx, err);

  std::ostringstream o;
  std::size_t failed = 0;
  for (const auto& c : checks) {
    o << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    failed += c.passed ? 0 : 1;
  }
  if (failed == 0) {
    o << "verify: all " << checks.size() << " checks passed\n";
  } else {
    o << "verify: " << failed << " of " << checks.size() << " checks failed\n";
  }
  emit(config, o.str(), out);
  return failed == 0 ? kOk : kVerificationFailed;
}

int run_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto coeffs = load_coefficients(config);
  if (coeffs.size() <= kVerifyDefaultMaxN) throw UsageError("report needs coefficients up to at least 705");
  const auto top = static_cast<std::int64_t>(coeffs.size()) - 1;
  const AsymptoticContext ctx;
  const ConstantSet& k = ctx.constants(0);

  std::ostringstream o;
  o << "# v1sign report\n\n";
  o << "Coefficients computed for 0 <= n <= " << top << ".\n\n";

  o << "## Constants\n\n| name | lower | upper |\n|---|---|---|\n";
  const auto row = [&](const char* name, const Enclosure& e) {
    o << "| " << name << " | " << decimal_down(e.lo(), 30) << " | " << decimal_up(e.hi(), 30) << " |\n";
  };
  row("G", k.G);
  row("|V|", k.abs_V);
  row("c", k.c);
  row("alpha", k.alpha);
  row("gamma_plus", k.amp.gamma_plus);
  row("gamma_minus", k.amp.gamma_minus);
  row("A0", k.amp.A0);
  row("A1", k.amp.A1);
  o << "\nG uses " << k.g_terms << " grouped terms.\n\n";

  o << "## Verification checks\n\n";
  for (const auto& c : verification_checks(config, coeffs, ctx, err)) {
    o << "- " << (c.passed ? "PASS" : "FAIL") << " " << c.name << ": " << c.detail << '\n';
  }

  ScanOptions opts;
  opts.delta = config.delta;
  opts.admissible_only = true;
  opts.jobs = config.jobs;
  const std::int64_t lo = std::min<std::int64_t>(292, top - 3);
  const ScanReport rep = scan_range(coeffs, lo, top, ctx, opts);
  const auto invariants = scan_invariants(rep, coeffs);

  o << "\n## Scan of [" << rep.n_lo << ", " << rep.n_hi << "] (delta = " << rep.delta.get_str() << ")\n\n";
  o << std::setprecision(10);
  o << "| quantity | value |\n|---|---|\n";
  o << "| same-sign triples | " << rep.triples.size() << " |\n";
  o << "| strict local minima | " << rep.minima.size() << " |\n";
  o << "| four-term windows | " << rep.conj4.windows << " |\n";
  o << "| window pass fraction | " << rep.conj4.pass_fraction() << " |\n";
  o << "| unlocalized window failures | " << rep.conj4_unlocalized.size() << " |\n";
  o << "| admissible candidates | " << rep.candidates.size() << " |\n";
  o << "| exact-match threshold m | "
    << (rep.matching.threshold_m ? std::to_string(*rep.matching.threshold_m) : std::string("none")) << " |\n";
  if (rep.accuracy) {
    o << "| main-term sign agreement | " << rep.accuracy->sign_agreement() << " |\n";
    o << "| magnitude ratio median | " << rep.accuracy->magnitude_ratio.median << " |\n";
  }
  o << "\n### Matches\n\n| family | m | predicted | observed | offset |\n|---|---|---|---|---|\n";
  for (const auto& m : rep.matching.matches) {
    o << "| " << to_string(m.candidate.family) << " | " << m.candidate.m << " | " << m.candidate.start << " | "
      << m.observed_start << " | " << m.offset << " |\n";
  }
  o << "\n### Invariants\n\n";
  for (const auto& c : invariants) o << "- " << (c.passed ? "PASS" : "FAIL") << " " << c.name << '\n';

  const SequenceCertificate cert =
      build_sequence(std::max(config.sequence_n_max, 8), coeffs, admissible_candidates(top, config.delta, ctx, err));
  o << "\n## Sequence N_n\n\n| n | N_n | origin | m | sign | verified |\n|---|---|---|---|---|---|\n";
  for (const auto& e : cert.entries) {
    const char* origin = e.origin == SequenceOrigin::initial ? "initial"
                         : e.origin == SequenceOrigin::minus ? "minus"
                                                             : "plus";
    o << "| " << e.index << " | " << e.start << " | " << origin << " | " << (e.m ? std::to_string(*e.m) : "-")
      << " | " << e.sign << " | " << (e.verified() ? "yes" : "no") << " |\n";
  }
  if (cert.failure_index) o << "\nNo verified entry for N_" << *cert.failure_index << " within range.\n";

  emit(config, o.str(), out);
  return kOk;
}

}  // namespace

std::optional<std::string> validate(const RunConfig& c) {
  if (c.jobs == 0) return "--jobs must be at least 1";
  if (c.output_path && c.output_path->empty()) return "--output must not be empty";
  const bool csv_json_ok = c.subcommand == Subcommand::scan;
  if (c.format && !csv_json_ok) {
    const bool ok = (c.subcommand == Subcommand::coeffs || c.subcommand == Subcommand::predict)
                        ? *c.format == Format::csv
                        : (c.subcommand == Subcommand::constants && *c.format == Format::json);
    if (!ok) return "--format is not supported with this subcommand value";
  }
  if (c.coeffs_csv && c.max_n) return "--coeffs-csv and --max-n are mutually exclusive";
  if (c.delta <= 0 || c.delta >= mpq_class(1, 2)) return "--delta must lie strictly between 0 and 1/2";

  switch (c.subcommand) {
    case Subcommand::coeffs:
      if (!c.max_n) return "coeffs requires --max-n";
      break;
    case Subcommand::constants:
      if (c.digits < 10 || c.digits > 2000) return "--digits must lie in [10, 2000]";
      if (c.width <= 0) return "--width must be positive";
      break;
    case Subcommand::predict:
      if (!c.family.empty() && c.family != "minus" && c.family != "plus") return "--family must be minus or plus";
      if (c.m_max > 100'000) return "--m-max must be at most 100000";
      break;
    case Subcommand::scan:
      if (!c.max_n && !c.coeffs_csv) return "scan requires --max-n or --coeffs-csv";
      if (c.from && *c.from < 1) return "--from must be at least 1";
      if (c.from && c.to && *c.to < *c.from + 3) return "--to must be at least --from + 3";
      break;
    case Subcommand::verify:
    case Subcommand::report:
      if (c.max_n && *c.max_n < kVerifyDefaultMaxN) return "--max-n must be at least 705";
      if (c.sequence_n_max < 8) return "--sequence-n must be at least 8";
      break;
  }
  return std::nullopt;
}

std::variant<RunConfig, int> parse_command_line(int argc, const char* const* argv, std::ostream& out,
                                                std::ostream& err) {
  CLI::App app{"Exact coefficients and sign-pattern verification for the q-series v1(q)", "v1sign"};
  app.footer(std::string("\n") + kExitCodeHelp + "\nEnvironment:\n  " + kCeilingEnv +
             "  upper bound on --max-n (default " + std::to_string(kDefaultMaxNCeiling) + ")\n");
  app.require_subcommand(1);

  std::size_t max_n = 0;
  std::size_t m_max = 10;
  std::string delta_text = "1/4";
  std::string width_text = "1/1000000000000";
  unsigned digits = 50;
  std::string family;
  bool admissible_only = false;
  bool scan_all_candidates = false;
  std::string coeffs_csv;
  long long from = 1;
  long long to = 0;
  int sequence_n = 12;
  std::string output;
  std::string format;
  bool force = false;
  unsigned jobs = 1;

  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output, "Write the artifact to this file instead of stdout");
    sub->add_flag("--force", force, "Overwrite an existing output file");
  };
  const auto add_jobs = [&](CLI::App* sub) {
    sub->add_option("--jobs", jobs, "Worker threads (results do not depend on this)")->check(CLI::PositiveNumber);
  };
  const auto add_delta = [&](CLI::App* sub) {
    sub->add_option("--delta", delta_text, "Admissibility margin as a rational p/q in (0, 1/2); default 1/4");
  };

  CLI::App* coeffs = app.add_subcommand("coeffs", "Write V1(0..max_n) as CSV with header n,V1");
  coeffs->add_option("--max-n", max_n, "Largest coefficient index")->required();
  coeffs->add_option("--format", format, "Output format (csv)")->check(CLI::IsMember({"csv"}));
  add_output(coeffs);
  add_jobs(coeffs);

  CLI::App* constants = app.add_subcommand("constants", "Write certified enclosures of G, c, alpha and amplitudes");
  constants->add_option("--digits", digits, "Working and output decimal digits (default 50)");
  constants->add_option("--width", width_text, "Target width of the G enclosure as p/q (default 1/10^12)");
  constants->add_option("--format", format, "Output format (json)")->check(CLI::IsMember({"json"}));
  add_output(constants);

  CLI::App* predict = app.add_subcommand("predict", "Write candidate triple starts as CSV");
  predict->add_option("--family", family, "minus or plus (default both)")->check(CLI::IsMember({"minus", "plus"}));
  predict->add_option("--m-max", m_max, "Largest candidate index m (default 10)");
  add_delta(predict);
  predict->add_flag("--admissible-only", admissible_only, "Keep only indices whose distance to Z is at least delta");
  predict->add_option("--format", format, "Output format (csv)")->check(CLI::IsMember({"csv"}));
  add_output(predict);

  CLI::App* scan = app.add_subcommand("scan", "Scan a range and compare against predictions");
  auto* scan_max = scan->add_option("--max-n", max_n, "Compute coefficients up to this index");
  auto* scan_csv_opt = scan->add_option("--coeffs-csv", coeffs_csv, "Read coefficients from a CSV written by coeffs");
  scan_max->excludes(scan_csv_opt);
  scan->add_option("--from", from, "First index of the scan (default 1)");
  scan->add_option("--to", to, "Last index of the scan (default: end of coverage)");
  add_delta(scan);
  scan->add_flag("--all-candidates", scan_all_candidates,
                 "Match every candidate, not only indices admissible at delta");
  scan->add_option("--format", format, "json (default) or csv")->check(CLI::IsMember({"json", "csv"}));
  add_output(scan);
  add_jobs(scan);

  CLI::App* verify = app.add_subcommand("verify", "Golden values, constants, candidates and property suites");
  verify->add_option("--max-n", max_n, "Coefficient coverage (default 705, minimum 705)");
  verify->add_option("--sequence-n", sequence_n, "Extend the N_n sequence certificate to this n (default 12)");
  add_delta(verify);
  add_output(verify);
  add_jobs(verify);

  CLI::App* report = app.add_subcommand("report", "Human-readable markdown summary");
  report->add_option("--max-n", max_n, "Coefficient coverage (default 5000, minimum 705)");
  report->add_option("--sequence-n", sequence_n, "Extend the N_n sequence certificate to this n (default 12)");
  add_delta(report);
  add_output(report);
  add_jobs(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  RunConfig config;
  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  for (Subcommand s : {Subcommand::coeffs, Subcommand::constants, Subcommand::predict, Subcommand::scan,
                       Subcommand::verify, Subcommand::report}) {
    if (subcommand_name(s) == name) config.subcommand = s;
  }

  const auto given = [chosen](const std::string& flag) {
    const CLI::Option* opt = chosen->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  try {
    config.ceiling = ceiling_from_env();
    if (given("--max-n")) config.max_n = max_n;
    if (config.subcommand == Subcommand::verify && !config.max_n) config.max_n = kVerifyDefaultMaxN;
    if (config.subcommand == Subcommand::report && !config.max_n) config.max_n = kReportDefaultMaxN;
    config.m_max = m_max;
    config.delta = parse_rational(delta_text);
    config.width = parse_rational(width_text);
    config.digits = digits;
    config.family = family;
    config.admissible_only =
        config.subcommand == Subcommand::scan ? !scan_all_candidates : admissible_only;
    if (!coeffs_csv.empty()) config.coeffs_csv = coeffs_csv;
    if (given("--from")) config.from = from;
    if (given("--to")) config.to = to;
    config.sequence_n_max = sequence_n;
    if (!output.empty()) config.output_path = output;
    if (!format.empty()) config.format = format == "json" ? Format::json : Format::csv;
    config.force = force;
    config.jobs = jobs;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  }

  if (auto problem = validate(config)) {
    err << "error: " << *problem << "\nRun with --help for usage.\n";
    return kUsage;
  }
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (auto problem = validate(config)) throw UsageError(*problem);
    if (config.max_n && *config.max_n > config.ceiling) {
      throw ResourceLimitError("--max-n exceeds the ceiling", *config.max_n, config.ceiling);
    }
    check_output_target(config);
    switch (config.subcommand) {
      case Subcommand::coeffs: return run_coeffs(config, out);
      case Subcommand::constants: return run_constants(config, out);
      case Subcommand::predict: return run_predict(config, out, err);
      case Subcommand::scan: return run_scan(config, out, err);
      case Subcommand::verify: return run_verify(config, out, err);
      case Subcommand::report: return run_report(config, out, err);
    }
    return kInternalError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what();
    if (e.best()) err << " (best enclosure " << e.best()->to_string(20) << ")";
    err << '\n';
    return kPrecisionError;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << " (requested " << e.requested() << ", ceiling " << e.ceiling()
        << "; raise " << kCeilingEnv << " to allow more)\n";
    return kResourceLimit;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace v1sign::cli
