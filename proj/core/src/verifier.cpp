#include "v1sign/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <tuple>

#include "v1sign/errors.hpp"

namespace v1sign {

namespace {

void require_coverage(CoefficientSpan coeffs, std::int64_t lo, std::int64_t hi, const char* op) {
  if (lo < 0 || hi < lo || static_cast<std::size_t>(hi) >= coeffs.size()) {
    throw ContractViolation(std::string(op) + ": coefficients cover [0, " +
                            std::to_string(static_cast<long long>(coeffs.size()) - 1) + "], need [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

int sign_at(CoefficientSpan coeffs, std::int64_t n) { return sgn(coeffs[static_cast<std::size_t>(n)]); }

int cmp_abs_at(CoefficientSpan coeffs, std::int64_t a, std::int64_t b) {
  return mpz_cmpabs(coeffs[static_cast<std::size_t>(a)].get_mpz_t(), coeffs[static_cast<std::size_t>(b)].get_mpz_t());
}

bool same_sign_triple(CoefficientSpan coeffs, std::int64_t start) {
  const int s = sign_at(coeffs, start);
  return s != 0 && sign_at(coeffs, start + 1) == s && sign_at(coeffs, start + 2) == s;
}

double log_abs(const mpz_class& v) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, v.get_mpz_t());
  return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::log(2.0);
}

RatioStats summarize(std::vector<double> values) {
  RatioStats s;
  s.count = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return s;
}

}  // namespace

std::vector<ObservedTriple> scan_triples(CoefficientSpan coeffs, std::int64_t n_lo, std::int64_t n_hi) {
  require_coverage(coeffs, n_lo, n_hi + 2, "scan_triples");
  std::vector<ObservedTriple> out;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    if (same_sign_triple(coeffs, n)) out.push_back({n, sign_at(coeffs, n)});
  }
  return out;
}

bool is_strict_local_min(CoefficientSpan coeffs, std::int64_t n) {
  require_coverage(coeffs, n - 1, n + 1, "is_strict_local_min");
  return cmp_abs_at(coeffs, n, n - 1) < 0 && cmp_abs_at(coeffs, n, n + 1) < 0;
}

std::vector<std::int64_t> scan_local_minima(CoefficientSpan coeffs, std::int64_t n_lo, std::int64_t n_hi) {
  require_coverage(coeffs, n_lo, n_hi, "scan_local_minima");
  std::vector<std::int64_t> out;
  for (std::int64_t n = n_lo + 1; n < n_hi; ++n) {
    if (is_strict_local_min(coeffs, n)) out.push_back(n);
  }
  return out;
}

WindowStats conjecture4_windows(CoefficientSpan coeffs, std::int64_t n_lo, std::int64_t n_hi) {
  require_coverage(coeffs, n_lo, n_hi + 3, "conjecture4_windows");
  WindowStats st;
  st.n_lo = n_lo;
  st.n_hi = n_hi;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    int positive = 0;
    int negative = 0;
    for (std::int64_t j = 0; j < 4; ++j) {
      const int s = sign_at(coeffs, n + j);
      positive += s > 0;
      negative += s < 0;
    }
    ++st.windows;
    if (positive == 2 && negative == 2) {
      ++st.passed;
    } else {
      st.failures.push_back(n);
    }
  }
  return st;
}

std::vector<std::int64_t> unlocalized_failures(const std::vector<std::int64_t>& failures,
                                               const std::vector<Enclosure>& crossings, long radius) {
  std::vector<std::int64_t> out;
  for (std::int64_t n : failures) {
    const bool near = std::any_of(crossings.begin(), crossings.end(), [&](const Enclosure& t) {
      return mpq_class(n) <= t.lo() + radius && mpq_class(n + 3) >= t.hi() - radius;
    });
    if (!near) out.push_back(n);
  }
  return out;
}

MatchResult match_predictions(const std::vector<ObservedTriple>& observed,
                              const std::vector<CandidateTriple>& candidates, int window) {
  if (window < 0) throw InvalidInput("match_predictions: window must be non-negative");
  struct Pair {
    std::int64_t distance;
    std::int64_t obs_start;
    std::int64_t cand_start;
    std::size_t obs;
    std::size_t cand;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      const std::int64_t d = observed[i].start - candidates[j].start;
      if (d >= -window && d <= window) {
        pairs.push_back({d < 0 ? -d : d, observed[i].start, candidates[j].start, i, j});
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return std::tie(a.distance, a.obs_start, a.cand_start, a.cand) <
           std::tie(b.distance, b.obs_start, b.cand_start, b.cand);
  });

  std::vector<bool> obs_used(observed.size(), false);
  std::vector<std::optional<std::int64_t>> cand_offset(candidates.size());
  MatchResult result;
  for (const Pair& p : pairs) {
    if (obs_used[p.obs] || cand_offset[p.cand]) continue;
    obs_used[p.obs] = true;
    cand_offset[p.cand] = p.obs_start - p.cand_start;
    result.matches.push_back({candidates[p.cand], p.obs_start, p.obs_start - p.cand_start});
  }
  std::sort(result.matches.begin(), result.matches.end(),
            [](const Match& a, const Match& b) { return a.observed_start < b.observed_start; });
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    if (!cand_offset[j]) result.unmatched_predictions.push_back(candidates[j]);
  }
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!obs_used[i]) result.unmatched_observations.push_back(observed[i]);
  }

  // Walk candidates from the largest m down while they match exactly.
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(candidates[a].m, candidates[a].start) < std::tie(candidates[b].m, candidates[b].start);
  });
  std::optional<std::size_t> threshold;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& off = cand_offset[*it];
    if (!off || *off != 0) break;
    const std::size_t m = candidates[*it].m;
    // Candidates sharing this m must all be exact for m to qualify.
    const bool all_exact = std::all_of(order.begin(), order.end(), [&](std::size_t k) {
      return candidates[k].m != m || (cand_offset[k] && *cand_offset[k] == 0);
    });
    if (!all_exact) break;
    threshold = m;
  }
  result.threshold_m = threshold;
  return result;
}

AccuracyStats main_term_accuracy(CoefficientSpan coeffs, std::int64_t n_lo, std::int64_t n_hi,
                                 const AsymptoticContext& ctx, unsigned jobs, long crossing_radius) {
  if (n_lo < 1) throw InvalidInput("main_term_accuracy: n_lo must be >= 1");
  require_coverage(coeffs, n_lo, n_hi, "main_term_accuracy");

  const std::vector<Enclosure> crossings = crossings_up_to(n_hi + crossing_radius + 1, ctx.constants(0));
  const auto near_crossing = [&](std::int64_t n) {
    return std::any_of(crossings.begin(), crossings.end(), [&](const Enclosure& t) {
      return mpq_class(n) >= t.lo() - crossing_radius && mpq_class(n) <= t.hi() + crossing_radius;
    });
  };

  const auto count = static_cast<std::size_t>(n_hi - n_lo + 1);
  // Per-n results: predicted sign (0 = undetermined) and ratio (NaN = excluded).
  std::vector<int> predicted(count, 0);
  std::vector<double> ratio(count, std::nan(""));

  const auto work = [&](std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) {
      const std::int64_t n = n_lo + static_cast<std::int64_t>(i);
      const MainTermEstimate est = main_term(static_cast<std::uint64_t>(n), ctx);
      predicted[i] = static_cast<int>(est.sign);
      if (est.log_magnitude && !near_crossing(n)) {
        const mpz_class& v = coeffs[static_cast<std::size_t>(n)];
        ratio[i] = sgn(v) == 0 ? 0.0 : std::exp(log_abs(v) - est.log_magnitude->midpoint_double());
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (workers == 1) {
    work(0, count);
  } else {
    ctx.constants(0);  // build the shared constants once before fanning out
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work, count * w / workers, count * (w + 1) / workers);
    }
  }

  AccuracyStats st;
  st.n_lo = n_lo;
  st.n_hi = n_hi;
  std::vector<double> ratios;
  for (std::size_t i = 0; i < count; ++i) {
    const std::int64_t n = n_lo + static_cast<std::int64_t>(i);
    ++st.evaluated;
    if (predicted[i] == 0) {
      st.undetermined.push_back(n);
      continue;
    }
    ++st.determined;
    if (predicted[i] == sign_at(coeffs, n)) {
      ++st.agreeing;
    } else {
      st.disagreements.push_back(n);
    }
    if (!std::isnan(ratio[i])) ratios.push_back(ratio[i]);
  }
  st.magnitude_ratio = summarize(std::move(ratios));
  return st;
}

namespace {

SequenceEntry check_entry(CoefficientSpan coeffs, int index, std::int64_t start, SequenceOrigin origin,
                          std::optional<std::size_t> m) {
  SequenceEntry e;
  e.index = index;
  e.start = start;
  e.origin = origin;
  e.m = m;
  e.sign = sign_at(coeffs, start);
  e.same_sign = same_sign_triple(coeffs, start);
  e.start_is_min = is_strict_local_min(coeffs, start);
  e.end_is_min = is_strict_local_min(coeffs, start + 2);
  const std::int64_t bound = 10LL * index * index;
  e.bound_ok = index < 9 || start > bound;
  return e;
}

}  // namespace

SequenceCertificate build_sequence(int n_max, CoefficientSpan coeffs,
                                   const std::vector<CandidateTriple>& candidates) {
  if (n_max < 5) throw InvalidInput("build_sequence: n_max must be >= 5");
  require_coverage(coeffs, 0, kInitialStarts.back() + 3, "build_sequence");

  SequenceCertificate cert;
  for (std::size_t i = 0; i < kInitialStarts.size() && static_cast<int>(i) + 5 <= n_max; ++i) {
    cert.entries.push_back(
        check_entry(coeffs, static_cast<int>(i) + 5, kInitialStarts[i], SequenceOrigin::initial, std::nullopt));
  }

  std::vector<CandidateTriple> sorted = candidates;
  std::sort(sorted.begin(), sorted.end(),
            [](const CandidateTriple& a, const CandidateTriple& b) { return a.start < b.start; });

  std::int64_t previous = kInitialStarts.back();
  for (int j = 1; 8 + j <= n_max; ++j) {
    const int index = 8 + j;
    // L_{2i-1} = N_{m_i} with m_i >= 2i - 1 and L_{2i} = M_{l_i} with l_i >= 2i:
    // in both cases the index bound is m >= j.
    const Family fam = j % 2 == 1 ? Family::minus : Family::plus;
    const SequenceOrigin origin = fam == Family::minus ? SequenceOrigin::minus : SequenceOrigin::plus;
    const std::int64_t bound = 10LL * index * index;
    std::optional<SequenceEntry> chosen;
    for (const CandidateTriple& c : sorted) {
      if (c.family != fam || c.m < static_cast<std::size_t>(j)) continue;
      if (c.start <= previous || c.start <= bound || c.start < 1) continue;
      if (static_cast<std::size_t>(c.start + 3) >= coeffs.size()) break;
      SequenceEntry e = check_entry(coeffs, index, c.start, origin, c.m);
      if (e.verified()) {
        chosen = e;
        break;
      }
    }
    if (!chosen) {
      cert.failure_index = index;
      break;
    }
    previous = chosen->start;
    cert.entries.push_back(*chosen);
  }
  return cert;
}

bool verify_initial_values(CoefficientSpan coeffs) {
  require_coverage(coeffs, 0, kInitialValues.back().first, "verify_initial_values");
  return std::all_of(kInitialValues.begin(), kInitialValues.end(), [&](const auto& entry) {
    return coeffs[static_cast<std::size_t>(entry.first)] == entry.second;
  });
}

GapStats zero_gap_stats(const std::vector<CandidateTriple>& candidates, const AsymptoticContext& ctx) {
  GapStats g;
  for (const CandidateTriple& c : candidates) {
    if (c.start <= 0) continue;
    const ZeroGap gap = zero_gap(c, ctx);
    const double left = gap.left.midpoint_double();
    const double right = gap.right.midpoint_double();
    if (g.count == 0) {
      g.left_min = g.left_max = left;
      g.right_min = g.right_max = right;
    }
    g.left_min = std::min(g.left_min, left);
    g.left_max = std::max(g.left_max, left);
    g.right_min = std::min(g.right_min, right);
    g.right_max = std::max(g.right_max, right);
    ++g.count;
  }
  return g;
}

ScanReport scan_range(CoefficientSpan coeffs, std::int64_t n_lo, std::int64_t n_hi,
                      const AsymptoticContext& ctx, const ScanOptions& options) {
  if (n_hi - n_lo < 3) throw InvalidInput("scan_range: range must span at least four coefficients");
  require_coverage(coeffs, n_lo, n_hi, "scan_range");

  ScanReport rep;
  rep.n_lo = n_lo;
  rep.n_hi = n_hi;
  rep.delta = options.delta;
  rep.triples = scan_triples(coeffs, n_lo, n_hi - 2);
  rep.minima = scan_local_minima(coeffs, n_lo, n_hi);
  rep.conj4 = conjecture4_windows(coeffs, n_lo, n_hi - 3);
  rep.conj4_unlocalized = unlocalized_failures(rep.conj4.failures, crossings_up_to(n_hi + 4, ctx.constants(0)));

  for (Family f : {Family::minus, Family::plus}) {
    CandidateList list = candidates_up_to(f, n_hi, ctx);
    rep.skipped_candidates.insert(rep.skipped_candidates.end(), list.skipped.begin(), list.skipped.end());
    for (CandidateTriple& c : list.candidates) {
      if (c.start < n_lo) continue;
      if (options.admissible_only && c.dist.lo() < options.delta) continue;
      rep.candidates.push_back(std::move(c));
    }
  }
  std::sort(rep.candidates.begin(), rep.candidates.end(),
            [](const CandidateTriple& a, const CandidateTriple& b) { return a.start < b.start; });

  rep.matching = match_predictions(rep.triples, rep.candidates, options.match_window);
  if (options.with_accuracy) {
    rep.accuracy = main_term_accuracy(coeffs, std::max<std::int64_t>(1, n_lo), n_hi, ctx, options.jobs);
  }
  rep.gaps = zero_gap_stats(rep.candidates, ctx);
  return rep;
}

std::vector<InvariantCheck> scan_invariants(const ScanReport& rep, CoefficientSpan coeffs) {
  InvariantCheck localized{"window_failures_localized", true, rep.conj4_unlocalized};
  localized.passed = rep.conj4_unlocalized.empty();

  InvariantCheck minima{"exact_matches_have_minimum_endpoints", true, {}};
  InvariantCheck small{"endpoints_smaller_than_middle", true, {}};
  InvariantCheck parity{"matched_start_parity", true, {}};
  const auto& thr = rep.matching.threshold_m;
  for (const auto& mt : rep.matching.matches) {
    const std::int64_t s = mt.observed_start;
    const bool odd = (s % 2) != 0;
    if (odd != (mt.candidate.family == Family::plus)) parity.counterexamples.push_back(s);
    if (mt.offset != 0 || !thr || mt.candidate.m < *thr) continue;
    const bool lo_min = std::binary_search(rep.minima.begin(), rep.minima.end(), s);
    const bool hi_min = std::binary_search(rep.minima.begin(), rep.minima.end(), s + 2);
    if (!lo_min || !hi_min) minima.counterexamples.push_back(s);
    if (s >= 1 && static_cast<std::size_t>(s + 3) < coeffs.size()) {
      const auto mag = [&](std::int64_t n) { return mpz_class(abs(coeffs[static_cast<std::size_t>(n)])); };
      const mpz_class mid = mag(s + 1);
      if (!(mag(s) < mid && mag(s) < mag(s - 1) && mag(s + 2) < mid && mag(s + 2) < mag(s + 3)))
        small.counterexamples.push_back(s);
    }
  }
  for (auto* c : {&minima, &small, &parity}) c->passed = c->counterexamples.empty();
  return {localized, minima, small, parity};
}

}  // namespace v1sign
