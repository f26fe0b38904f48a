#include "v1sign/report_json.hpp"

#include <json.hpp>

namespace v1sign {

namespace {

using nlohmann::ordered_json;

ordered_json enclosure_json(const Enclosure& e, unsigned digits) {
  return ordered_json{{"lo", decimal_down(e.lo(), digits)}, {"hi", decimal_up(e.hi(), digits)}};
}

ordered_json candidate_json(const CandidateTriple& c, unsigned digits) {
  return ordered_json{{"family", to_string(c.family)},
                      {"m", c.m},
                      {"start", c.start},
                      {"t", enclosure_json(c.t, digits)},
                      {"dist", enclosure_json(c.dist, digits)}};
}

}  // namespace

std::string constants_json(const ConstantSet& k, unsigned digits) {
  ordered_json j;
  j["G"] = enclosure_json(k.G, digits);
  j["c"] = enclosure_json(k.c, digits);
  j["alpha"] = enclosure_json(k.alpha, digits);
  j["gamma_plus"] = enclosure_json(k.amp.gamma_plus, digits);
  j["gamma_minus"] = enclosure_json(k.amp.gamma_minus, digits);
  j["A0"] = enclosure_json(k.amp.A0, digits);
  j["A1"] = enclosure_json(k.amp.A1, digits);
  return j.dump(2) + "\n";
}

std::string scan_report_json(const ScanReport& rep, unsigned digits,
                             const std::vector<InvariantCheck>& invariants) {
  ordered_json j;
  j["range"] = {rep.n_lo, rep.n_hi};
  j["delta"] = rep.delta.get_str();

  ordered_json triples = ordered_json::array();
  for (const auto& t : rep.triples) triples.push_back({{"start", t.start}, {"common_sign", t.sign}});
  j["triples"] = std::move(triples);
  j["minima"] = rep.minima;

  j["conj4_windows"] = {{"range", {rep.conj4.n_lo, rep.conj4.n_hi}},
                        {"windows", rep.conj4.windows},
                        {"passed", rep.conj4.passed},
                        {"pass_fraction", rep.conj4.pass_fraction()},
                        {"violations", rep.conj4.failures},
                        {"unlocalized", rep.conj4_unlocalized}};

  ordered_json cands = ordered_json::array();
  for (const auto& c : rep.candidates) cands.push_back(candidate_json(c, digits));
  j["candidates"] = std::move(cands);
  j["skipped_candidates"] = rep.skipped_candidates;

  ordered_json matches = ordered_json::array();
  for (const auto& m : rep.matching.matches) {
    matches.push_back({{"candidate", candidate_json(m.candidate, digits)},
                       {"observed_start", m.observed_start},
                       {"offset", m.offset}});
  }
  j["matches"] = std::move(matches);
  ordered_json unmatched_pred = ordered_json::array();
  for (const auto& c : rep.matching.unmatched_predictions) unmatched_pred.push_back(candidate_json(c, digits));
  j["unmatched_predictions"] = std::move(unmatched_pred);
  ordered_json unmatched_obs = ordered_json::array();
  for (const auto& t : rep.matching.unmatched_observations) {
    unmatched_obs.push_back({{"start", t.start}, {"common_sign", t.sign}});
  }
  j["unmatched_observations"] = std::move(unmatched_obs);
  j["threshold_m"] = rep.matching.threshold_m ? ordered_json(*rep.matching.threshold_m) : ordered_json(nullptr);

  if (rep.accuracy) {
    const AccuracyStats& a = *rep.accuracy;
    j["sign_agreement"] = {{"range", {a.n_lo, a.n_hi}},
                           {"evaluated", a.evaluated},
                           {"determined", a.determined},
                           {"agreeing", a.agreeing},
                           {"fraction", a.sign_agreement()},
                           {"disagreements", a.disagreements},
                           {"undetermined", a.undetermined}};
    j["magnitude_ratio_stats"] = {{"count", a.magnitude_ratio.count},
                                  {"min", a.magnitude_ratio.min},
                                  {"median", a.magnitude_ratio.median},
                                  {"max", a.magnitude_ratio.max}};
  } else {
    j["sign_agreement"] = nullptr;
    j["magnitude_ratio_stats"] = nullptr;
  }
  j["zero_gaps"] = {{"count", rep.gaps.count},
                    {"left_min", rep.gaps.left_min},
                    {"left_max", rep.gaps.left_max},
                    {"right_min", rep.gaps.right_min},
                    {"right_max", rep.gaps.right_max}};
  if (!invariants.empty()) {
    ordered_json inv = ordered_json::array();
    for (const auto& c : invariants) {
      inv.push_back({{"name", c.name}, {"passed", c.passed}, {"counterexamples", c.counterexamples}});
    }
    j["invariants"] = std::move(inv);
  }
  return j.dump(2) + "\n";
}

std::string sequence_json(const SequenceCertificate& cert) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : cert.entries) {
    const char* origin = e.origin == SequenceOrigin::initial ? "initial"
                         : e.origin == SequenceOrigin::minus ? "minus"
                                                             : "plus";
    entries.push_back({{"n", e.index},
                       {"N", e.start},
                       {"family_or_initial", origin},
                       {"m", e.m ? ordered_json(*e.m) : ordered_json(nullptr)},
                       {"sign", e.sign},
                       {"same_sign", e.same_sign},
                       {"start_is_min", e.start_is_min},
                       {"end_is_min", e.end_is_min},
                       {"bound_ok", e.bound_ok},
                       {"verified", e.verified()}});
  }
  ordered_json j{{"entries", std::move(entries)},
                 {"complete", cert.complete()},
                 {"failure_index", cert.failure_index ? ordered_json(*cert.failure_index) : ordered_json(nullptr)}};
  return j.dump(2) + "\n";
}

}  // namespace v1sign
