#pragma once

#include <string>

#include "v1sign/constants.hpp"
#include "v1sign/verifier.hpp"

namespace v1sign {

/// {"G": {"lo": "...", "hi": "..."}, "c": ..., "alpha": ..., "gamma_plus": ...,
///  "gamma_minus": ..., "A0": ..., "A1": ...}; endpoints are decimal strings
/// rounded outward to `digits` fractional digits.
std::string constants_json(const ConstantSet& k, unsigned digits = 40);

/// The ScanReport fields as a JSON object, enclosures as decimal-string pairs.
/// Invariant checks, when given, are appended under "invariants".
std::string scan_report_json(const ScanReport& rep, unsigned digits = 12,
                             const std::vector<InvariantCheck>& invariants = {});

std::string sequence_json(const SequenceCertificate& cert);

}  // namespace v1sign
