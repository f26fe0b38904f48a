#pragma once

#include <iosfwd>
#include <vector>

#include <gmpxx.h>

#include "v1sign/asymptotics.hpp"
#include "v1sign/verifier.hpp"

namespace v1sign {

/// "n,V1" header, then one "n,value" row per coefficient, '\n' line endings.
void write_coefficients_csv(std::ostream& out, CoefficientSpan coeffs);

/// Inverse of write_coefficients_csv. Rows must start at n = 0 and be
/// consecutive; anything else is InvalidInput.
std::vector<mpz_class> read_coefficients_csv(std::istream& in);

/// "family,m,start,t_lo,t_hi,dist_lo"; decimals rounded outward.
void write_candidates_csv(std::ostream& out, const std::vector<CandidateTriple>& candidates,
                          unsigned digits = 12);

}  // namespace v1sign
