#include "v1sign/coeff_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "v1sign/errors.hpp"

namespace v1sign {

void write_coefficients_csv(std::ostream& out, CoefficientSpan coeffs) {
  out << "n,V1\n";
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    out << n << ',' << coeffs[n].get_str() << '\n';
  }
}

std::vector<mpz_class> read_coefficients_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || (line != "n,V1" && line != "n,V1\r")) {
    throw InvalidInput("coefficient CSV: missing 'n,V1' header");
  }
  std::vector<mpz_class> coeffs;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw InvalidInput("coefficient CSV: malformed row " + std::to_string(row + 1));
    }
    const std::string index = line.substr(0, comma);
    if (index != std::to_string(coeffs.size())) {
      throw InvalidInput("coefficient CSV: expected n = " + std::to_string(coeffs.size()) + ", got '" +
                         index + "'");
    }
    mpz_class value;
    if (value.set_str(line.substr(comma + 1), 10) != 0) {
      throw InvalidInput("coefficient CSV: bad integer in row " + std::to_string(row + 1));
    }
    coeffs.push_back(std::move(value));
    ++row;
  }
  if (coeffs.empty()) throw InvalidInput("coefficient CSV: no rows");
  return coeffs;
}

void write_candidates_csv(std::ostream& out, const std::vector<CandidateTriple>& candidates, unsigned digits) {
  out << "family,m,start,t_lo,t_hi,dist_lo\n";
  for (const CandidateTriple& c : candidates) {
    out << to_string(c.family) << ',' << c.m << ',' << c.start << ',' << decimal_down(c.t.lo(), digits) << ','
        << decimal_up(c.t.hi(), digits) << ',' << decimal_down(c.dist.lo(), digits) << '\n';
  }
}

}  // namespace v1sign
