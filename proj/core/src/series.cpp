#include "v1sign/series.hpp"

#include <algorithm>
#include <string>
#include <thread>

#include "v1sign/errors.hpp"

namespace v1sign {

TruncatedIntSeries::TruncatedIntSeries(std::size_t order) : coeffs_(order + 1) {}

TruncatedIntSeries::TruncatedIntSeries(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw InvalidInput("TruncatedIntSeries needs at least one coefficient");
  }
}

TruncatedIntSeries TruncatedIntSeries::one(std::size_t order) {
  TruncatedIntSeries s(order);
  s.coeffs_[0] = 1;
  return s;
}

TruncatedIntSeries TruncatedIntSeries::from_terms(
    std::size_t order, std::initializer_list<std::pair<std::size_t, long>> terms) {
  TruncatedIntSeries s(order);
  for (const auto& [degree, value] : terms) {
    if (degree <= order) {
      s.coeffs_[degree] += value;
    }
  }
  return s;
}

TruncatedIntSeries series_mul(const TruncatedIntSeries& a, const TruncatedIntSeries& b) {
  if (a.order() != b.order()) {
    throw ContractViolation("series_mul: order mismatch (" + std::to_string(a.order()) + " vs " +
                            std::to_string(b.order()) + ")");
  }
  const std::size_t order = a.order();
  // Factors coming from Pochhammer products are sparse; skip their zeros.
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i <= order; ++i) {
    if (sgn(a[i]) != 0) support.push_back(i);
  }
  std::vector<mpz_class> out(order + 1);
  for (std::size_t i : support) {
    for (std::size_t j = 0; i + j <= order; ++j) {
      if (sgn(b[j]) != 0) {
        mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
      }
    }
  }
  return TruncatedIntSeries(std::move(out));
}

TruncatedIntSeries series_inverse(const TruncatedIntSeries& a) {
  if (a[0] != 1) {
    throw InvalidInput("series_inverse: constant term must be 1, got " + a[0].get_str());
  }
  const std::size_t order = a.order();
  std::vector<std::size_t> support;
  for (std::size_t j = 1; j <= order; ++j) {
    if (sgn(a[j]) != 0) support.push_back(j);
  }
  std::vector<mpz_class> inv(order + 1);
  inv[0] = 1;
  mpz_class acc;
  for (std::size_t i = 1; i <= order; ++i) {
    acc = 0;
    for (std::size_t j : support) {
      if (j > i) break;
      mpz_addmul(acc.get_mpz_t(), a[j].get_mpz_t(), inv[i - j].get_mpz_t());
    }
    inv[i] = -acc;
  }
  return TruncatedIntSeries(std::move(inv));
}

TruncatedIntSeries pochhammer_neg_q2(std::size_t n, std::size_t order) {
  std::vector<mpz_class> p(order + 1);
  p[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t step = 2 * k;
    if (step > order) break;
    // multiply by (1 + q^step), highest degree first so each term is read once
    for (std::size_t i = order; i >= step; --i) {
      p[i] += p[i - step];
    }
  }
  return TruncatedIntSeries(std::move(p));
}

void divide_by_one_plus_power(std::vector<mpz_class>& s, std::size_t step) {
  for (std::size_t i = step; i < s.size(); ++i) {
    s[i] -= s[i - step];
  }
}

std::size_t outer_terms_needed(std::size_t max_n) noexcept {
  std::size_t n = 0;
  while ((n + 1) * (n + 2) / 2 <= max_n) ++n;
  return n;
}

namespace {

constexpr std::size_t triangular(std::size_t n) { return n * (n + 1) / 2; }

// Adds sum_{n=first}^{last} q^{T(n)} / (-q^2;q^2)_n into `out` (length max_n+1).
void accumulate_outer_range(std::size_t first, std::size_t last, std::size_t max_n,
                            std::vector<mpz_class>& out) {
  // The running inverse only ever needs degrees below max_n - T(n) + 1.
  std::vector<mpz_class> inv(max_n - triangular(first) + 1);
  inv[0] = 1;
  for (std::size_t k = 1; k <= first; ++k) {
    divide_by_one_plus_power(inv, 2 * k);
  }
  for (std::size_t n = first; n <= last; ++n) {
    const std::size_t shift = triangular(n);
    const std::size_t width = max_n - shift + 1;
    if (n > first) {
      inv.resize(width);
      divide_by_one_plus_power(inv, 2 * n);
    }
    for (std::size_t i = 0; i < width; ++i) {
      out[shift + i] += inv[i];
    }
  }
}

}  // namespace

std::vector<mpz_class> v1_coefficients(std::size_t max_n, const CoefficientOptions& options) {
  if (max_n > options.ceiling) {
    throw ResourceLimitError("v1_coefficients: max_n " + std::to_string(max_n) +
                                 " exceeds ceiling " + std::to_string(options.ceiling),
                             max_n, options.ceiling);
  }
  const std::size_t last = outer_terms_needed(max_n);
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(last + 1)));

  if (jobs == 1) {
    std::vector<mpz_class> out(max_n + 1);
    accumulate_outer_range(0, last, max_n, out);
    return out;
  }

  // Split the outer index range so each worker gets a similar share of the
  // (max_n - T(n)) inner work, then merge by exact addition in index order.
  std::vector<double> cost(last + 1);
  double total = 0;
  for (std::size_t n = 0; n <= last; ++n) {
    cost[n] = static_cast<double>(max_n - triangular(n) + 1);
    total += cost[n];
  }
  std::vector<std::pair<std::size_t, std::size_t>> chunks;
  std::size_t begin = 0;
  double running = 0;
  for (std::size_t n = 0; n <= last; ++n) {
    running += cost[n];
    const bool cut = running >= total * static_cast<double>(chunks.size() + 1) / jobs;
    if ((cut && chunks.size() + 1 < jobs) || n == last) {
      chunks.emplace_back(begin, n);
      begin = n + 1;
    }
  }

  std::vector<std::vector<mpz_class>> partial(chunks.size(), std::vector<mpz_class>(max_n + 1));
  std::vector<std::jthread> workers;
  workers.reserve(chunks.size());
  for (std::size_t w = 0; w < chunks.size(); ++w) {
    workers.emplace_back([&, w] {
      accumulate_outer_range(chunks[w].first, chunks[w].second, max_n, partial[w]);
    });
  }
  workers.clear();  // joins

  std::vector<mpz_class> out = std::move(partial.front());
  for (std::size_t w = 1; w < partial.size(); ++w) {
    for (std::size_t i = 0; i <= max_n; ++i) out[i] += partial[w][i];
  }
  return out;
}

}  // namespace v1sign
