#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "v1sign/enclosure.hpp"

namespace v1sign {

/// A caller broke an operation's precondition (mismatched orders, uncovered ranges).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Input outside the accepted domain (non-unit constant term, delta >= 1/2, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested work exceeds a configured ceiling.
class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(const std::string& what, std::size_t requested, std::size_t ceiling)
      : std::runtime_error(what), requested_(requested), ceiling_(ceiling) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t ceiling() const noexcept { return ceiling_; }

 private:
  std::size_t requested_;
  std::size_t ceiling_;
};

/// A certified computation could not reach the width or decision it needed.
/// Carries the best enclosure obtained, when there is one.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what, std::optional<Enclosure> best = std::nullopt)
      : std::runtime_error(what), best_(std::move(best)) {}

  const std::optional<Enclosure>& best() const noexcept { return best_; }

 private:
  std::optional<Enclosure> best_;
};

}  // namespace v1sign
