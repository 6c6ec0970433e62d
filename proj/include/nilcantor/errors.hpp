#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilcantor {

/// A precondition or well-formedness rule was violated by the caller.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed a configured resource cap.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t cap)
      : std::runtime_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}

  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t cap_;
};

/// The question cannot be settled from the available schedule data.
class UndecidableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nilcantor
