#pragma once

// Structured reports for every command.  Each function returns the report
// as pretty-printed JSON text; integers are written as decimal strings so
// no value is ever rounded.

#include <cstdint>
#include <string>

#include "nilcantor/dynamics.hpp"
#include "nilcantor/oracle.hpp"
#include "nilcantor/towers.hpp"

namespace nilcantor::report {

std::string tool_version();

std::string spectrum(const ChainSpec& chain, Level depth, std::uint64_t prime_bound);
std::string discriminant(const ChainSpec& chain, Level level, Level depth, const ClosureOptions& options = {});
std::string wildness(const ChainSpec& chain, Level max_cylinder, Level max_depth);
std::string freeness(const ChainSpec& chain, Level cylinder, std::uint64_t radius, Level max_depth);

/// Arguments for the oracle subtargets; unused fields are ignored.
struct OracleRequest {
  std::string target;  ///< core | relative-core | fixing-scan | coset-partition | equivalence
  std::optional<Box> box;
  std::optional<Box> outer;
  std::optional<Box> inner;
  std::optional<Element> element;
  std::optional<ChainSpec> chain;
  Level level = 1;
  Level depth = 1;
};
std::string oracle_check(const OracleRequest& request, const nilcantor::oracle::OracleBudget& budget);

struct ReproduceOptions {
  std::uint64_t count = 5;    ///< cor16
  std::uint64_t bound = 200;  ///< cor16
};
/// ex41, ex42, thm13, thm15 or cor16.
std::string reproduce(const std::string& name, const ReproduceOptions& options = {});

}  // namespace nilcantor::report
