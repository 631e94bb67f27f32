#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diriop/tolerances.hpp"

namespace diriop::selftest {

struct Config {
  std::uint64_t seed = 20240801;
  double rho = 0.9;     // oracle sampling radius
  int order = 512;      // oracle truncation order
  double map_eq_eps = tol::map_eq;
};

struct PropertyResult {
  std::string name;
  int checks = 0;
  int failures = 0;
  int skipped = 0;
  bool passed() const { return failures == 0; }
};

/// Runs every module invariant with the configured seed. Oracle-backed checks
/// that cannot reach their tolerance at the configured truncation are counted
/// as skipped, not failed.
std::vector<PropertyResult> run_all(const Config& cfg = {});

}  // namespace diriop::selftest
