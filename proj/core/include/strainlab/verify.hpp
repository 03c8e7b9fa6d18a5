#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strainlab/field.hpp"

namespace strainlab {

struct CheckLine {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool must_exceed = false;  // negative controls pass when value > tolerance
  bool pass() const { return must_exceed ? value > tolerance : value <= tolerance; }
};

/// S plus a constant multiple of the identity, a negative control for the
/// trace-free cubic identities.
SymTensorField add_trace(const SymTensorField& s);

/// Identity and property checks on random band-limited strain fields
/// (band n/4) drawn from `seed`.
std::vector<CheckLine> run_verify_suite(std::uint64_t seed, int n, int fields = 3);

/// Fixed-width table, one line per check.
std::string format_check_table(const std::vector<CheckLine>& lines);

}  // namespace strainlab
