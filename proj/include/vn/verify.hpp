#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vn/builder.hpp"
#include "vn/codec.hpp"

namespace vn {

struct VerifyFailure {
  std::string x, y;         // dual-rail inputs as text
  std::string expected;     // "pos,neg"
  std::string got;
  std::string detail;       // timing violations and the like
};

struct VerificationReport {
  std::uint64_t cases = 0;
  std::vector<VerifyFailure> failures;
  std::uint64_t seed = 0;
  double elapsed_s = 0.0;
  std::uint64_t timing_violations = 0;

  bool passed() const { return failures.empty() && timing_violations == 0; }
};

/// [2,2,2,2] / [4,4,4,4] / [8,8,8,8] for 8 / 16 / 32. Anything else throws.
PrecisionVector precision_for_bits(int bits);

/// Runs the three-virtual-neuron chain over every rail pattern combination
/// (2^(2 P+) * 2^(2 P-) cases) and checks each decoded output against native
/// rail-wise addition. Also asserts that output spikes land exactly on the
/// ready step. Failure capture stops after `max_failures`.
VerificationReport verify_exhaustive(const PrecisionVector& p,
                                     std::size_t max_failures = 16);

/// Same check over `samples` seeded uniform input pairs.
VerificationReport verify_sampled(const PrecisionVector& p,
                                  std::uint64_t samples, std::uint64_t seed,
                                  std::size_t max_failures = 16);

}  // namespace vn
