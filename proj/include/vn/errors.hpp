#pragma once

#include <stdexcept>
#include <string>

namespace vn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad call arguments (negative horizon, zero precision, s outside 0..3, ...).
struct ArgumentError : Error {
  using Error::Error;
};

/// Malformed network: dangling synapse endpoints, non-dense ids, delay < 1.
struct StructuralError : Error {
  using Error::Error;
};

/// A value does not fit the requested fixed-point rail (non-dyadic, too wide,
/// or on the wrong side of zero).
struct NotRepresentable : Error {
  using Error::Error;
};

/// Output-port spikes observed at a step other than the circuit's ready step.
struct TimingViolation : Error {
  using Error::Error;
};

/// Invalid wiring between virtual neurons (width or schedule mismatch).
struct CompositionError : Error {
  using Error::Error;
};

/// Unreadable netlist or trace text.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace vn
