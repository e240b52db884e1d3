#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vn/dyadic.hpp"
#include "vn/handle.hpp"
#include "vn/snn.hpp"

namespace vn {

/// Fixed-point bit pattern, most-significant bit first. `int_bits` splits the
/// vector into integer and fraction halves.
struct BitVector {
  std::vector<std::uint8_t> bits;
  int int_bits = 0;

  int frac_bits() const { return static_cast<int>(bits.size()) - int_bits; }
  int width() const { return static_cast<int>(bits.size()); }
  bool any() const;
  std::uint64_t to_uint() const;  // width <= 63

  std::string to_string() const;  // "0011"

  friend bool operator==(const BitVector&, const BitVector&) = default;
};

/// Signed dyadic value split across two rails: a non-negative positive part
/// and a non-positive negative part. The rails are independent and never
/// canonicalized against each other; (1, -1) is a legitimate encoding of 0.
struct DyadicValue {
  Dyadic pos;  // >= 0
  Dyadic neg;  // <= 0

  Dyadic value() const { return pos + neg; }
  static DyadicValue from_strings(std::string_view pos_dec,
                                  std::string_view neg_dec);

  friend bool operator==(const DyadicValue&, const DyadicValue&) = default;
};

/// Encodes a non-negative dyadic as fixed-point binary.
/// Throws NotRepresentable when x is negative, non-dyadic at frac_bits, or
/// too wide for int_bits.
BitVector encode_rail(const Dyadic& x, int int_bits, int frac_bits);

/// Positional decode; sign is +1 or -1.
Dyadic decode_rail(const BitVector& bits, int sign);

/// Rail-wise encode of (pos, |neg|).
std::pair<BitVector, BitVector> encode_value(const DyadicValue& v,
                                             const PrecisionVector& p);

// ---- exact decimal text <-> bits (any width) ----

/// Parses a non-negative decimal into fixed-point bits; exact or throws.
BitVector bits_from_decimal(std::string_view decimal, int int_bits,
                            int frac_bits);

/// Exact decimal rendering of a bit pattern; sign -1 prefixes "-".
std::string decimal_from_bits(const BitVector& bits, int sign);

/// Exact signed sum of two decimal strings.
std::string add_decimal_strings(std::string_view a, std::string_view b);

/// A dual-rail value as exact decimal text ("1.75", "-5.25").
struct DualText {
  std::string pos = "0";
  std::string neg = "0";

  std::string to_string() const { return pos + "," + neg; }
};

/// Parses "pos,neg" (e.g. "0.75,-2.75"). A bare decimal is routed minimally:
/// negative input to the negative rail, positive to the positive rail.
DualText parse_dual(std::string_view text);

// ---- stimulus / readout against a compiled virtual neuron ----

/// One charge-1 injection per set bit at the handle's inject step, positive
/// rail then negative rail, MSB first onto the port's neuron lists.
Stimulus stimulus_for(const VirtualNeuronHandle& vn, InPort port,
                      const DyadicValue& v);

/// Bit-level variant used by the text pipeline. `neg_mag` holds |negative|.
void append_stimulus(Stimulus& stim, const VirtualNeuronHandle& vn, InPort port,
                     const BitVector& pos, const BitVector& neg_mag);

/// Reads the output ports at exactly the ready step. Any output spike at a
/// different step raises TimingViolation. Returns (pos bits, |neg| bits).
std::pair<BitVector, BitVector> decode_output_bits(const VirtualNeuronHandle& vn,
                                                   const SpikeTrace& trace);

/// decode_output_bits, then positional decode into a dual-rail value.
DyadicValue decode_output(const VirtualNeuronHandle& vn, const SpikeTrace& trace);

}  // namespace vn
