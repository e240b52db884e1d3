#pragma once

#include <string>
#include <vector>

#include "vn/snn.hpp"

namespace vn {

/// Bit counts per rail: (positive integer, positive fraction, negative
/// integer, negative fraction). P+ = pos_int + pos_frac, P- likewise.
struct PrecisionVector {
  int pos_int = 0;
  int pos_frac = 0;
  int neg_int = 0;
  int neg_frac = 0;

  int pos_bits() const { return pos_int + pos_frac; }
  int neg_bits() const { return neg_int + neg_frac; }
  int max_bits() const { return pos_bits() > neg_bits() ? pos_bits() : neg_bits(); }
  bool symmetric() const { return pos_int == neg_int && pos_frac == neg_frac; }

  std::string to_string() const;                       // "2,2,2,2"
  static PrecisionVector parse(std::string_view csv);  // throws ArgumentError

  friend bool operator==(const PrecisionVector&, const PrecisionVector&) = default;
};

enum class Rail { pos, neg };
enum class InPort { x, y };

/// One rail's slice of a compiled virtual neuron.
struct RailHandle {
  int int_bits = 0;
  int frac_bits = 0;
  std::vector<NeuronId> x;  // input ports, MSB first, width P
  std::vector<NeuronId> y;
  std::vector<NeuronId> z;  // output port, MSB first, width P + 1
  // Bit groups, least-significant group first; neurons ordered by threshold
  // 0, 1(, 2). Group 0 has two neurons, the rest three.
  std::vector<std::vector<NeuronId>> groups;

  int width() const { return int_bits + frac_bits; }
  bool empty() const { return width() == 0; }
};

/// A compiled virtual neuron inside a Network: where to inject its inputs,
/// where its outputs appear, and when.
struct VirtualNeuronHandle {
  PrecisionVector precision;
  RailHandle pos;
  RailHandle neg;
  int inject_step = 0;  // step at which input bits must arrive
  int ready_step = 0;   // inject_step + max(P+, P-) + 2
  std::string name;     // port prefix inside composed networks ("" when alone)

  const RailHandle& rail(Rail r) const { return r == Rail::pos ? pos : neg; }
  const std::vector<NeuronId>& in_port(Rail r, InPort p) const {
    const RailHandle& h = rail(r);
    return p == InPort::x ? h.x : h.y;
  }
};

}  // namespace vn
