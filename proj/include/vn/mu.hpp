#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vn/builder.hpp"
#include "vn/codec.hpp"

namespace vn {

enum class FunctionKind { constant, successor, predecessor, negate, sum_tree };

std::string to_string(FunctionKind kind);

/// A function realized as a feed-forward composition of virtual neurons.
/// Runtime arguments go to the X ports of `inputs`; constants the circuit
/// depends on are pre-baked into base_stimulus.
struct FunctionCircuit {
  FunctionKind kind = FunctionKind::constant;
  Network network;
  std::vector<VirtualNeuronHandle> inputs;
  VirtualNeuronHandle output;
  std::vector<VirtualNeuronHandle> all_vns;
  Stimulus base_stimulus;
  int depth = 1;  // adder stages between the inputs and the output

  std::size_t vn_count() const { return all_vns.size(); }
};

/// C_k(x) = k: the k-holder feeds the output with weight-1 bit lines, the
/// x-holder with weight-0 lines.
FunctionCircuit build_constant(const DyadicValue& k, const PrecisionVector& p);

/// S(x) = x + 1. Requires at least one positive integer bit.
FunctionCircuit build_successor(const PrecisionVector& p);

/// pred(x) = x - 1, carried dual-rail: the positive rail holds x, the
/// negative rail -1. Requires at least one negative integer bit.
FunctionCircuit build_predecessor(const PrecisionVector& p);

/// neg(x): output rails are the input rails swapped. Requires a symmetric
/// precision vector.
FunctionCircuit build_negate(const PrecisionVector& p);

/// Balanced pairwise-reduction adder tree over n >= 2 inputs; rail precision
/// widens by one integer bit per level. A level's odd element passes through
/// an adder whose second port reads zero.
FunctionCircuit build_sum_tree(std::size_t n, const PrecisionVector& p);

/// Injects the arguments, simulates to the output-ready step, and decodes.
DyadicValue evaluate(const FunctionCircuit& circuit,
                     std::span<const DyadicValue> args);
DyadicValue evaluate(const FunctionCircuit& circuit, const DyadicValue& arg);

}  // namespace vn
