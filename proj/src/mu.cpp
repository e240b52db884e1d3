#include "vn/mu.hpp"

#include <utility>

#include "vn/errors.hpp"

namespace vn {

namespace {

PrecisionVector widened(const PrecisionVector& p) {
  PrecisionVector w = p;
  if (p.pos_bits() > 0) ++w.pos_int;
  if (p.neg_bits() > 0) ++w.neg_int;
  return w;
}

void merge(Stimulus& into, Stimulus&& from) {
  into.injections.insert(into.injections.end(), from.injections.begin(),
                         from.injections.end());
}

/// Two leaves feeding one consumer, with the given bit-line weights. Shared
/// by the constant, successor and predecessor shapes.
FunctionCircuit two_input_stage(FunctionKind kind, const PrecisionVector& p,
                                const DyadicValue& fixed, int x_edge_weight) {
  CompositionGraph g;
  auto holder = g.add_vn(p, 0, "c0");
  auto arg = g.add_vn(p, 0, "c1");
  auto out = g.add_vn(widened(p), g.vn(holder).ready_step + 1, "out");
  g.connect_weighted(holder, out, InPort::x, 1);
  g.connect_weighted(arg, out, InPort::y, x_edge_weight);

  FunctionCircuit circ;
  circ.kind = kind;
  circ.base_stimulus = stimulus_for(g.vn(holder), InPort::x, fixed);
  circ.inputs = {g.vn(arg)};
  circ.output = g.vn(out);
  circ.all_vns = g.handles();
  circ.network = g.take_network();
  return circ;
}

}  // namespace

std::string to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::constant: return "constant";
    case FunctionKind::successor: return "successor";
    case FunctionKind::predecessor: return "predecessor";
    case FunctionKind::negate: return "negate";
    case FunctionKind::sum_tree: return "sum-tree";
  }
  return "?";
}

FunctionCircuit build_constant(const DyadicValue& k, const PrecisionVector& p) {
  return two_input_stage(FunctionKind::constant, p, k, 0);
}

FunctionCircuit build_successor(const PrecisionVector& p) {
  if (p.pos_int < 1)
    throw ArgumentError("successor needs a positive integer bit");
  return two_input_stage(FunctionKind::successor, p,
                         {Dyadic(1), Dyadic(0)}, 1);
}

FunctionCircuit build_predecessor(const PrecisionVector& p) {
  if (p.neg_int < 1)
    throw ArgumentError("predecessor needs a negative integer bit");
  return two_input_stage(FunctionKind::predecessor, p,
                         {Dyadic(0), Dyadic(-1)}, 1);
}

FunctionCircuit build_negate(const PrecisionVector& p) {
  if (!p.symmetric())
    throw ArgumentError("negation requires a symmetric precision vector");
  CompositionGraph g;
  auto arg = g.add_vn(p, 0, "c0");
  auto out = g.add_vn(widened(p), g.vn(arg).ready_step + 1, "out");
  g.connect_swapped(arg, out, InPort::x);

  FunctionCircuit circ;
  circ.kind = FunctionKind::negate;
  circ.inputs = {g.vn(arg)};
  circ.output = g.vn(out);
  circ.all_vns = g.handles();
  circ.network = g.take_network();
  return circ;
}

FunctionCircuit build_sum_tree(std::size_t n, const PrecisionVector& p) {
  if (n < 2) throw ArgumentError("sum tree needs at least two inputs");
  CompositionGraph g;
  std::vector<CompositionGraph::VnIndex> level;
  for (std::size_t i = 0; i < n; ++i)
    level.push_back(g.add_vn(p, 0, "in" + std::to_string(i)));

  PrecisionVector node_p = p;
  int depth = 0;
  while (level.size() > 1) {
    ++depth;
    node_p = widened(node_p);
    int next_inject = g.vn(level.front()).ready_step + 1;
    std::vector<CompositionGraph::VnIndex> next;
    for (std::size_t i = 0; i < level.size(); i += 2) {
      auto node = g.add_vn(node_p, next_inject,
                           "l" + std::to_string(depth) + "n" +
                               std::to_string(i / 2));
      if (i + 1 < level.size()) {
        g.connect(level[i], level[i + 1], node);
      } else {
        // Odd element: the node's Y port reads zero.
        g.connect_weighted(level[i], node, InPort::x, 1);
      }
      next.push_back(node);
    }
    level = std::move(next);
  }

  FunctionCircuit circ;
  circ.kind = FunctionKind::sum_tree;
  for (std::size_t i = 0; i < n; ++i) circ.inputs.push_back(g.vn(i));
  circ.output = g.vn(level.front());
  circ.all_vns = g.handles();
  circ.depth = depth;
  circ.network = g.take_network();
  return circ;
}

DyadicValue evaluate(const FunctionCircuit& circuit,
                     std::span<const DyadicValue> args) {
  if (args.size() != circuit.inputs.size())
    throw ArgumentError("circuit takes " +
                        std::to_string(circuit.inputs.size()) +
                        " arguments, got " + std::to_string(args.size()));
  Stimulus stim = circuit.base_stimulus;
  for (std::size_t i = 0; i < args.size(); ++i)
    merge(stim, stimulus_for(circuit.inputs[i], InPort::x, args[i]));
  SpikeTrace trace = simulate(circuit.network, stim, circuit.output.ready_step);
  return decode_output(circuit.output, trace);
}

DyadicValue evaluate(const FunctionCircuit& circuit, const DyadicValue& arg) {
  return evaluate(circuit, std::span(&arg, 1));
}

}  // namespace vn
