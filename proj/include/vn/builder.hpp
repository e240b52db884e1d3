#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "vn/codec.hpp"
#include "vn/handle.hpp"
#include "vn/snn.hpp"

namespace vn {

/// Accumulates neurons, synapses and ports, then freezes them into a Network.
class NetworkBuilder {
 public:
  NeuronId add_neuron(std::int64_t threshold, std::int64_t reset_state = -1);
  void add_synapse(NeuronId pre, NeuronId post, Dyadic weight, int delay);
  void add_port(PortDir dir, std::string name, std::vector<NeuronId> neurons);

  std::size_t neuron_count() const { return neurons_.size(); }
  Network take();

 private:
  std::vector<NeuronSpec> neurons_;
  std::vector<SynapseSpec> synapses_;
  std::vector<Port> ports_;
};

/// Emits one virtual neuron into the builder: per nonempty rail, P input
/// neurons for X and for Y, P+1 bit groups, and P+1 output neurons, wired as
/// a ripple-carry adder whose outputs all fire at inject_step + max(P+,P-)+2.
/// Ports are registered as [name.]X+/X-/Y+/Y-/Z+/Z-.
VirtualNeuronHandle add_virtual_neuron(NetworkBuilder& builder,
                                       const PrecisionVector& precision,
                                       int inject_step, std::string name = "");

/// A stand-alone adder. The handle's inject step is 0.
std::pair<Network, VirtualNeuronHandle> build_adder(const PrecisionVector& p);

struct ConnectOptions {
  /// Permit dropping the producer's carry bit so equal-precision virtual
  /// neurons can be chained. Only safe when the producer cannot carry.
  bool truncate_carry = false;
};

/// Grows a feed-forward graph of virtual neurons inside one Network.
/// Producers connect to consumer ports with unit-delay synapses of weight
/// 0 or 1, one bit line per matching significance.
class CompositionGraph {
 public:
  using VnIndex = std::size_t;

  /// Adds a virtual neuron scheduled to receive its inputs at inject_step.
  VnIndex add_vn(const PrecisionVector& precision, int inject_step,
                 std::string name);

  const VirtualNeuronHandle& vn(VnIndex i) const { return vns_.at(i); }
  std::size_t vn_count() const { return vns_.size(); }

  /// a and b feed c's X and Y ports with weight-1 bit lines.
  void connect(VnIndex a, VnIndex b, VnIndex c, ConnectOptions opts = {});

  /// Single edge with a uniform bit-line weight of 0 or 1. Weight 0 emits
  /// zero-weight synapses, so the port reads 0 whatever the producer holds.
  void connect_weighted(VnIndex producer, VnIndex consumer, InPort port,
                        int weight, ConnectOptions opts = {});

  /// Rail-crossed edge: producer Z+ drives the consumer's negative rail and
  /// Z- the positive rail. Requires symmetric precision on both ends.
  void connect_swapped(VnIndex producer, VnIndex consumer, InPort port,
                       ConnectOptions opts = {});

  /// Freezes the network. The graph must not be used afterwards.
  Network take_network();

  const std::vector<VirtualNeuronHandle>& handles() const { return vns_; }

 private:
  void wire(VnIndex producer, VnIndex consumer, InPort port, int weight,
            bool swap_rails, ConnectOptions opts);

  NetworkBuilder builder_;
  std::vector<VirtualNeuronHandle> vns_;
  std::vector<std::uint8_t> port_fed_;  // 4 flags per vn: X+,X-,Y+,Y-
};

/// The three-virtual-neuron arrangement used by the verification harnesses:
/// two leaves at precision p add their single inputs to zero, and an equal-
/// precision consumer (carry truncated, which is lossless here) adds the two
/// results. X goes to a's X port, Y to b's X port.
struct AdderChain {
  Network net;
  VirtualNeuronHandle a, b, c;
};
AdderChain build_adder_chain(const PrecisionVector& p);

/// Exact neuron / synapse cardinalities.
std::pair<std::size_t, std::size_t> structural_counts(const Network& net);

}  // namespace vn
