#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vn/dyadic.hpp"

namespace vn {

using NeuronId = std::uint32_t;

/// Integrate-and-fire neuron with full state reset every step (zero leak).
/// The state at step t is reset_state plus whatever charge arrives at t; it
/// never carries over, whether the neuron fired or not.
struct NeuronSpec {
  NeuronId id = 0;
  std::int64_t threshold = 0;
  std::int64_t reset_state = -1;

  friend bool operator==(const NeuronSpec&, const NeuronSpec&) = default;
};

struct SynapseSpec {
  NeuronId pre = 0;
  NeuronId post = 0;
  Dyadic weight;
  int delay = 1;  // >= 1 time steps

  friend bool operator==(const SynapseSpec&, const SynapseSpec&) = default;
};

enum class PortDir { in, out };

/// Named, ordered neuron list; bit order is most-significant first.
struct Port {
  PortDir dir = PortDir::in;
  std::string name;
  std::vector<NeuronId> neurons;

  friend bool operator==(const Port&, const Port&) = default;
};

/// Immutable feed-forward spiking netlist. Construction validates that ids
/// are dense (id == index), synapse endpoints exist, delays are >= 1, and
/// input-port neuron lists are disjoint.
class Network {
 public:
  Network() = default;
  Network(std::vector<NeuronSpec> neurons, std::vector<SynapseSpec> synapses,
          std::vector<Port> ports);

  const std::vector<NeuronSpec>& neurons() const { return neurons_; }
  const std::vector<SynapseSpec>& synapses() const { return synapses_; }
  const std::vector<Port>& ports() const { return ports_; }

  std::size_t neuron_count() const { return neurons_.size(); }
  std::size_t synapse_count() const { return synapses_.size(); }

  /// nullptr when absent.
  const Port* find_port(std::string_view name) const;

 private:
  std::vector<NeuronSpec> neurons_;
  std::vector<SynapseSpec> synapses_;
  std::vector<Port> ports_;
};

struct Injection {
  int step = 0;  // >= 0
  NeuronId neuron = 0;
  Dyadic charge;
};

struct Stimulus {
  std::vector<Injection> injections;

  void inject(int step, NeuronId neuron, Dyadic charge = Dyadic(1)) {
    injections.push_back({step, neuron, charge});
  }
};

struct SpikeEvent {
  int step = 0;
  NeuronId neuron = 0;

  friend bool operator==(const SpikeEvent&, const SpikeEvent&) = default;
  friend auto operator<=>(const SpikeEvent&, const SpikeEvent&) = default;
};

/// Spike events of one run, sorted by (step, neuron), plus the last step
/// that was simulated.
struct SpikeTrace {
  std::vector<SpikeEvent> events;
  int horizon = 0;

  bool spiked(NeuronId neuron, int step) const;
  std::vector<NeuronId> neurons_at(int step) const;

  friend bool operator==(const SpikeTrace&, const SpikeTrace&) = default;
};

/// Runs the network for steps 0..horizon. Per step, every neuron's state is
/// reset_state + sum(arriving synaptic charge) + sum(external injections);
/// it spikes iff state >= threshold. Charges travel pre -> post and arrive
/// `delay` steps after the presynaptic spike.
SpikeTrace simulate(const Network& net, const Stimulus& stim, int horizon);

struct BitGroupResponse {
  int sum_bit = 0;
  int carry_bit = 0;

  friend bool operator==(const BitGroupResponse&, const BitGroupResponse&) = default;
};

/// Reference truth table of one ripple-carry bit group fed `input_sum` unit
/// charges (x bit + y bit + carry in, 0..3): sum = s mod 2, carry = s >= 2.
BitGroupResponse bit_group_response(int input_sum);

/// True when the synapse graph has no directed cycle.
bool is_feedforward(const Network& net);

}  // namespace vn
