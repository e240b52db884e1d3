#include "vn/builder.hpp"

#include <algorithm>

#include "vn/errors.hpp"

namespace vn {

namespace {

std::string port_name(const std::string& vn_name, const char* base) {
  return vn_name.empty() ? base : vn_name + "." + base;
}

}  // namespace

NeuronId NetworkBuilder::add_neuron(std::int64_t threshold,
                                    std::int64_t reset_state) {
  auto id = static_cast<NeuronId>(neurons_.size());
  neurons_.push_back({id, threshold, reset_state});
  return id;
}

void NetworkBuilder::add_synapse(NeuronId pre, NeuronId post, Dyadic weight,
                                 int delay) {
  synapses_.push_back({pre, post, weight, delay});
}

void NetworkBuilder::add_port(PortDir dir, std::string name,
                              std::vector<NeuronId> neurons) {
  ports_.push_back({dir, std::move(name), std::move(neurons)});
}

Network NetworkBuilder::take() {
  return Network(std::move(neurons_), std::move(synapses_), std::move(ports_));
}

VirtualNeuronHandle add_virtual_neuron(NetworkBuilder& builder,
                                       const PrecisionVector& precision,
                                       int inject_step, std::string name) {
  if (precision.pos_int < 0 || precision.pos_frac < 0 || precision.neg_int < 0 ||
      precision.neg_frac < 0)
    throw ArgumentError("negative bit count in precision vector");
  const int max_p = precision.max_bits();
  if (max_p == 0)
    throw ArgumentError("precision vector must provide at least one bit");
  if (inject_step < 0) throw ArgumentError("inject step must be >= 0");

  VirtualNeuronHandle vn;
  vn.precision = precision;
  vn.inject_step = inject_step;
  vn.ready_step = inject_step + max_p + 2;
  vn.name = name;

  auto emit_rail = [&](int int_bits, int frac_bits) {
    RailHandle rail;
    rail.int_bits = int_bits;
    rail.frac_bits = frac_bits;
    const int p = int_bits + frac_bits;
    if (p == 0) return rail;

    for (int i = 0; i < p; ++i) rail.x.push_back(builder.add_neuron(0));
    for (int i = 0; i < p; ++i) rail.y.push_back(builder.add_neuron(0));

    // Bit groups, least significant first. Group 0 sees no carry-in and gets
    // two neurons; every later group gets the full threshold-0/1/2 triple.
    for (int g = 0; g <= p; ++g) {
      std::vector<NeuronId> group;
      group.push_back(builder.add_neuron(0));
      group.push_back(builder.add_neuron(1));
      if (g > 0) group.push_back(builder.add_neuron(2));
      rail.groups.push_back(std::move(group));
    }

    for (int i = 0; i <= p; ++i) rail.z.push_back(builder.add_neuron(0));

    const Dyadic one(1), minus_one(-1);
    for (int i = 0; i < p; ++i) {
      // Inputs of significance i reach group i after i+1 steps, which lines
      // them up with the carry rippling in from below.
      NeuronId xi = rail.x[p - 1 - i];
      NeuronId yi = rail.y[p - 1 - i];
      for (NeuronId g : rail.groups[i]) {
        builder.add_synapse(xi, g, one, i + 1);
        builder.add_synapse(yi, g, one, i + 1);
      }
      // The threshold-1 neuron is the carry: it fires only when the group's
      // input sum reaches 2.
      for (NeuronId g : rail.groups[i + 1])
        builder.add_synapse(rail.groups[i][1], g, one, 1);
    }
    for (int i = 0; i <= p; ++i) {
      // +1 from thresholds 0 and 2, -1 from threshold 1 leaves exactly the
      // sum bit; the delay schedule lands every output at the same step.
      const auto& group = rail.groups[i];
      NeuronId zi = rail.z[p - i];
      int delay = max_p - i + 1;
      builder.add_synapse(group[0], zi, one, delay);
      builder.add_synapse(group[1], zi, minus_one, delay);
      if (group.size() > 2) builder.add_synapse(group[2], zi, one, delay);
    }
    return rail;
  };

  vn.pos = emit_rail(precision.pos_int, precision.pos_frac);
  vn.neg = emit_rail(precision.neg_int, precision.neg_frac);

  if (!vn.pos.empty()) {
    builder.add_port(PortDir::in, port_name(name, "X+"), vn.pos.x);
    builder.add_port(PortDir::in, port_name(name, "Y+"), vn.pos.y);
    builder.add_port(PortDir::out, port_name(name, "Z+"), vn.pos.z);
  }
  if (!vn.neg.empty()) {
    builder.add_port(PortDir::in, port_name(name, "X-"), vn.neg.x);
    builder.add_port(PortDir::in, port_name(name, "Y-"), vn.neg.y);
    builder.add_port(PortDir::out, port_name(name, "Z-"), vn.neg.z);
  }
  return vn;
}

std::pair<Network, VirtualNeuronHandle> build_adder(const PrecisionVector& p) {
  NetworkBuilder builder;
  VirtualNeuronHandle vn = add_virtual_neuron(builder, p, 0);
  return {builder.take(), std::move(vn)};
}

CompositionGraph::VnIndex CompositionGraph::add_vn(
    const PrecisionVector& precision, int inject_step, std::string name) {
  for (const auto& existing : vns_)
    if (existing.name == name)
      throw CompositionError("duplicate virtual neuron name '" + name + "'");
  vns_.push_back(add_virtual_neuron(builder_, precision, inject_step,
                                    std::move(name)));
  port_fed_.resize(vns_.size() * 4, 0);
  return vns_.size() - 1;
}

void CompositionGraph::wire(VnIndex producer, VnIndex consumer, InPort port,
                            int weight, bool swap_rails, ConnectOptions opts) {
  if (producer >= vns_.size() || consumer >= vns_.size())
    throw CompositionError("unknown virtual neuron index");
  if (producer == consumer)
    throw CompositionError("virtual neuron cannot feed itself");
  if (weight != 0 && weight != 1)
    throw CompositionError("edge weight must be 0 or 1");
  const auto& from = vns_[producer];
  const auto& to = vns_[consumer];
  if (to.inject_step != from.ready_step + 1)
    throw CompositionError(
        "schedule mismatch: consumer expects inputs at step " +
        std::to_string(to.inject_step) + " but producer is ready at step " +
        std::to_string(from.ready_step));

  auto wire_rail = [&](const RailHandle& src, const RailHandle& dst,
                       const std::vector<NeuronId>& dst_port, Rail dst_rail) {
    if (src.empty()) return;
    if (dst.empty())
      throw CompositionError("producer rail has no matching consumer rail");
    const bool carry_fits = dst.int_bits >= src.int_bits + 1;
    if (!carry_fits && !(opts.truncate_carry && dst.int_bits >= src.int_bits))
      throw CompositionError(
          "consumer integer width " + std::to_string(dst.int_bits) +
          " cannot hold producer output width " +
          std::to_string(src.int_bits + 1) + " (set truncate_carry to drop it)");
    if (dst.frac_bits < src.frac_bits)
      throw CompositionError("consumer fraction width " +
                             std::to_string(dst.frac_bits) +
                             " narrower than producer's " +
                             std::to_string(src.frac_bits));
    std::size_t flag = consumer * 4 + (port == InPort::x ? 0 : 2) +
                       (dst_rail == Rail::neg ? 1 : 0);
    if (port_fed_[flag])
      throw CompositionError("consumer port already fed on that rail");
    port_fed_[flag] = 1;

    for (std::size_t j = 0; j < src.z.size(); ++j) {
      int significance = src.int_bits - static_cast<int>(j);
      if (significance == src.int_bits && !carry_fits) continue;  // dropped carry
      std::size_t jc = static_cast<std::size_t>(dst.int_bits - 1 - significance);
      builder_.add_synapse(src.z[j], dst_port[jc], Dyadic(weight), 1);
    }
  };

  const RailHandle& to_pos = to.rail(Rail::pos);
  const RailHandle& to_neg = to.rail(Rail::neg);
  auto& pos_port = port == InPort::x ? to_pos.x : to_pos.y;
  auto& neg_port = port == InPort::x ? to_neg.x : to_neg.y;
  if (!swap_rails) {
    wire_rail(from.pos, to_pos, pos_port, Rail::pos);
    wire_rail(from.neg, to_neg, neg_port, Rail::neg);
  } else {
    wire_rail(from.pos, to_neg, neg_port, Rail::neg);
    wire_rail(from.neg, to_pos, pos_port, Rail::pos);
  }
}

void CompositionGraph::connect(VnIndex a, VnIndex b, VnIndex c,
                               ConnectOptions opts) {
  wire(a, c, InPort::x, 1, false, opts);
  wire(b, c, InPort::y, 1, false, opts);
}

void CompositionGraph::connect_weighted(VnIndex producer, VnIndex consumer,
                                        InPort port, int weight,
                                        ConnectOptions opts) {
  wire(producer, consumer, port, weight, false, opts);
}

void CompositionGraph::connect_swapped(VnIndex producer, VnIndex consumer,
                                       InPort port, ConnectOptions opts) {
  wire(producer, consumer, port, 1, true, opts);
}

Network CompositionGraph::take_network() { return builder_.take(); }

AdderChain build_adder_chain(const PrecisionVector& p) {
  CompositionGraph g;
  auto a = g.add_vn(p, 0, "a");
  auto b = g.add_vn(p, 0, "b");
  auto c = g.add_vn(p, g.vn(a).ready_step + 1, "c");
  // The leaves add their input to zero, so their carry bit never fires and
  // truncating it is exact.
  g.connect(a, b, c, {.truncate_carry = true});
  AdderChain chain;
  chain.a = g.vn(a);
  chain.b = g.vn(b);
  chain.c = g.vn(c);
  chain.net = g.take_network();
  return chain;
}

std::pair<std::size_t, std::size_t> structural_counts(const Network& net) {
  return {net.neuron_count(), net.synapse_count()};
}

}  // namespace vn
