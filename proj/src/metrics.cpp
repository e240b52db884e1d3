#include "vn/metrics.hpp"

#include <bit>
#include <random>

#include "vn/codec.hpp"
#include "vn/errors.hpp"

namespace vn {

SpikeCounts count_spikes(const SpikeTrace& trace) {
  SpikeCounts counts;
  counts.total = trace.events.size();
  for (const auto& ev : trace.events) ++counts.per_neuron[ev.neuron];
  return counts;
}

RunMetrics estimate_energy(const SpikeTrace& trace, const Network& net,
                           const EnergyModel& model) {
  if (model.e_spike_j < 0 || model.p_idle_neuron_w < 0 ||
      model.p_idle_synapse_w < 0 || model.step_period_s < 0)
    throw ArgumentError("energy model parameters must be non-negative");
  RunMetrics m;
  auto counts = count_spikes(trace);
  m.total_spikes = counts.total;
  m.per_neuron = std::move(counts.per_neuron);
  m.steps = trace.horizon;
  double window = m.steps * model.step_period_s;
  m.energy_j = static_cast<double>(m.total_spikes) * model.e_spike_j +
               window * (static_cast<double>(net.neuron_count()) *
                             model.p_idle_neuron_w +
                         static_cast<double>(net.synapse_count()) *
                             model.p_idle_synapse_w);
  m.power_w = window > 0 ? m.energy_j / window : 0.0;
  return m;
}

std::vector<ComplexityRow> complexity_table(int max_p) {
  if (max_p < 1) throw ArgumentError("max precision must be >= 1");
  std::vector<ComplexityRow> rows;
  for (int p = 1; p <= max_p; p *= 2) {
    auto [net, vn] = build_adder({p, 0, 0, 0});
    auto [neurons, synapses] = structural_counts(net);
    rows.push_back({p, neurons, synapses, vn.ready_step - vn.inject_step});
  }
  return rows;
}

namespace {

// Uniform rail patterns straight from the engine's output bits; rail widths
// are powers-of-two ranges so masking is exactly uniform.
std::uint64_t draw_bits(std::mt19937_64& gen, int bits) {
  if (bits == 0) return 0;
  return gen() & (~0ull >> (64 - bits));
}

BitVector pattern(std::uint64_t value, int int_bits, int frac_bits) {
  BitVector out;
  out.int_bits = int_bits;
  int width = int_bits + frac_bits;
  out.bits.resize(width);
  for (int i = 0; i < width; ++i) out.bits[i] = value >> (width - 1 - i) & 1;
  return out;
}

}  // namespace

ChainSpikeStats sample_chain_spikes(const PrecisionVector& p, int cases,
                                    std::uint64_t seed) {
  if (cases < 1) throw ArgumentError("need at least one case");
  AdderChain chain = build_adder_chain(p);

  // Spikes of the consumer's input-port neurons replay a.z/b.z events.
  std::vector<std::uint8_t> relay(chain.net.neuron_count(), 0);
  for (const auto& rail : {chain.c.pos, chain.c.neg}) {
    for (NeuronId id : rail.x) relay[id] = 1;
    for (NeuronId id : rail.y) relay[id] = 1;
  }

  std::mt19937_64 gen(seed);
  std::uint64_t raw_total = 0, counted_total = 0;
  for (int i = 0; i < cases; ++i) {
    Stimulus stim;
    append_stimulus(stim, chain.a, InPort::x,
                    pattern(draw_bits(gen, p.pos_bits()), p.pos_int, p.pos_frac),
                    pattern(draw_bits(gen, p.neg_bits()), p.neg_int, p.neg_frac));
    append_stimulus(stim, chain.b, InPort::x,
                    pattern(draw_bits(gen, p.pos_bits()), p.pos_int, p.pos_frac),
                    pattern(draw_bits(gen, p.neg_bits()), p.neg_int, p.neg_frac));
    SpikeTrace trace = simulate(chain.net, stim, chain.c.ready_step);
    raw_total += trace.events.size();
    for (const auto& ev : trace.events)
      if (!relay[ev.neuron]) ++counted_total;
  }

  ChainSpikeStats stats;
  stats.precision = p;
  stats.cases = cases;
  stats.seed = seed;
  stats.raw_mean = static_cast<double>(raw_total) / cases;
  stats.counted_mean = static_cast<double>(counted_total) / cases;
  stats.steps = chain.c.ready_step;
  return stats;
}

double mean_set_bits(int rail_bits, int samples, std::uint64_t seed) {
  if (rail_bits < 1 || rail_bits > 63) throw ArgumentError("bad rail width");
  if (samples < 1) throw ArgumentError("need at least one sample");
  std::mt19937_64 gen(seed);
  std::uint64_t total = 0;
  for (int i = 0; i < samples; ++i)
    total += static_cast<std::uint64_t>(
        std::popcount(draw_bits(gen, rail_bits)));
  return static_cast<double>(total) / samples;
}

}  // namespace vn
