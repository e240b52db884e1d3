#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "vn/builder.hpp"
#include "vn/snn.hpp"

namespace vn {

/// Aggregate energy model for a spiking run. The default is calibrated so
/// that the mean 16-bit chain addition measured by sample_chain_spikes costs
/// 23 nJ; see that function for the counting scope.
struct EnergyModel {
  double e_spike_j = kDefaultESpikeJ;
  double p_idle_neuron_w = 0.0;
  double p_idle_synapse_w = 0.0;
  double step_period_s = 50e-9;  // 20 MHz step clock

  static constexpr double kCalibrationEnergyJ = 23e-9;
  static constexpr double kCalibrationMeanSpikes = 80.0;
  static constexpr double kDefaultESpikeJ =
      kCalibrationEnergyJ / kCalibrationMeanSpikes;
};

struct SpikeCounts {
  std::uint64_t total = 0;
  std::map<NeuronId, std::uint64_t> per_neuron;
};

SpikeCounts count_spikes(const SpikeTrace& trace);

struct RunMetrics {
  std::uint64_t total_spikes = 0;
  std::map<NeuronId, std::uint64_t> per_neuron;
  int steps = 0;
  double energy_j = 0.0;
  double power_w = 0.0;  // energy / (steps * step_period); 0 when undefined
};

/// energy = spikes * e_spike + steps * period * (neurons * p_idle_neuron +
/// synapses * p_idle_synapse).
RunMetrics estimate_energy(const SpikeTrace& trace, const Network& net,
                           const EnergyModel& model);

struct ComplexityRow {
  int precision = 0;
  std::uint64_t neurons = 0;
  std::uint64_t synapses = 0;
  int steps = 0;
};

/// Builds positive-integer adders for P = 1, 2, 4, ... up to max_p and
/// reports their measured sizes and ready steps.
std::vector<ComplexityRow> complexity_table(int max_p);

/// Spike statistics of the three-virtual-neuron addition arrangement over
/// uniformly random dual-rail input pairs.
///
/// counted_mean excludes the consumer's input-port neurons: their firings
/// replay the producers' output spikes one step later, an artifact of
/// composing port-to-port, so counting them would bill each transmitted bit
/// twice. raw_mean keeps every event.
struct ChainSpikeStats {
  PrecisionVector precision;
  int cases = 0;
  std::uint64_t seed = 0;
  double raw_mean = 0.0;
  double counted_mean = 0.0;
  int steps = 0;  // horizon of each run
};

ChainSpikeStats sample_chain_spikes(const PrecisionVector& p, int cases,
                                    std::uint64_t seed);

/// Mean set-bit count over `samples` uniformly random rail values of the
/// given width (the per-value spike cost of pure encoding).
double mean_set_bits(int rail_bits, int samples, std::uint64_t seed);

}  // namespace vn
