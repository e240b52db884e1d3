#include <doctest.h>

#include "vn/builder.hpp"
#include "vn/codec.hpp"
#include "vn/errors.hpp"
#include "vn/metrics.hpp"

using namespace vn;

TEST_CASE("count_spikes totals and per-neuron histogram") {
  CHECK(count_spikes(SpikeTrace{}).total == 0);

  SpikeTrace t;
  t.events = {{0, 1}, {0, 2}, {3, 1}};
  t.horizon = 3;
  auto counts = count_spikes(t);
  CHECK(counts.total == 3);
  CHECK(counts.per_neuron.at(1) == 2);
  CHECK(counts.per_neuron.at(2) == 1);
}

TEST_CASE("the worked two-bit addition spikes nine times") {
  // Walk-through enumeration: three set input bits, the bottom group pair,
  // the middle pair, the top threshold-0 neuron, and z2.
  auto [net, vn] = build_adder({2, 0, 0, 0});
  Stimulus stim = stimulus_for(vn, InPort::x, {Dyadic(3), Dyadic(0)});
  auto more = stimulus_for(vn, InPort::y, {Dyadic(1), Dyadic(0)});
  stim.injections.insert(stim.injections.end(), more.injections.begin(),
                         more.injections.end());
  auto counts = count_spikes(simulate(net, stim, vn.ready_step));
  CHECK(counts.total == 3 + 2 + 2 + 1 + 1);
}

TEST_CASE("energy estimate formula and linearity") {
  auto [net, vn] = build_adder({2, 0, 0, 0});
  Stimulus stim = stimulus_for(vn, InPort::x, {Dyadic(3), Dyadic(0)});
  auto trace = simulate(net, stim, vn.ready_step);

  EnergyModel model;
  model.e_spike_j = 2e-10;
  model.p_idle_neuron_w = 0;
  model.p_idle_synapse_w = 0;
  auto m = estimate_energy(trace, net, model);
  CHECK(m.total_spikes == count_spikes(trace).total);
  CHECK(m.energy_j == doctest::Approx(2e-10 * m.total_spikes));

  EnergyModel doubled = model;
  doubled.e_spike_j *= 2;
  CHECK(estimate_energy(trace, net, doubled).energy_j ==
        doctest::Approx(2 * m.energy_j));

  EnergyModel idle = model;
  idle.p_idle_neuron_w = 1e-6;
  idle.p_idle_synapse_w = 1e-7;
  auto mi = estimate_energy(trace, net, idle);
  double idle_j = trace.horizon * idle.step_period_s *
                  (net.neuron_count() * 1e-6 + net.synapse_count() * 1e-7);
  CHECK(mi.energy_j == doctest::Approx(m.energy_j + idle_j));
  CHECK(mi.power_w ==
        doctest::Approx(mi.energy_j / (trace.horizon * idle.step_period_s)));
}

TEST_CASE("zero spikes and zero idle cost zero joules") {
  EnergyModel model;
  model.p_idle_neuron_w = 0;
  model.p_idle_synapse_w = 0;
  auto m = estimate_energy(SpikeTrace{}, Network(), model);
  CHECK(m.energy_j == 0.0);
  CHECK(m.power_w == 0.0);
}

TEST_CASE("complexity table measures the doubling series") {
  auto rows = complexity_table(128);
  REQUIRE(rows.size() == 8);
  const std::uint64_t expected[8][3] = {
      {9, 12, 3},    {15, 24, 4},   {27, 48, 6},   {51, 96, 10},
      {99, 192, 18}, {195, 384, 34}, {387, 768, 66}, {771, 1536, 130}};
  int p = 1;
  for (std::size_t i = 0; i < rows.size(); ++i, p *= 2) {
    CHECK(rows[i].precision == p);
    CHECK(rows[i].neurons == expected[i][0]);
    CHECK(rows[i].synapses == expected[i][1]);
    CHECK(rows[i].steps == static_cast<int>(expected[i][2]));
    CHECK(rows[i].neurons == static_cast<std::uint64_t>(6 * p + 3));
    CHECK(rows[i].synapses == static_cast<std::uint64_t>(12 * p));
    CHECK(rows[i].steps == p + 2);
  }

  auto one = complexity_table(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].neurons == 9);
  CHECK_THROWS_AS(complexity_table(0), ArgumentError);
}

TEST_CASE("encoding cost averages half the rail width") {
  CHECK(mean_set_bits(8, 10000, 11) == doctest::Approx(4.0).epsilon(0.05));
  CHECK(mean_set_bits(16, 10000, 12) == doctest::Approx(8.0).epsilon(0.05));
}

TEST_CASE("chain spike sampling is seed-deterministic") {
  auto a = sample_chain_spikes({4, 4, 4, 4}, 50, 9);
  auto b = sample_chain_spikes({4, 4, 4, 4}, 50, 9);
  CHECK(a.counted_mean == b.counted_mean);
  CHECK(a.raw_mean == b.raw_mean);
  CHECK(a.steps == 21);
  CHECK(a.raw_mean > a.counted_mean);  // relay spikes exist
}

TEST_CASE("default model reproduces the calibration aggregate") {
  EnergyModel model;
  CHECK(model.e_spike_j == doctest::Approx(23e-9 / 80.0));
  auto stats = sample_chain_spikes({4, 4, 4, 4}, 200, 3);
  double energy = stats.counted_mean * model.e_spike_j;
  CHECK(energy == doctest::Approx(23e-9).epsilon(0.05));
}
