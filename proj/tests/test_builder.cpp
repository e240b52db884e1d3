#include <doctest.h>

#include <random>
#include <tuple>

#include "vn/builder.hpp"
#include "vn/codec.hpp"
#include "vn/errors.hpp"
#include "vn/netlist.hpp"

using namespace vn;

namespace {

DyadicValue run_adder(const Network& net, const VirtualNeuronHandle& vn,
                      const DyadicValue& x, const DyadicValue& y) {
  Stimulus stim = stimulus_for(vn, InPort::x, x);
  auto more = stimulus_for(vn, InPort::y, y);
  stim.injections.insert(stim.injections.end(), more.injections.begin(),
                         more.injections.end());
  return decode_output(vn, simulate(net, stim, vn.ready_step));
}

// Classic software ripple-carry adder over MSB-first bit vectors.
std::vector<std::uint8_t> ripple_carry(const std::vector<std::uint8_t>& a,
                                       const std::vector<std::uint8_t>& b) {
  std::vector<std::uint8_t> out(a.size() + 1, 0);
  int carry = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int s = a[a.size() - 1 - i] + b[b.size() - 1 - i] + carry;
    out[out.size() - 1 - i] = static_cast<std::uint8_t>(s & 1);
    carry = s >> 1;
  }
  out[0] = static_cast<std::uint8_t>(carry);
  return out;
}

}  // namespace

TEST_CASE("structural counts follow the published sizes") {
  auto [n1, v1] = build_adder({1, 0, 0, 0});
  CHECK(structural_counts(n1) == std::pair<std::size_t, std::size_t>{9, 12});
  CHECK(v1.ready_step == 3);

  auto [n128, v128] = build_adder({128, 0, 0, 0});
  CHECK(structural_counts(n128) ==
        std::pair<std::size_t, std::size_t>{771, 1536});
  CHECK(v128.ready_step == 130);

  auto [n8, v8] = build_adder({2, 2, 2, 2});
  CHECK(structural_counts(n8) == std::pair<std::size_t, std::size_t>{54, 96});
  CHECK(v8.ready_step == 6);

  CHECK(structural_counts(Network()) ==
        std::pair<std::size_t, std::size_t>{0, 0});
}

TEST_CASE("count formulas hold for every positive precision up to 128") {
  for (int p = 1; p <= 128; ++p) {
    auto [net, vn] = build_adder({p, 0, 0, 0});
    CHECK(net.neuron_count() == static_cast<std::size_t>(6 * p + 3));
    CHECK(net.synapse_count() == static_cast<std::size_t>(12 * p));
    CHECK(vn.ready_step == p + 2);
    CHECK(is_feedforward(net));
  }
}

TEST_CASE("an empty rail is simply omitted") {
  auto [net, vn] = build_adder({0, 0, 3, 1});
  CHECK(vn.pos.empty());
  CHECK(net.neuron_count() == 6 * 4 + 3);
  CHECK(net.find_port("X+") == nullptr);
  CHECK(net.find_port("X-") != nullptr);
  DyadicValue out = run_adder(net, vn, {Dyadic(0), Dyadic::scaled(-5, -1)},
                              {Dyadic(0), Dyadic(-2)});
  CHECK(out.neg.to_string() == "-4.5");
  CHECK(out.pos == Dyadic(0));

  CHECK_THROWS_AS(build_adder({0, 0, 0, 0}), ArgumentError);
}

TEST_CASE("handle shape: groups, ports and schedule") {
  auto [net, vn] = build_adder({3, 1, 2, 0});
  CHECK(vn.pos.groups.size() == 5);   // P+ + 1
  CHECK(vn.neg.groups.size() == 3);
  CHECK(vn.pos.groups[0].size() == 2);
  for (std::size_t g = 1; g < vn.pos.groups.size(); ++g)
    CHECK(vn.pos.groups[g].size() == 3);
  CHECK(vn.pos.z.size() == 5);
  CHECK(vn.neg.z.size() == 3);
  CHECK(vn.ready_step - vn.inject_step == vn.precision.max_bits() + 2);

  // Thresholds inside a group ascend 0,1,2; ports and outputs sit at 0.
  for (const auto& group : vn.pos.groups)
    for (std::size_t i = 0; i < group.size(); ++i)
      CHECK(net.neurons()[group[i]].threshold == static_cast<std::int64_t>(i));
  for (NeuronId id : vn.pos.x) CHECK(net.neurons()[id].threshold == 0);
  for (NeuronId id : vn.pos.z) CHECK(net.neurons()[id].threshold == 0);
  for (const auto& n : net.neurons()) CHECK(n.reset_state == -1);
}

TEST_CASE("adder equals a software ripple-carry adder bit for bit") {
  auto [net, vn] = build_adder({2, 1, 0, 0});
  for (std::uint64_t xa = 0; xa < 8; ++xa)
    for (std::uint64_t yb = 0; yb < 8; ++yb) {
      DyadicValue x{Dyadic::scaled(static_cast<std::int64_t>(xa), -1), Dyadic(0)};
      DyadicValue y{Dyadic::scaled(static_cast<std::int64_t>(yb), -1), Dyadic(0)};
      Stimulus stim = stimulus_for(vn, InPort::x, x);
      auto more = stimulus_for(vn, InPort::y, y);
      stim.injections.insert(stim.injections.end(), more.injections.begin(),
                             more.injections.end());
      auto trace = simulate(net, stim, vn.ready_step);
      auto [pos_bits, neg_bits] = decode_output_bits(vn, trace);
      auto expected = ripple_carry(encode_rail(x.pos, 2, 1).bits,
                                   encode_rail(y.pos, 2, 1).bits);
      CHECK(pos_bits.bits == expected);
    }
}

TEST_CASE("rail-wise sums are exact, exhaustively at 4+4 bits") {
  auto [net, vn] = build_adder({2, 2, 2, 2});
  for (std::uint64_t xp = 0; xp < 16; ++xp)
    for (std::uint64_t xn = 0; xn < 16; ++xn)
      for (std::uint64_t yp = 0; yp < 16; ++yp)
        for (std::uint64_t yn = 0; yn < 16; ++yn) {
          DyadicValue x{Dyadic::scaled(static_cast<std::int64_t>(xp), -2),
                        Dyadic::scaled(-static_cast<std::int64_t>(xn), -2)};
          DyadicValue y{Dyadic::scaled(static_cast<std::int64_t>(yp), -2),
                        Dyadic::scaled(-static_cast<std::int64_t>(yn), -2)};
          DyadicValue out = run_adder(net, vn, x, y);
          REQUIRE(out.pos == x.pos + y.pos);
          REQUIRE(out.neg == x.neg + y.neg);
        }
}

TEST_CASE("neuron ids are assigned in the documented deterministic order") {
  auto [net, vn] = build_adder({2, 0, 1, 0});
  // Positive rail first: X (MSB->LSB), Y, groups LSB->MSB, outputs MSB->LSB.
  CHECK(vn.pos.x == std::vector<NeuronId>{0, 1});
  CHECK(vn.pos.y == std::vector<NeuronId>{2, 3});
  CHECK(vn.pos.groups[0] == std::vector<NeuronId>{4, 5});
  CHECK(vn.pos.groups[1] == std::vector<NeuronId>{6, 7, 8});
  CHECK(vn.pos.groups[2] == std::vector<NeuronId>{9, 10, 11});
  CHECK(vn.pos.z == std::vector<NeuronId>{12, 13, 14});
  CHECK(vn.neg.x == std::vector<NeuronId>{15});

  auto [net2, vn2] = build_adder({2, 0, 1, 0});
  CHECK(structurally_equal(net, net2));
  CHECK(emit_netlist(net) == emit_netlist(net2));
}

TEST_CASE("composition: two adders feeding a wider third") {
  // 16-bit producers, 17-bit consumer; decoded output sums all four leaves.
  PrecisionVector p{4, 4, 4, 4};
  PrecisionVector wider{5, 4, 5, 4};
  CompositionGraph g;
  auto a = g.add_vn(p, 0, "a");
  auto b = g.add_vn(p, 0, "b");
  auto c = g.add_vn(wider, g.vn(a).ready_step + 1, "c");
  g.connect(a, b, c);
  auto ha = g.vn(a), hb = g.vn(b), hc = g.vn(c);
  Network net = g.take_network();
  CHECK(is_feedforward(net));

  std::mt19937_64 gen(5);
  for (int round = 0; round < 50; ++round) {
    auto draw = [&] {
      return DyadicValue{
          Dyadic::scaled(static_cast<std::int64_t>(gen() & 255), -4),
          Dyadic::scaled(-static_cast<std::int64_t>(gen() & 255), -4)};
    };
    DyadicValue x1 = draw(), x2 = draw(), y1 = draw(), y2 = draw();
    Stimulus stim;
    for (auto [h, port, v] :
         {std::tuple{&ha, InPort::x, x1}, std::tuple{&ha, InPort::y, x2},
          std::tuple{&hb, InPort::x, y1}, std::tuple{&hb, InPort::y, y2}}) {
      auto s = stimulus_for(*h, port, v);
      stim.injections.insert(stim.injections.end(), s.injections.begin(),
                             s.injections.end());
    }
    DyadicValue out = decode_output(hc, simulate(net, stim, hc.ready_step));
    CHECK(out.pos == x1.pos + x2.pos + y1.pos + y2.pos);
    CHECK(out.neg == x1.neg + x2.neg + y1.neg + y2.neg);
  }
}

TEST_CASE("composition rejects bad wiring") {
  PrecisionVector p{4, 4, 4, 4};
  SUBCASE("consumer narrower than the producer's output") {
    CompositionGraph g;
    auto a = g.add_vn(p, 0, "a");
    auto b = g.add_vn(p, 0, "b");
    auto c = g.add_vn(p, g.vn(a).ready_step + 1, "c");
    CHECK_THROWS_AS(g.connect(a, b, c, {.truncate_carry = false}),
                    CompositionError);
  }
  SUBCASE("schedule mismatch") {
    CompositionGraph g;
    auto a = g.add_vn(p, 0, "a");
    auto b = g.add_vn(p, 0, "b");
    auto c = g.add_vn({5, 4, 5, 4}, g.vn(a).ready_step + 2, "c");
    CHECK_THROWS_AS(g.connect(a, b, c), CompositionError);
  }
  SUBCASE("double feeding one port") {
    CompositionGraph g;
    auto a = g.add_vn(p, 0, "a");
    auto b = g.add_vn(p, 0, "b");
    auto c = g.add_vn({5, 4, 5, 4}, g.vn(a).ready_step + 1, "c");
    g.connect_weighted(a, c, InPort::x, 1);
    CHECK_THROWS_AS(g.connect_weighted(b, c, InPort::x, 1), CompositionError);
  }
  SUBCASE("self loop") {
    CompositionGraph g;
    auto a = g.add_vn(p, 0, "a");
    CHECK_THROWS_AS(g.connect_weighted(a, a, InPort::x, 1), CompositionError);
  }
  SUBCASE("fraction narrowing is never allowed") {
    CompositionGraph g;
    auto a = g.add_vn(p, 0, "a");
    auto c = g.add_vn({5, 3, 5, 3}, g.vn(a).ready_step + 1, "c");
    CHECK_THROWS_AS(g.connect_weighted(a, c, InPort::x, 1, {.truncate_carry = true}),
                    CompositionError);
  }
}

TEST_CASE("weighted edges gate a producer's contribution") {
  PrecisionVector p{4, 0, 0, 0};
  PrecisionVector wider{5, 0, 0, 0};
  for (int wa : {0, 1})
    for (int wb : {0, 1}) {
      CompositionGraph g;
      auto a = g.add_vn(p, 0, "a");
      auto b = g.add_vn(p, 0, "b");
      auto c = g.add_vn(wider, g.vn(a).ready_step + 1, "c");
      g.connect_weighted(a, c, InPort::x, wa);
      g.connect_weighted(b, c, InPort::y, wb);
      auto ha = g.vn(a), hb = g.vn(b), hc = g.vn(c);
      Network net = g.take_network();

      DyadicValue va{Dyadic(11), Dyadic(0)};
      DyadicValue vb{Dyadic(6), Dyadic(0)};
      Stimulus stim = stimulus_for(ha, InPort::x, va);
      auto more = stimulus_for(hb, InPort::x, vb);
      stim.injections.insert(stim.injections.end(), more.injections.begin(),
                             more.injections.end());
      DyadicValue out = decode_output(hc, simulate(net, stim, hc.ready_step));
      Dyadic expected = (wa ? va.pos : Dyadic(0)) + (wb ? vb.pos : Dyadic(0));
      CHECK(out.pos == expected);
    }
}

TEST_CASE("random composition trees compute weighted sums of their leaves") {
  std::mt19937_64 gen(271828);
  for (int round = 0; round < 25; ++round) {
    // A chain of adder stages: start with leaves and keep pairing survivors
    // with fresh leaves or each other, up to 15 virtual neurons.
    struct Node {
      CompositionGraph::VnIndex vn;
      Dyadic expected_pos;
      Dyadic expected_neg;
      int level;
    };
    CompositionGraph g;
    std::vector<Node> open;
    std::vector<std::pair<CompositionGraph::VnIndex, DyadicValue>> leaf_inputs;
    PrecisionVector leaf_p{3, 2, 3, 2};
    int leaves = 2 + static_cast<int>(gen() % 6);
    for (int i = 0; i < leaves; ++i) {
      auto idx = g.add_vn(leaf_p, 0, "leaf" + std::to_string(i));
      DyadicValue v{Dyadic::scaled(static_cast<std::int64_t>(gen() & 31), -2),
                    Dyadic::scaled(-static_cast<std::int64_t>(gen() & 31), -2)};
      leaf_inputs.push_back({idx, v});
      open.push_back({idx, v.pos, v.neg, 0});
    }
    // Reduce pairs at matching levels until one stays.
    while (open.size() > 1) {
      std::vector<Node> next;
      for (std::size_t i = 0; i + 1 < open.size(); i += 2) {
        const Node& l = open[i];
        const Node& r = open[i + 1];
        int level = std::max(l.level, r.level) + 1;
        PrecisionVector np{3 + level, 2, 3 + level, 2};
        // Schedule: every node at `level` consumes outputs ready at the same
        // step because all inputs inject at 0 and widths match per level.
        int inject = g.vn(l.vn).ready_step + 1;
        auto c = g.add_vn(np, inject,
                          "n" + std::to_string(round) + "_" +
                              std::to_string(next.size()) + "_" +
                              std::to_string(level));
        int wl = static_cast<int>(gen() & 1);
        int wr = static_cast<int>(gen() & 1);
        g.connect_weighted(l.vn, c, InPort::x, wl);
        g.connect_weighted(r.vn, c, InPort::y, wr);
        next.push_back({c, wl ? l.expected_pos : Dyadic(0),
                        wl ? l.expected_neg : Dyadic(0), level});
        if (wr) {
          next.back().expected_pos += r.expected_pos;
          next.back().expected_neg += r.expected_neg;
        }
      }
      if (open.size() & 1) {
        // Forward the straggler through a pass-through stage.
        const Node& l = open.back();
        int level = l.level + 1;
        PrecisionVector np{3 + level, 2, 3 + level, 2};
        auto c = g.add_vn(np, g.vn(l.vn).ready_step + 1,
                          "p" + std::to_string(round) + "_" +
                              std::to_string(next.size()) + "_" +
                              std::to_string(level));
        g.connect_weighted(l.vn, c, InPort::x, 1);
        next.push_back({c, l.expected_pos, l.expected_neg, level});
      }
      open = std::move(next);
    }
    Node root = open.front();
    auto hroot = g.vn(root.vn);
    std::vector<std::pair<VirtualNeuronHandle, DyadicValue>> stims;
    for (auto& [idx, v] : leaf_inputs) stims.push_back({g.vn(idx), v});
    Network net = g.take_network();
    Stimulus stim;
    for (auto& [h, v] : stims) {
      auto s = stimulus_for(h, InPort::x, v);
      stim.injections.insert(stim.injections.end(), s.injections.begin(),
                             s.injections.end());
    }
    DyadicValue out = decode_output(hroot, simulate(net, stim, hroot.ready_step));
    CHECK(out.pos == root.expected_pos);
    CHECK(out.neg == root.expected_neg);
  }
}

TEST_CASE("the three-virtual-neuron chain adds two numbers end to end") {
  AdderChain chain = build_adder_chain({2, 2, 2, 2});
  CHECK(chain.net.neuron_count() == 3 * 54);
  CHECK(chain.c.inject_step == chain.a.ready_step + 1);
  CHECK(chain.c.ready_step == 13);

  DyadicValue x = DyadicValue::from_strings("0.75", "-2.75");
  DyadicValue y = DyadicValue::from_strings("1.0", "-2.5");
  Stimulus stim = stimulus_for(chain.a, InPort::x, x);
  auto more = stimulus_for(chain.b, InPort::x, y);
  stim.injections.insert(stim.injections.end(), more.injections.begin(),
                         more.injections.end());
  DyadicValue out =
      decode_output(chain.c, simulate(chain.net, stim, chain.c.ready_step));
  CHECK(out.pos.to_string() == "1.75");
  CHECK(out.neg.to_string() == "-5.25");
  CHECK(out.value().to_string() == "-3.5");
}

TEST_CASE("embedded bit groups reproduce the reference truth table") {
  auto [net, vn] = build_adder({2, 2, 2, 2});
  for (const RailHandle* rail : {&vn.pos, &vn.neg}) {
    int max_p = vn.precision.max_bits();
    for (std::size_t gi = 0; gi < rail->groups.size(); ++gi) {
      const auto& group = rail->groups[gi];
      int s_max = group.size() == 2 ? 2 : 3;
      for (int s = 0; s <= s_max; ++s) {
        Stimulus stim;
        for (NeuronId id : group) stim.inject(0, id, Dyadic(s));
        int out_delay = max_p - static_cast<int>(gi) + 1;
        auto trace = simulate(net, stim, out_delay + 1);
        NeuronId z = rail->z[rail->z.size() - 1 - gi];
        BitGroupResponse got{trace.spiked(z, out_delay) ? 1 : 0,
                             trace.spiked(group[1], 0) ? 1 : 0};
        CHECK(got == bit_group_response(s));
      }
    }
  }
}

TEST_CASE("zero inputs flow through compositions as zero") {
  AdderChain chain = build_adder_chain({2, 2, 2, 2});
  auto trace = simulate(chain.net, {}, chain.c.ready_step);
  CHECK(trace.events.empty());
  DyadicValue out = decode_output(chain.c, trace);
  CHECK(out.pos == Dyadic(0));
  CHECK(out.neg == Dyadic(0));
}
