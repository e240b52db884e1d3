#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vn/builder.hpp"
#include "vn/codec.hpp"
#include "vn/errors.hpp"
#include "vn/metrics.hpp"
#include "vn/mu.hpp"
#include "vn/netlist.hpp"
#include "vn/verify.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;

namespace {

vn::DyadicValue value_from_text(const std::string& text) {
  vn::DualText dual = vn::parse_dual(text);
  return vn::DyadicValue::from_strings(dual.pos, dual.neg);
}

py::dict result_dict(const vn::DyadicValue& out) {
  py::dict d;
  d["z_pos"] = out.pos.to_string();
  d["z_neg"] = out.neg.to_string();
  d["value"] = out.value().to_string();
  return d;
}

py::dict add(const std::string& x_text, const std::string& y_text,
             const std::string& precision) {
  auto p = vn::PrecisionVector::parse(precision);
  auto [net, handle] = vn::build_adder(p);
  vn::DyadicValue x = value_from_text(x_text);
  vn::DyadicValue y = value_from_text(y_text);
  vn::Stimulus stim = vn::stimulus_for(handle, vn::InPort::x, x);
  auto more = vn::stimulus_for(handle, vn::InPort::y, y);
  stim.injections.insert(stim.injections.end(), more.injections.begin(),
                         more.injections.end());
  auto trace = vn::simulate(net, stim, handle.ready_step);
  auto [pos_bits, neg_bits] = vn::decode_output_bits(handle, trace);
  py::dict d = result_dict(vn::decode_output(handle, trace));
  d["z_pos_bits"] = pos_bits.to_string();
  d["z_neg_bits"] = neg_bits.to_string();
  d["spikes"] = trace.events.size();
  d["ready_step"] = handle.ready_step;
  return d;
}

py::dict verify(int bits, py::object samples, std::uint64_t seed) {
  vn::VerificationReport report;
  auto p = vn::precision_for_bits(bits);
  if (samples.is_none())
    report = vn::verify_exhaustive(p);
  else
    report = vn::verify_sampled(p, samples.cast<std::uint64_t>(), seed);
  py::dict d;
  d["cases"] = report.cases;
  d["failures"] = report.failures.size();
  d["timing_violations"] = report.timing_violations;
  d["seed"] = report.seed;
  d["elapsed_s"] = report.elapsed_s;
  d["passed"] = report.passed();
  return d;
}

py::dict spike_stats(int cases, std::uint64_t seed) {
  auto stats = vn::sample_chain_spikes(vn::precision_for_bits(16), cases, seed);
  py::dict d;
  d["cases"] = stats.cases;
  d["seed"] = stats.seed;
  d["mean_spikes"] = stats.counted_mean;
  d["mean_spikes_with_relays"] = stats.raw_mean;
  d["steps_per_case"] = stats.steps;
  return d;
}

py::dict energy_estimate(int cases, std::uint64_t seed, py::object e_spike,
                         py::object step_period) {
  vn::EnergyModel model;
  if (!e_spike.is_none()) model.e_spike_j = e_spike.cast<double>();
  if (!step_period.is_none()) model.step_period_s = step_period.cast<double>();
  auto stats = vn::sample_chain_spikes(vn::precision_for_bits(16), cases, seed);
  double energy_j = stats.counted_mean * model.e_spike_j;
  double window_s = stats.steps * model.step_period_s;
  py::dict d;
  d["mean_spikes"] = stats.counted_mean;
  d["e_spike_j"] = model.e_spike_j;
  d["mean_energy_j"] = energy_j;
  d["power_w"] = window_s > 0 ? energy_j / window_s : 0.0;
  d["steps_per_case"] = stats.steps;
  return d;
}

std::string build_netlist(const std::string& kind, const std::string& precision,
                          std::size_t n) {
  auto p = vn::PrecisionVector::parse(precision);
  if (kind == "adder") {
    auto [net, handle] = vn::build_adder(p);
    vn::NetlistMeta meta;
    meta.kind = kind;
    meta.precision = p;
    meta.handles.push_back(
        {handle.name, handle.precision, handle.inject_step, handle.ready_step});
    return vn::emit_netlist(net, &meta);
  }
  vn::FunctionCircuit circ;
  if (kind == "constant")
    circ = vn::build_constant({vn::Dyadic(0), vn::Dyadic(0)}, p);
  else if (kind == "successor")
    circ = vn::build_successor(p);
  else if (kind == "predecessor")
    circ = vn::build_predecessor(p);
  else if (kind == "negate")
    circ = vn::build_negate(p);
  else if (kind == "sum-tree")
    circ = vn::build_sum_tree(n, p);
  else
    throw vn::ArgumentError("unknown kind '" + kind + "'");
  vn::NetlistMeta meta;
  meta.kind = kind;
  meta.precision = p;
  for (const auto& h : circ.all_vns)
    meta.handles.push_back({h.name, h.precision, h.inject_step, h.ready_step});
  return vn::emit_netlist(circ.network, &meta);
}

py::dict run_netlist(const std::string& text, const std::string& x_text,
                     const std::string& y_text) {
  auto parsed = vn::parse_netlist(text);
  if (!parsed.meta || parsed.meta->kind != "adder" ||
      parsed.meta->handles.size() != 1)
    throw vn::ArgumentError("expected an adder netlist with meta comments");
  auto handle = vn::handle_from_netlist(parsed.net, parsed.meta->handles[0]);
  vn::Stimulus stim =
      vn::stimulus_for(handle, vn::InPort::x, value_from_text(x_text));
  auto more = vn::stimulus_for(handle, vn::InPort::y, value_from_text(y_text));
  stim.injections.insert(stim.injections.end(), more.injections.begin(),
                         more.injections.end());
  auto trace = vn::simulate(parsed.net, stim, handle.ready_step);
  py::dict d = result_dict(vn::decode_output(handle, trace));
  d["spikes"] = trace.events.size();
  d["trace"] = vn::emit_trace(trace);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Exact dual-rail dyadic arithmetic on simulated spiking circuits: "
      "adder synthesis, simulation, verification and metrics.";

  // Base first: translators run newest-first, so the derived registration
  // must come after the base to take precedence.
  py::register_exception<vn::Error>(m, "VnError", PyExc_RuntimeError);
  py::register_exception<vn::NotRepresentable>(m, "NotRepresentable",
                                               PyExc_ValueError);

  m.def("add", &add, py::arg("x"), py::arg("y"), py::arg("precision"),
        "Add two dual-rail values ('pos,neg' or plain decimals) on a "
        "freshly built adder and decode the result.");

  m.def(
      "encode",
      [](const std::string& decimal, int int_bits, int frac_bits) {
        return vn::bits_from_decimal(decimal, int_bits, frac_bits).to_string();
      },
      py::arg("decimal"), py::arg("int_bits"), py::arg("frac_bits"),
      "Exact fixed-point encoding, MSB first.");

  m.def(
      "decode",
      [](const std::string& bits, int int_bits, int sign) {
        vn::BitVector v;
        v.int_bits = int_bits;
        for (char c : bits) {
          if (c != '0' && c != '1')
            throw vn::ArgumentError("bit strings contain only 0 and 1");
          v.bits.push_back(c == '1');
        }
        if (int_bits < 0 || int_bits > v.width())
          throw vn::ArgumentError("bad split");
        return vn::decimal_from_bits(v, sign);
      },
      py::arg("bits"), py::arg("int_bits"), py::arg("sign") = 1);

  m.def(
      "bit_group_response",
      [](int s) {
        auto r = vn::bit_group_response(s);
        return py::make_tuple(r.sum_bit, r.carry_bit);
      },
      py::arg("input_sum"), "Truth table of one ripple-carry bit group.");

  m.def(
      "structural_counts",
      [](const std::string& precision) {
        auto [net, handle] =
            vn::build_adder(vn::PrecisionVector::parse(precision));
        auto [neurons, synapses] = vn::structural_counts(net);
        return py::make_tuple(neurons, synapses, handle.ready_step);
      },
      py::arg("precision"), "(neurons, synapses, ready_step) of one adder.");

  m.def(
      "complexity_table",
      [](int max_p) {
        py::list rows;
        for (const auto& r : vn::complexity_table(max_p))
          rows.append(py::make_tuple(r.precision, r.neurons, r.synapses, r.steps));
        return rows;
      },
      py::arg("max_p") = 128);

  m.def("verify", &verify, py::arg("bits"), py::arg("samples") = py::none(),
        py::arg("seed") = 1,
        "Check decoded sums against native arithmetic; exhaustive when "
        "samples is None (8-bit only).");

  m.def("spike_stats", &spike_stats, py::arg("cases") = 1000,
        py::arg("seed") = 1);

  m.def("energy_estimate", &energy_estimate, py::arg("cases") = 1000,
        py::arg("seed") = 1, py::arg("e_spike") = py::none(),
        py::arg("step_period") = py::none());

  m.def("mean_set_bits", &vn::mean_set_bits, py::arg("rail_bits"),
        py::arg("samples") = 10000, py::arg("seed") = 1);

  m.def("build_netlist", &build_netlist, py::arg("kind"), py::arg("precision"),
        py::arg("n") = 0, "Compile a circuit to netlist text.");

  m.def("run_netlist", &run_netlist, py::arg("netlist"), py::arg("x"),
        py::arg("y"), "Feed two dual-rail values to an adder netlist.");

  m.def(
      "constant",
      [](const std::string& k, const std::string& x, const std::string& p) {
        auto circ = vn::build_constant(value_from_text(k),
                                       vn::PrecisionVector::parse(p));
        return result_dict(vn::evaluate(circ, value_from_text(x)));
      },
      py::arg("k"), py::arg("x"), py::arg("precision"));

  m.def(
      "successor",
      [](const std::string& x, const std::string& p) {
        auto circ = vn::build_successor(vn::PrecisionVector::parse(p));
        return result_dict(vn::evaluate(circ, value_from_text(x)));
      },
      py::arg("x"), py::arg("precision"));

  m.def(
      "predecessor",
      [](const std::string& x, const std::string& p) {
        auto circ = vn::build_predecessor(vn::PrecisionVector::parse(p));
        return result_dict(vn::evaluate(circ, value_from_text(x)));
      },
      py::arg("x"), py::arg("precision"));

  m.def(
      "negate",
      [](const std::string& x, const std::string& p) {
        auto circ = vn::build_negate(vn::PrecisionVector::parse(p));
        return result_dict(vn::evaluate(circ, value_from_text(x)));
      },
      py::arg("x"), py::arg("precision"));

  m.def(
      "sum_tree",
      [](const std::vector<std::string>& values, const std::string& p) {
        auto circ =
            vn::build_sum_tree(values.size(), vn::PrecisionVector::parse(p));
        std::vector<vn::DyadicValue> args;
        for (const auto& v : values) args.push_back(value_from_text(v));
        py::dict d = result_dict(vn::evaluate(circ, args));
        d["depth"] = circ.depth;
        d["virtual_neurons"] = circ.vn_count();
        return d;
      },
      py::arg("values"), py::arg("precision"));

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
