// Command-line front end: builds virtual-neuron netlists, runs them on the
// zero-leak simulator, and reports verification, complexity and energy
// figures. Exit codes: 0 success, 1 verification failure, 2 usage or
// representability error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vn/builder.hpp"
#include "vn/codec.hpp"
#include "vn/errors.hpp"
#include "vn/metrics.hpp"
#include "vn/mu.hpp"
#include "vn/netlist.hpp"
#include "vn/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::string format_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw vn::ArgumentError("cannot write '" + path + "'");
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vn::ArgumentError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

vn::FunctionKind parse_kind(const std::string& kind) {
  if (kind == "constant") return vn::FunctionKind::constant;
  if (kind == "successor") return vn::FunctionKind::successor;
  if (kind == "predecessor") return vn::FunctionKind::predecessor;
  if (kind == "negate") return vn::FunctionKind::negate;
  if (kind == "sum-tree") return vn::FunctionKind::sum_tree;
  throw vn::ArgumentError("unknown kind '" + kind + "'");
}

vn::NetlistMeta meta_for(const std::string& kind, const vn::PrecisionVector& p,
                         const std::vector<vn::VirtualNeuronHandle>& handles) {
  vn::NetlistMeta meta;
  meta.kind = kind;
  meta.precision = p;
  for (const auto& h : handles)
    meta.handles.push_back({h.name, h.precision, h.inject_step, h.ready_step});
  return meta;
}

int cmd_build(const std::string& kind, const vn::PrecisionVector& p,
              std::size_t n, const std::string& out_path) {
  std::string text;
  if (kind == "adder") {
    auto [net, handle] = vn::build_adder(p);
    auto meta = meta_for(kind, p, {handle});
    text = vn::emit_netlist(net, &meta);
  } else {
    vn::FunctionCircuit circ;
    switch (parse_kind(kind)) {
      case vn::FunctionKind::constant:
        circ = vn::build_constant({vn::Dyadic(0), vn::Dyadic(0)}, p);
        break;
      case vn::FunctionKind::successor: circ = vn::build_successor(p); break;
      case vn::FunctionKind::predecessor: circ = vn::build_predecessor(p); break;
      case vn::FunctionKind::negate: circ = vn::build_negate(p); break;
      case vn::FunctionKind::sum_tree: circ = vn::build_sum_tree(n, p); break;
    }
    auto meta = meta_for(kind, p, circ.all_vns);
    text = vn::emit_netlist(circ.network, &meta);
  }
  write_output(out_path, text);
  return kExitOk;
}

int cmd_run(const std::string& netlist_path, const std::string& x_text,
            const std::string& y_text, const std::string& trace_path) {
  auto parsed = vn::parse_netlist(read_file(netlist_path));
  if (!parsed.meta || parsed.meta->kind != "adder" ||
      parsed.meta->handles.size() != 1)
    throw vn::ArgumentError(
        "run expects an adder netlist produced by 'vn build --kind adder'");
  auto handle = vn::handle_from_netlist(parsed.net, parsed.meta->handles[0]);
  const auto& p = handle.precision;

  auto encode_input = [&](const std::string& text, const char* which,
                          vn::Stimulus& stim, vn::InPort port) {
    vn::DualText dual = vn::parse_dual(text);
    auto rail = [&](const std::string& dec, int int_bits, int frac_bits,
                    const char* rail_name) {
      std::string magnitude = dec;
      if (!magnitude.empty() && magnitude.front() == '-') magnitude.erase(0, 1);
      try {
        return vn::bits_from_decimal(magnitude, int_bits, frac_bits);
      } catch (const vn::NotRepresentable& e) {
        throw vn::NotRepresentable(std::string(which) + " " + rail_name +
                                   " rail: " + e.what());
      }
    };
    auto pos = rail(dual.pos, p.pos_int, p.pos_frac, "positive");
    auto neg = rail(dual.neg, p.neg_int, p.neg_frac, "negative");
    vn::append_stimulus(stim, handle, port, pos, neg);
  };

  vn::Stimulus stim;
  encode_input(x_text, "X", stim, vn::InPort::x);
  encode_input(y_text, "Y", stim, vn::InPort::y);
  auto trace = vn::simulate(parsed.net, stim, handle.ready_step);
  auto [pos_bits, neg_bits] = vn::decode_output_bits(handle, trace);

  std::string pos_dec = vn::decimal_from_bits(pos_bits, +1);
  std::string neg_dec = vn::decimal_from_bits(neg_bits, -1);
  std::cout << "z = " << pos_dec << "," << neg_dec << "\n";
  std::cout << "value = " << vn::add_decimal_strings(pos_dec, neg_dec) << "\n";
  if (!trace_path.empty()) write_output(trace_path, vn::emit_trace(trace));
  return kExitOk;
}

int cmd_verify(int bits, std::uint64_t samples, std::uint64_t seed,
               bool sampled) {
  auto p = vn::precision_for_bits(bits);
  vn::VerificationReport report;
  std::string mode;
  if (!sampled) {
    if (bits != 8)
      throw vn::ArgumentError(
          "exhaustive verification is limited to 8 bits; pass --samples");
    report = vn::verify_exhaustive(p);
    mode = "exhaustive";
  } else {
    report = vn::verify_sampled(p, samples, seed);
    mode = "sampled";
  }
  std::cout << "bits=" << bits << " mode=" << mode << " cases=" << report.cases
            << " failures=" << report.failures.size()
            << " timing_violations=" << report.timing_violations
            << " seed=" << report.seed << "\n";
  for (const auto& f : report.failures)
    std::cout << "FAIL x=" << f.x << " y=" << f.y << " expected=" << f.expected
              << " got=" << f.got << " (" << f.detail << ")\n";
  std::cout << (report.passed() ? "PASS" : "FAIL") << "\n";
  std::cerr << "elapsed: " << format_g(report.elapsed_s) << " s\n";
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

int cmd_complexity(int max_p) {
  auto rows = vn::complexity_table(max_p);
  std::printf("%-10s %-10s %-10s %-10s\n", "precision", "neurons", "synapses",
              "steps");
  for (const auto& r : rows)
    std::printf("%-10d %-10llu %-10llu %-10d\n", r.precision,
                static_cast<unsigned long long>(r.neurons),
                static_cast<unsigned long long>(r.synapses), r.steps);
  return kExitOk;
}

int cmd_energy(const std::string& netlist_path, const std::string& trace_path,
               const vn::EnergyModel& model, int cases, std::uint64_t seed) {
  if (netlist_path.empty() != trace_path.empty())
    throw vn::ArgumentError("--netlist and --trace go together");
  if (!netlist_path.empty()) {
    auto parsed = vn::parse_netlist(read_file(netlist_path));
    auto trace = vn::parse_trace(read_file(trace_path));
    auto m = vn::estimate_energy(trace, parsed.net, model);
    std::cout << "spikes=" << m.total_spikes << "\n"
              << "steps=" << m.steps << "\n"
              << "energy_j=" << format_g(m.energy_j) << "\n"
              << "power_w=" << format_g(m.power_w) << "\n";
    return kExitOk;
  }

  // Default mode: the 16-bit chain-addition sample that the model is
  // calibrated against.
  auto p = vn::precision_for_bits(16);
  auto stats = vn::sample_chain_spikes(p, cases, seed);
  double energy_j = stats.counted_mean * model.e_spike_j;
  double window_s = stats.steps * model.step_period_s;
  double power_w = window_s > 0 ? energy_j / window_s : 0.0;
  std::cout << "precision=" << p.to_string() << "\n"
            << "cases=" << stats.cases << "\n"
            << "seed=" << stats.seed << "\n"
            << "mean_spikes=" << format_g(stats.counted_mean) << "\n"
            << "mean_spikes_with_relays=" << format_g(stats.raw_mean) << "\n"
            << "steps_per_case=" << stats.steps << "\n"
            << "e_spike_j=" << format_g(model.e_spike_j) << "\n"
            << "step_period_s=" << format_g(model.step_period_s) << "\n"
            << "mean_energy_j=" << format_g(energy_j) << "\n"
            << "power_w=" << format_g(power_w) << "\n";
  return kExitOk;
}

int cmd_func(const std::string& kind_text, const vn::PrecisionVector& p,
             const std::string& k_text, const std::string& x_text,
             const std::vector<std::string>& inputs) {
  vn::FunctionKind kind = parse_kind(kind_text);
  auto to_value = [](const std::string& text) {
    vn::DualText dual = vn::parse_dual(text);
    return vn::DyadicValue::from_strings(dual.pos, dual.neg);
  };

  vn::FunctionCircuit circ;
  std::vector<vn::DyadicValue> args;
  switch (kind) {
    case vn::FunctionKind::constant:
      if (k_text.empty()) throw vn::ArgumentError("constant needs --k");
      if (x_text.empty()) throw vn::ArgumentError("constant needs --x");
      circ = vn::build_constant(to_value(k_text), p);
      args.push_back(to_value(x_text));
      break;
    case vn::FunctionKind::successor:
    case vn::FunctionKind::predecessor:
    case vn::FunctionKind::negate:
      if (x_text.empty()) throw vn::ArgumentError(kind_text + " needs --x");
      circ = kind == vn::FunctionKind::successor ? vn::build_successor(p)
             : kind == vn::FunctionKind::predecessor ? vn::build_predecessor(p)
                                                     : vn::build_negate(p);
      args.push_back(to_value(x_text));
      break;
    case vn::FunctionKind::sum_tree: {
      if (inputs.size() < 2)
        throw vn::ArgumentError("sum-tree needs two or more --inputs values");
      circ = vn::build_sum_tree(inputs.size(), p);
      for (const auto& text : inputs) args.push_back(to_value(text));
      break;
    }
  }
  vn::DyadicValue out = vn::evaluate(circ, args);
  std::string pos_dec = out.pos.to_string();
  std::string neg_dec = out.neg.to_string();
  std::cout << "z = " << pos_dec << "," << neg_dec << "\n";
  std::cout << "value = " << vn::add_decimal_strings(pos_dec, neg_dec) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"virtual-neuron circuit compiler and simulator"};
  app.set_version_flag("--version", "0.1.0");
  app.require_subcommand(1);

  std::string precision_text = "2,2,2,2";
  std::string kind = "adder";
  std::string out_path, netlist_path, trace_path;
  std::string x_text, y_text, k_text;
  std::vector<std::string> inputs;
  int bits = 8;
  std::uint64_t samples = 0, seed = 1;
  int max_p = 128;
  int cases = 1000;
  std::size_t tree_n = 0;
  vn::EnergyModel model;

  auto* build = app.add_subcommand("build", "compile a circuit to a netlist");
  build->add_option("--precision", precision_text, "bits: pos-int,pos-frac,neg-int,neg-frac");
  build->add_option("--kind", kind,
                    "adder|constant|successor|predecessor|negate|sum-tree");
  build->add_option("--n", tree_n, "input count for sum-tree");
  build->add_option("-o,--out", out_path, "output file (default stdout)");

  auto* run = app.add_subcommand("run", "feed inputs to an adder netlist");
  run->add_option("--netlist", netlist_path, "netlist file")->required();
  run->add_option("--x", x_text, "X as 'pos,neg' or a signed decimal")->required();
  run->add_option("--y", y_text, "Y as 'pos,neg' or a signed decimal")->required();
  run->add_option("--trace", trace_path, "write the spike trace here");

  auto* verify = app.add_subcommand("verify", "check decoded sums against native arithmetic");
  verify->add_option("--bits", bits, "8, 16 or 32");
  auto* samples_opt = verify->add_option("--samples", samples, "sampled mode case count");
  verify->add_option("--seed", seed, "sample generator seed");

  auto* complexity = app.add_subcommand("complexity", "measured size/steps per precision");
  complexity->add_option("--max-p", max_p, "largest positive precision (doubling from 1)");

  auto* energy = app.add_subcommand("energy", "energy and power estimates");
  energy->add_option("--netlist", netlist_path, "netlist for an existing trace");
  energy->add_option("--trace", trace_path, "trace to price");
  energy->add_option("--e-spike", model.e_spike_j, "joules per spike");
  energy->add_option("--step-period", model.step_period_s, "seconds per step");
  energy->add_option("--p-idle-neuron", model.p_idle_neuron_w, "idle watts per neuron");
  energy->add_option("--p-idle-synapse", model.p_idle_synapse_w, "idle watts per synapse");
  energy->add_option("--cases", cases, "sample count for the default estimate");
  energy->add_option("--seed", seed, "sample generator seed");

  auto* func = app.add_subcommand("func", "build and evaluate a function circuit");
  func->add_option("--kind", kind,
                   "constant|successor|predecessor|negate|sum-tree")->required();
  func->add_option("--precision", precision_text, "precision vector");
  func->add_option("--k", k_text, "constant value");
  func->add_option("--x", x_text, "argument value");
  func->add_option("--inputs", inputs, "sum-tree input values");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed())
      return cmd_build(kind, vn::PrecisionVector::parse(precision_text), tree_n,
                       out_path);
    if (run->parsed()) return cmd_run(netlist_path, x_text, y_text, trace_path);
    if (verify->parsed()) return cmd_verify(bits, samples, seed, samples_opt->count() > 0);
    if (complexity->parsed()) return cmd_complexity(max_p);
    if (energy->parsed())
      return cmd_energy(netlist_path, trace_path, model, cases, seed);
    if (func->parsed())
      return cmd_func(kind, vn::PrecisionVector::parse(precision_text), k_text,
                      x_text, inputs);
  } catch (const vn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
