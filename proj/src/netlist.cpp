#include "vn/netlist.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <tuple>

#include "vn/errors.hpp"

namespace vn {

namespace {

std::string weight_text(const Dyadic& w) {
  return std::to_string(w.mantissa()) + "*2^" + std::to_string(w.exponent());
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_int(std::string_view s, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

Dyadic parse_weight(std::string_view s) {
  auto star = s.find("*2^");
  if (star == std::string_view::npos)
    throw ParseError("weight must be written m*2^e, got '" + std::string(s) +
                     "'");
  auto m = parse_int<std::int64_t>(s.substr(0, star), "weight mantissa");
  auto e = parse_int<int>(s.substr(star + 3), "weight exponent");
  return Dyadic::scaled(m, e);
}

// "key=value" fields of a "# meta ..." comment.
std::optional<std::string_view> field(
    const std::vector<std::string_view>& tokens, std::string_view key) {
  for (auto t : tokens) {
    if (t.size() > key.size() + 1 && t.substr(0, key.size()) == key &&
        t[key.size()] == '=')
      return t.substr(key.size() + 1);
  }
  return std::nullopt;
}

}  // namespace

std::string emit_netlist(const Network& net, const NetlistMeta* meta) {
  std::ostringstream out;
  out << "VN-NETLIST 1\n";
  if (meta) {
    out << "# meta kind=" << meta->kind
        << " precision=" << meta->precision.to_string() << "\n";
    for (const auto& h : meta->handles)
      out << "# meta vn name=" << (h.name.empty() ? "-" : h.name)
          << " precision=" << h.precision.to_string()
          << " inject=" << h.inject_step << " ready=" << h.ready_step << "\n";
  }
  for (const auto& n : net.neurons())
    out << "NEURON " << n.id << " " << n.threshold << " " << n.reset_state
        << " 0\n";
  for (const auto& s : net.synapses())
    out << "SYNAPSE " << s.pre << " " << s.post << " " << weight_text(s.weight)
        << " " << s.delay << "\n";
  for (const auto& p : net.ports()) {
    out << "PORT " << (p.dir == PortDir::in ? "IN" : "OUT") << " " << p.name;
    for (NeuronId id : p.neurons) out << " " << id;
    out << "\n";
  }
  return out.str();
}

ParsedNetlist parse_netlist(std::string_view text) {
  std::vector<NeuronSpec> neurons;
  std::vector<SynapseSpec> synapses;
  std::vector<Port> ports;
  std::optional<NetlistMeta> meta;

  bool saw_magic = false;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto hash = line.find('#');
    std::string_view code = hash == std::string_view::npos ? line : line.substr(0, hash);
    std::string_view comment =
        hash == std::string_view::npos ? std::string_view{} : line.substr(hash + 1);

    // Meta comments are optional structured data.
    auto ctokens = split_ws(comment);
    if (ctokens.size() >= 2 && ctokens[0] == "meta") {
      if (ctokens[1] == "vn") {
        NetlistMeta::Handle h;
        auto name = field(ctokens, "name");
        auto prec = field(ctokens, "precision");
        auto inject = field(ctokens, "inject");
        auto ready = field(ctokens, "ready");
        if (name && prec && inject && ready) {
          h.name = *name == "-" ? "" : std::string(*name);
          h.precision = PrecisionVector::parse(*prec);
          h.inject_step = parse_int<int>(*inject, "inject step");
          h.ready_step = parse_int<int>(*ready, "ready step");
          if (!meta) meta.emplace();
          meta->handles.push_back(std::move(h));
        }
      } else if (auto kind = field(ctokens, "kind")) {
        if (!meta) meta.emplace();
        meta->kind = std::string(*kind);
        if (auto prec = field(ctokens, "precision"))
          meta->precision = PrecisionVector::parse(*prec);
      }
    }

    auto tokens = split_ws(code);
    if (tokens.empty()) continue;
    if (!saw_magic) {
      if (tokens.size() != 2 || tokens[0] != "VN-NETLIST" || tokens[1] != "1")
        throw ParseError("line 1 must be 'VN-NETLIST 1'");
      saw_magic = true;
      continue;
    }
    if (tokens[0] == "NEURON") {
      if (tokens.size() != 5)
        throw ParseError("line " + std::to_string(line_no) +
                         ": NEURON takes id, threshold, reset, leak");
      NeuronSpec n;
      n.id = parse_int<NeuronId>(tokens[1], "neuron id");
      n.threshold = parse_int<std::int64_t>(tokens[2], "threshold");
      n.reset_state = parse_int<std::int64_t>(tokens[3], "reset state");
      if (tokens[4] != "0")
        throw ParseError("line " + std::to_string(line_no) +
                         ": leak column is reserved and must be 0");
      neurons.push_back(n);
    } else if (tokens[0] == "SYNAPSE") {
      if (tokens.size() != 5)
        throw ParseError("line " + std::to_string(line_no) +
                         ": SYNAPSE takes pre, post, weight, delay");
      SynapseSpec s;
      s.pre = parse_int<NeuronId>(tokens[1], "pre neuron");
      s.post = parse_int<NeuronId>(tokens[2], "post neuron");
      s.weight = parse_weight(tokens[3]);
      s.delay = parse_int<int>(tokens[4], "delay");
      synapses.push_back(s);
    } else if (tokens[0] == "PORT") {
      if (tokens.size() < 3)
        throw ParseError("line " + std::to_string(line_no) +
                         ": PORT takes direction, name, neuron ids");
      Port p;
      if (tokens[1] == "IN")
        p.dir = PortDir::in;
      else if (tokens[1] == "OUT")
        p.dir = PortDir::out;
      else
        throw ParseError("line " + std::to_string(line_no) +
                         ": port direction must be IN or OUT");
      p.name = std::string(tokens[2]);
      for (std::size_t i = 3; i < tokens.size(); ++i)
        p.neurons.push_back(parse_int<NeuronId>(tokens[i], "port neuron"));
      ports.push_back(std::move(p));
    } else {
      throw ParseError("line " + std::to_string(line_no) +
                       ": unknown record '" + std::string(tokens[0]) + "'");
    }
  }
  if (!saw_magic) throw ParseError("empty netlist");

  std::sort(neurons.begin(), neurons.end(),
            [](const NeuronSpec& a, const NeuronSpec& b) { return a.id < b.id; });
  try {
    return {Network(std::move(neurons), std::move(synapses), std::move(ports)),
            std::move(meta)};
  } catch (const StructuralError& e) {
    throw ParseError(std::string("invalid netlist: ") + e.what());
  }
}

VirtualNeuronHandle handle_from_netlist(const Network& net,
                                        const NetlistMeta::Handle& h) {
  VirtualNeuronHandle vn;
  vn.name = h.name;
  vn.precision = h.precision;
  vn.inject_step = h.inject_step;
  vn.ready_step = h.ready_step;
  auto port = [&](const char* base) -> std::vector<NeuronId> {
    std::string name = h.name.empty() ? base : h.name + "." + base;
    const Port* p = net.find_port(name);
    if (!p) return {};
    return p->neurons;
  };
  vn.pos.int_bits = h.precision.pos_int;
  vn.pos.frac_bits = h.precision.pos_frac;
  vn.pos.x = port("X+");
  vn.pos.y = port("Y+");
  vn.pos.z = port("Z+");
  vn.neg.int_bits = h.precision.neg_int;
  vn.neg.frac_bits = h.precision.neg_frac;
  vn.neg.x = port("X-");
  vn.neg.y = port("Y-");
  vn.neg.z = port("Z-");
  auto check = [&](const RailHandle& rail) {
    if (rail.empty()) return;
    if (static_cast<int>(rail.x.size()) != rail.width() ||
        static_cast<int>(rail.y.size()) != rail.width() ||
        static_cast<int>(rail.z.size()) != rail.width() + 1)
      throw ParseError("netlist ports do not match declared precision for '" +
                       vn.name + "'");
  };
  check(vn.pos);
  check(vn.neg);
  return vn;
}

std::string emit_trace(const SpikeTrace& trace) {
  std::ostringstream out;
  out << "# meta horizon=" << trace.horizon << "\n";
  for (const auto& ev : trace.events)
    out << "SPIKE " << ev.step << " " << ev.neuron << "\n";
  return out.str();
}

SpikeTrace parse_trace(std::string_view text) {
  SpikeTrace trace;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto hash = line.find('#');
    if (hash != std::string_view::npos) {
      auto ctokens = split_ws(line.substr(hash + 1));
      if (ctokens.size() >= 2 && ctokens[0] == "meta")
        if (auto h = field(ctokens, "horizon"))
          trace.horizon = parse_int<int>(*h, "horizon");
      line = line.substr(0, hash);
    }
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0] != "SPIKE" || tokens.size() != 3)
      throw ParseError("trace lines must be 'SPIKE <time> <neuron>'");
    trace.events.push_back({parse_int<int>(tokens[1], "spike time"),
                            parse_int<NeuronId>(tokens[2], "neuron id")});
  }
  std::sort(trace.events.begin(), trace.events.end());
  for (const auto& ev : trace.events)
    if (ev.step > trace.horizon) trace.horizon = ev.step;
  return trace;
}

bool structurally_equal(const Network& a, const Network& b) {
  if (a.neurons() != b.neurons()) return false;
  auto sorted_synapses = [](const Network& n) {
    auto v = n.synapses();
    std::sort(v.begin(), v.end(), [](const SynapseSpec& l, const SynapseSpec& r) {
      auto lw = l.weight.mantissa(), rw = r.weight.mantissa();
      auto le = l.weight.exponent(), re = r.weight.exponent();
      return std::tie(l.pre, l.post, l.delay, lw, le) <
             std::tie(r.pre, r.post, r.delay, rw, re);
    });
    return v;
  };
  auto sorted_ports = [](const Network& n) {
    auto v = n.ports();
    std::sort(v.begin(), v.end(),
              [](const Port& l, const Port& r) { return l.name < r.name; });
    return v;
  };
  return sorted_synapses(a) == sorted_synapses(b) &&
         sorted_ports(a) == sorted_ports(b);
}

}  // namespace vn
