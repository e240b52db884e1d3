#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vn/handle.hpp"
#include "vn/snn.hpp"

namespace vn {

/// Circuit description carried in netlist comment lines so a file can be
/// re-run without rebuilding: which circuit family produced it and the
/// schedule of each embedded virtual neuron.
struct NetlistMeta {
  struct Handle {
    std::string name;  // port prefix; empty for a lone adder
    PrecisionVector precision;
    int inject_step = 0;
    int ready_step = 0;
  };

  std::string kind;  // "adder", "constant", "successor", ...
  PrecisionVector precision;
  std::vector<Handle> handles;
};

/// Line-oriented text netlist:
///   VN-NETLIST 1
///   NEURON <id> <threshold> <reset> 0        (trailing reserved leak column)
///   SYNAPSE <pre> <post> <m>*2^<e> <delay>   (exact dyadic weight)
///   PORT <IN|OUT> <name> <id> <id> ...       (most significant bit first)
/// '#' starts a comment; emission is deterministic for identical inputs.
std::string emit_netlist(const Network& net, const NetlistMeta* meta = nullptr);

struct ParsedNetlist {
  Network net;
  std::optional<NetlistMeta> meta;
};

ParsedNetlist parse_netlist(std::string_view text);

/// Rebuilds the port/schedule view of a virtual neuron from a parsed file.
/// Bit groups are not recoverable from ports and stay empty.
VirtualNeuronHandle handle_from_netlist(const Network& net,
                                        const NetlistMeta::Handle& h);

/// SPIKE <time> <neuron-id> lines, sorted by (time, id).
std::string emit_trace(const SpikeTrace& trace);
SpikeTrace parse_trace(std::string_view text);

/// Equality up to ordering of synapses and ports.
bool structurally_equal(const Network& a, const Network& b);

}  // namespace vn
