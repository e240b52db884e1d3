#include "vn/codec.hpp"

#include <algorithm>

#include "vn/detail/decimal.hpp"
#include "vn/errors.hpp"

namespace vn {

std::string PrecisionVector::to_string() const {
  return std::to_string(pos_int) + "," + std::to_string(pos_frac) + "," +
         std::to_string(neg_int) + "," + std::to_string(neg_frac);
}

PrecisionVector PrecisionVector::parse(std::string_view csv) {
  int fields[4];
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    std::size_t end = i == 3 ? csv.size() : csv.find(',', start);
    if (end == std::string_view::npos)
      throw ArgumentError("precision must be four comma-separated bit counts");
    std::string_view f = csv.substr(start, end - start);
    if (f.empty() || f.find_first_not_of("0123456789") != std::string_view::npos)
      throw ArgumentError("bad precision field '" + std::string(f) + "'");
    long v = std::stol(std::string(f));
    if (v > 4096) throw ArgumentError("precision field too large");
    fields[i] = static_cast<int>(v);
    start = end + 1;
  }
  if (start <= csv.size() && csv.find(',', start) != std::string_view::npos)
    throw ArgumentError("precision must have exactly four fields");
  return {fields[0], fields[1], fields[2], fields[3]};
}

bool BitVector::any() const {
  return std::any_of(bits.begin(), bits.end(), [](auto b) { return b != 0; });
}

std::uint64_t BitVector::to_uint() const {
  if (width() > 63) throw ArgumentError("bit vector too wide for integer view");
  std::uint64_t v = 0;
  for (auto b : bits) v = v << 1 | b;
  return v;
}

std::string BitVector::to_string() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

DyadicValue DyadicValue::from_strings(std::string_view pos_dec,
                                      std::string_view neg_dec) {
  auto p = Dyadic::from_decimal(pos_dec);
  auto n = Dyadic::from_decimal(neg_dec);
  if (!p || !n) throw NotRepresentable("value is not an exact dyadic decimal");
  if (p->is_negative()) throw NotRepresentable("positive rail must be >= 0");
  if (n->sign() > 0) throw NotRepresentable("negative rail must be <= 0");
  return {*p, *n};
}

BitVector encode_rail(const Dyadic& x, int int_bits, int frac_bits) {
  if (int_bits < 0 || frac_bits < 0) throw ArgumentError("negative bit count");
  if (x.is_negative())
    throw NotRepresentable("rail values are magnitudes; got " + x.to_string());
  // x * 2^frac_bits must be an integer below 2^(int_bits + frac_bits).
  if (x.exponent() + frac_bits < 0)
    throw NotRepresentable(x.to_string() + " needs more than " +
                           std::to_string(frac_bits) + " fraction bits");
  const int width = int_bits + frac_bits;
  if (width > 62) throw ArgumentError("rail wider than 62 bits; use the text codec");
  auto mag = static_cast<std::uint64_t>(x.mantissa());
  int shift = x.exponent() + frac_bits;
  if (shift >= 64 || (shift > 0 && mag > (~0ull >> shift)) ||
      (mag << shift) >= (1ull << width))
    throw NotRepresentable(x.to_string() + " exceeds " +
                           std::to_string(int_bits) + "." +
                           std::to_string(frac_bits) + " bits");
  std::uint64_t scaled = mag << shift;
  BitVector out;
  out.int_bits = int_bits;
  out.bits.resize(width);
  for (int i = 0; i < width; ++i) out.bits[i] = scaled >> (width - 1 - i) & 1;
  return out;
}

Dyadic decode_rail(const BitVector& bits, int sign) {
  Dyadic v = Dyadic::scaled(static_cast<std::int64_t>(bits.to_uint()),
                            -bits.frac_bits());
  return sign < 0 ? -v : v;
}

std::pair<BitVector, BitVector> encode_value(const DyadicValue& v,
                                             const PrecisionVector& p) {
  if (v.pos.is_negative())
    throw NotRepresentable("positive rail holds " + v.pos.to_string());
  if (v.neg.sign() > 0)
    throw NotRepresentable("negative rail holds " + v.neg.to_string());
  return {encode_rail(v.pos, p.pos_int, p.pos_frac),
          encode_rail(-v.neg, p.neg_int, p.neg_frac)};
}

BitVector bits_from_decimal(std::string_view decimal, int int_bits,
                            int frac_bits) {
  detail::ParsedDecimal d;
  if (!detail::split_decimal(decimal, d))
    throw NotRepresentable("bad decimal '" + std::string(decimal) + "'");
  if (d.negative)
    throw NotRepresentable("rail values are magnitudes; got " +
                           std::string(decimal));
  auto ib = detail::bits_from_int_digits(d.int_digits);
  if (static_cast<int>(ib.size()) > int_bits)
    throw NotRepresentable(std::string(decimal) + " exceeds " +
                           std::to_string(int_bits) + " integer bits");
  std::vector<std::uint8_t> fb;
  if (!detail::bits_from_frac_digits(d.frac_digits, frac_bits, fb))
    throw NotRepresentable(std::string(decimal) + " is not representable in " +
                           std::to_string(frac_bits) + " fraction bits");
  BitVector out;
  out.int_bits = int_bits;
  out.bits.assign(static_cast<std::size_t>(int_bits) - ib.size(), 0);
  out.bits.insert(out.bits.end(), ib.begin(), ib.end());
  out.bits.insert(out.bits.end(), fb.begin(), fb.end());
  return out;
}

std::string decimal_from_bits(const BitVector& bits, int sign) {
  detail::ParsedDecimal d;
  d.negative = sign < 0 && bits.any();
  std::vector<std::uint8_t> ib(bits.bits.begin(), bits.bits.begin() + bits.int_bits);
  std::vector<std::uint8_t> fb(bits.bits.begin() + bits.int_bits, bits.bits.end());
  d.int_digits = detail::int_digits_from_bits(ib);
  d.frac_digits = detail::frac_digits_from_bits(fb);
  return detail::render(d);
}

std::string add_decimal_strings(std::string_view a, std::string_view b) {
  detail::ParsedDecimal da, db;
  if (!detail::split_decimal(a, da) || !detail::split_decimal(b, db))
    throw ArgumentError("bad decimal operands");
  return detail::add_decimal(da, db);
}

DualText parse_dual(std::string_view text) {
  DualText out;
  auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    // Convenience path: route by sign.
    detail::ParsedDecimal d;
    if (!detail::split_decimal(text, d))
      throw NotRepresentable("bad decimal '" + std::string(text) + "'");
    if (d.negative)
      out.neg = detail::render(d);
    else
      out.pos = detail::render(d);
    return out;
  }
  detail::ParsedDecimal p, n;
  if (!detail::split_decimal(text.substr(0, comma), p) ||
      !detail::split_decimal(text.substr(comma + 1), n))
    throw NotRepresentable("bad dual value '" + std::string(text) + "'");
  if (p.negative)
    throw NotRepresentable("positive rail of '" + std::string(text) +
                           "' must be >= 0");
  if (!n.negative && !(n.int_digits == "0" && n.frac_digits.empty()))
    throw NotRepresentable("negative rail of '" + std::string(text) +
                           "' must be <= 0");
  out.pos = detail::render(p);
  out.neg = detail::render(n);
  return out;
}

void append_stimulus(Stimulus& stim, const VirtualNeuronHandle& vn, InPort port,
                     const BitVector& pos, const BitVector& neg_mag) {
  auto place = [&](const BitVector& bits, const std::vector<NeuronId>& neurons,
                   const char* rail) {
    if (bits.width() != static_cast<int>(neurons.size()))
      throw NotRepresentable(std::string(rail) + " rail is " +
                             std::to_string(bits.width()) + " bits; port takes " +
                             std::to_string(neurons.size()));
    for (std::size_t i = 0; i < neurons.size(); ++i)
      if (bits.bits[i]) stim.inject(vn.inject_step, neurons[i]);
  };
  place(pos, vn.in_port(Rail::pos, port), "positive");
  place(neg_mag, vn.in_port(Rail::neg, port), "negative");
}

Stimulus stimulus_for(const VirtualNeuronHandle& vn, InPort port,
                      const DyadicValue& v) {
  auto [pos, neg] = encode_value(v, vn.precision);
  Stimulus stim;
  append_stimulus(stim, vn, port, pos, neg);
  return stim;
}

std::pair<BitVector, BitVector> decode_output_bits(
    const VirtualNeuronHandle& vn, const SpikeTrace& trace) {
  if (trace.horizon < vn.ready_step)
    throw ArgumentError("trace ends before the output-ready step");

  auto read = [&](const RailHandle& rail) {
    BitVector out;
    out.int_bits = rail.empty() ? 0 : rail.int_bits + 1;  // carry widens the integer side
    out.bits.resize(rail.z.size(), 0);
    for (std::size_t i = 0; i < rail.z.size(); ++i)
      out.bits[i] = trace.spiked(rail.z[i], vn.ready_step) ? 1 : 0;
    return out;
  };
  auto check_timing = [&](const RailHandle& rail) {
    for (NeuronId id : rail.z)
      for (const auto& ev : trace.events)
        if (ev.neuron == id && ev.step != vn.ready_step)
          throw TimingViolation("output neuron " + std::to_string(id) +
                                " spiked at step " + std::to_string(ev.step) +
                                ", ready step is " +
                                std::to_string(vn.ready_step));
  };
  check_timing(vn.pos);
  check_timing(vn.neg);
  return {read(vn.pos), read(vn.neg)};
}

DyadicValue decode_output(const VirtualNeuronHandle& vn,
                          const SpikeTrace& trace) {
  auto [pos, neg] = decode_output_bits(vn, trace);
  return {decode_rail(pos, +1), decode_rail(neg, -1)};
}

}  // namespace vn
