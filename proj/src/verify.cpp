#include "vn/verify.hpp"

#include <chrono>
#include <random>

#include "vn/errors.hpp"

namespace vn {

namespace {

struct RailPattern {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;  // magnitude bits
};

BitVector pattern_bits(std::uint64_t value, int int_bits, int frac_bits) {
  BitVector out;
  out.int_bits = int_bits;
  int width = int_bits + frac_bits;
  out.bits.resize(width);
  for (int i = 0; i < width; ++i) out.bits[i] = value >> (width - 1 - i) & 1;
  return out;
}

std::string dual_text(const RailPattern& v, const PrecisionVector& p) {
  return decimal_from_bits(pattern_bits(v.pos, p.pos_int, p.pos_frac), +1) +
         "," +
         decimal_from_bits(pattern_bits(v.neg, p.neg_int, p.neg_frac), -1);
}

class ChainChecker {
 public:
  explicit ChainChecker(const PrecisionVector& p)
      : p_(p), chain_(build_adder_chain(p)) {}

  /// One addition; appends to the report on mismatch. Returns pass/fail.
  bool check(const RailPattern& x, const RailPattern& y,
             VerificationReport& report, std::size_t max_failures) {
    Stimulus stim;
    append_stimulus(stim, chain_.a, InPort::x,
                    pattern_bits(x.pos, p_.pos_int, p_.pos_frac),
                    pattern_bits(x.neg, p_.neg_int, p_.neg_frac));
    append_stimulus(stim, chain_.b, InPort::x,
                    pattern_bits(y.pos, p_.pos_int, p_.pos_frac),
                    pattern_bits(y.neg, p_.neg_int, p_.neg_frac));
    SpikeTrace trace = simulate(chain_.net, stim, chain_.c.ready_step);
    ++report.cases;

    auto record = [&](const std::string& got, const std::string& detail) {
      if (report.failures.size() < max_failures) {
        VerifyFailure f;
        f.x = dual_text(x, p_);
        f.y = dual_text(y, p_);
        f.expected = expected_text(x, y);
        f.got = got;
        f.detail = detail;
        report.failures.push_back(std::move(f));
      }
    };

    std::pair<BitVector, BitVector> out;
    try {
      out = decode_output_bits(chain_.c, trace);
    } catch (const TimingViolation& tv) {
      ++report.timing_violations;
      record("-", tv.what());
      return false;
    }
    std::uint64_t got_pos = out.first.to_uint();
    std::uint64_t got_neg = out.second.to_uint();
    if (got_pos != x.pos + y.pos || got_neg != x.neg + y.neg) {
      record(decimal_from_bits(out.first, +1) + "," +
                 decimal_from_bits(out.second, -1),
             "rail sum mismatch");
      return false;
    }
    return true;
  }

 private:
  std::string expected_text(const RailPattern& x, const RailPattern& y) const {
    BitVector pos = pattern_bits(x.pos + y.pos, p_.pos_int + 1, p_.pos_frac);
    BitVector neg = pattern_bits(x.neg + y.neg, p_.neg_int + 1, p_.neg_frac);
    return decimal_from_bits(pos, +1) + "," + decimal_from_bits(neg, -1);
  }

  PrecisionVector p_;
  AdderChain chain_;
};

}  // namespace

PrecisionVector precision_for_bits(int bits) {
  switch (bits) {
    case 8: return {2, 2, 2, 2};
    case 16: return {4, 4, 4, 4};
    case 32: return {8, 8, 8, 8};
  }
  throw ArgumentError("supported widths are 8, 16 and 32 bits");
}

VerificationReport verify_exhaustive(const PrecisionVector& p,
                                     std::size_t max_failures) {
  if (p.pos_bits() + p.neg_bits() > 8)
    throw ArgumentError("exhaustive verification is limited to 8-bit values");
  auto start = std::chrono::steady_clock::now();
  ChainChecker checker(p);
  VerificationReport report;
  const std::uint64_t pos_lim = 1ull << p.pos_bits();
  const std::uint64_t neg_lim = 1ull << p.neg_bits();
  for (std::uint64_t xp = 0; xp < pos_lim; ++xp)
    for (std::uint64_t xn = 0; xn < neg_lim; ++xn)
      for (std::uint64_t yp = 0; yp < pos_lim; ++yp)
        for (std::uint64_t yn = 0; yn < neg_lim; ++yn)
          checker.check({xp, xn}, {yp, yn}, report, max_failures);
  report.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

VerificationReport verify_sampled(const PrecisionVector& p,
                                  std::uint64_t samples, std::uint64_t seed,
                                  std::size_t max_failures) {
  auto start = std::chrono::steady_clock::now();
  ChainChecker checker(p);
  VerificationReport report;
  report.seed = seed;
  std::mt19937_64 gen(seed);
  auto draw = [&gen](int bits) {
    return bits == 0 ? 0ull : gen() & (~0ull >> (64 - bits));
  };
  for (std::uint64_t i = 0; i < samples; ++i) {
    RailPattern x{draw(p.pos_bits()), draw(p.neg_bits())};
    RailPattern y{draw(p.pos_bits()), draw(p.neg_bits())};
    checker.check(x, y, report, max_failures);
  }
  report.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace vn
