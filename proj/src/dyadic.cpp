#include "vn/dyadic.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "vn/detail/decimal.hpp"
#include "vn/errors.hpp"

namespace vn {

namespace {

constexpr std::int64_t kMaxMan = std::numeric_limits<std::int64_t>::max();

// Shifts mantissa left by k, throwing instead of wrapping.
std::int64_t checked_shift(std::int64_t man, int k) {
  if (man == 0) return 0;
  if (k >= 63) throw Error("dyadic overflow: exponent spread too large");
  auto wide = static_cast<__int128>(man) << k;
  if (wide > kMaxMan || wide < -static_cast<__int128>(kMaxMan) - 1)
    throw Error("dyadic overflow: mantissa exceeds 64 bits");
  return static_cast<std::int64_t>(wide);
}

}  // namespace

void Dyadic::normalize() {
  if (man_ == 0) {
    exp_ = 0;
    return;
  }
  while ((man_ & 1) == 0) {
    man_ >>= 1;
    ++exp_;
  }
}

Dyadic Dyadic::scaled(std::int64_t mantissa, int exponent) {
  Dyadic d;
  d.man_ = mantissa;
  d.exp_ = exponent;
  d.normalize();
  return d;
}

Dyadic Dyadic::operator-() const {
  if (man_ == std::numeric_limits<std::int64_t>::min())
    throw Error("dyadic overflow: negation");
  return scaled(-man_, exp_);
}

Dyadic Dyadic::operator+(const Dyadic& rhs) const {
  if (man_ == 0) return rhs;
  if (rhs.man_ == 0) return *this;
  int e = std::min(exp_, rhs.exp_);
  auto a = static_cast<__int128>(checked_shift(man_, exp_ - e));
  auto b = static_cast<__int128>(checked_shift(rhs.man_, rhs.exp_ - e));
  auto sum = a + b;
  if (sum > kMaxMan || sum < -static_cast<__int128>(kMaxMan) - 1)
    throw Error("dyadic overflow: addition");
  return scaled(static_cast<std::int64_t>(sum), e);
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& rhs) const {
  if (sign() != rhs.sign()) return sign() <=> rhs.sign();
  if (man_ == 0) return std::strong_ordering::equal;
  // Same sign: compare aligned mantissas in 128 bits.
  int e = std::min(exp_, rhs.exp_);
  int ka = exp_ - e, kb = rhs.exp_ - e;
  // One side may need a shift beyond 126 bits only when magnitudes are wildly
  // apart, in which case the larger exponent side dominates.
  if (ka > 62 || kb > 62) {
    bool lhs_wider = ka > kb;
    bool positive = man_ > 0;
    if (lhs_wider) return positive ? std::strong_ordering::greater : std::strong_ordering::less;
    return positive ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  auto a = static_cast<__int128>(man_) << ka;
  auto b = static_cast<__int128>(rhs.man_) << kb;
  return a < b ? std::strong_ordering::less
         : a > b ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

double Dyadic::to_double() const {
  return std::ldexp(static_cast<double>(man_), exp_);
}

std::string Dyadic::to_string() const {
  if (man_ == 0) return "0";
  std::uint64_t mag = man_ < 0 ? -static_cast<std::uint64_t>(man_)
                               : static_cast<std::uint64_t>(man_);
  // Binary digits of the magnitude, MSB first.
  std::vector<std::uint8_t> bits;
  for (int i = 63; i >= 0; --i)
    if (mag >> i & 1 || !bits.empty()) bits.push_back(mag >> i & 1);

  std::vector<std::uint8_t> int_bits, frac_bits;
  if (exp_ >= 0) {
    int_bits = bits;
    int_bits.insert(int_bits.end(), exp_, 0);
  } else {
    int split = static_cast<int>(bits.size()) + exp_;
    if (split < 0) {
      frac_bits.assign(-split, 0);
      frac_bits.insert(frac_bits.end(), bits.begin(), bits.end());
    } else {
      int_bits.assign(bits.begin(), bits.begin() + split);
      frac_bits.assign(bits.begin() + split, bits.end());
    }
  }

  detail::ParsedDecimal d;
  d.negative = man_ < 0;
  d.int_digits = detail::int_digits_from_bits(int_bits);
  d.frac_digits = detail::frac_digits_from_bits(frac_bits);
  return detail::render(d);
}

std::optional<Dyadic> Dyadic::from_decimal(std::string_view text) {
  detail::ParsedDecimal d;
  if (!detail::split_decimal(text, d)) return std::nullopt;

  auto int_bits = detail::bits_from_int_digits(d.int_digits);
  std::vector<std::uint8_t> frac_bits;
  // 63 fraction bits bound the mantissa; finite decimals that need more are
  // either non-dyadic or out of range either way.
  if (!detail::bits_from_frac_digits(d.frac_digits, 63, frac_bits))
    return std::nullopt;
  while (!frac_bits.empty() && frac_bits.back() == 0) frac_bits.pop_back();

  if (int_bits.size() + frac_bits.size() > 63) return std::nullopt;
  std::int64_t man = 0;
  for (auto b : int_bits) man = man << 1 | b;
  for (auto b : frac_bits) man = man << 1 | b;
  if (d.negative) man = -man;
  return scaled(man, -static_cast<int>(frac_bits.size()));
}

}  // namespace vn
