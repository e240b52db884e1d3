#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vn {

/// Exact dyadic rational: mantissa * 2^exponent with a 64-bit signed mantissa.
/// Normalized so the mantissa is odd (or the value is 0 with exponent 0),
/// which makes equality plain member comparison. All arithmetic is exact and
/// throws on 64-bit mantissa overflow instead of rounding.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  explicit Dyadic(std::int64_t integer) : man_(integer) { normalize(); }

  /// mantissa * 2^exponent
  static Dyadic scaled(std::int64_t mantissa, int exponent);

  std::int64_t mantissa() const { return man_; }
  int exponent() const { return exp_; }

  bool is_zero() const { return man_ == 0; }
  bool is_negative() const { return man_ < 0; }
  int sign() const { return man_ < 0 ? -1 : man_ > 0 ? 1 : 0; }

  /// True when 2^exponent divides the value evenly.
  bool is_integer() const { return exp_ >= 0; }

  Dyadic operator-() const;
  Dyadic operator+(const Dyadic& rhs) const;
  Dyadic operator-(const Dyadic& rhs) const { return *this + (-rhs); }
  Dyadic& operator+=(const Dyadic& rhs) { return *this = *this + rhs; }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  std::strong_ordering operator<=>(const Dyadic& rhs) const;

  bool operator>=(std::int64_t v) const { return *this >= Dyadic(v); }

  double to_double() const;

  /// Exact decimal rendering ("-5.25", "3", "0.0009765625").
  std::string to_string() const;

  /// Parses an exact decimal; nullopt if not dyadic or out of mantissa range.
  /// Accepts an optional sign, digits, and an optional fractional part.
  static std::optional<Dyadic> from_decimal(std::string_view text);

 private:
  void normalize();

  std::int64_t man_ = 0;
  std::int32_t exp_ = 0;
};

}  // namespace vn
