#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Exact schoolbook arithmetic on decimal digit strings. Widths here are
// unbounded so the text codecs never overflow, no matter the rail precision.
namespace vn::detail {

struct ParsedDecimal {
  bool negative = false;
  std::string int_digits;   // no leading zeros ("0" when empty)
  std::string frac_digits;  // trailing zeros stripped, may be empty
};

/// Splits "-12.0350" into sign / "12" / "035". Returns false on syntax error.
bool split_decimal(std::string_view text, ParsedDecimal& out);

/// digits := digits * 2 + carry_in; digits are big-endian, no leading zeros.
std::string double_digits(std::string_view digits, int carry_in);

/// digits := digits / 2, remainder returned through rem.
std::string halve_digits(std::string_view digits, int& rem);

/// Integer part of a binary expansion, MSB first, as decimal digits.
std::string int_digits_from_bits(const std::vector<std::uint8_t>& bits);

/// Fraction bits (MSB first, weight 2^-1 downward) as exact decimal digits.
std::string frac_digits_from_bits(const std::vector<std::uint8_t>& bits);

/// Converts decimal int digits to bits (MSB first). Width is as needed.
std::vector<std::uint8_t> bits_from_int_digits(std::string_view digits);

/// Extracts `count` fraction bits from decimal fraction digits.
/// Returns false when digits remain afterwards (value not representable).
bool bits_from_frac_digits(std::string_view digits, int count,
                           std::vector<std::uint8_t>& out);

/// Exact (int_digits, frac_digits) magnitude comparison: -1, 0, +1.
int compare_magnitude(const ParsedDecimal& a, const ParsedDecimal& b);

/// Exact signed sum of two decimals, rendered back to decimal text.
std::string add_decimal(const ParsedDecimal& a, const ParsedDecimal& b);

/// Renders a ParsedDecimal ("-", "12", "5") as "-12.5".
std::string render(const ParsedDecimal& d);

}  // namespace vn::detail
