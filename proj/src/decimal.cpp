#include "vn/detail/decimal.hpp"

#include <algorithm>
#include <cctype>

namespace vn::detail {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string strip_leading_zeros(std::string s) {
  auto pos = s.find_first_not_of('0');
  if (pos == std::string::npos) return "0";
  return s.substr(pos);
}

std::string strip_trailing_zeros(std::string s) {
  auto pos = s.find_last_not_of('0');
  if (pos == std::string::npos) return "";
  return s.substr(0, pos + 1);
}

// Magnitude subtraction of aligned digit strings, a >= b.
std::string sub_digits(std::string_view a, std::string_view b) {
  std::string out(a.size(), '0');
  int borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int da = a[a.size() - 1 - i] - '0';
    int db = i < b.size() ? b[b.size() - 1 - i] - '0' : 0;
    int v = da - db - borrow;
    borrow = v < 0;
    if (borrow) v += 10;
    out[a.size() - 1 - i] = static_cast<char>('0' + v);
  }
  return out;
}

std::string add_digits(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(std::max(a.size(), b.size()) + 1);
  int carry = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    int da = i < a.size() ? a[a.size() - 1 - i] - '0' : 0;
    int db = i < b.size() ? b[b.size() - 1 - i] - '0' : 0;
    int v = da + db + carry;
    carry = v / 10;
    out.push_back(static_cast<char>('0' + v % 10));
  }
  if (carry) out.push_back('1');
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

bool split_decimal(std::string_view text, ParsedDecimal& out) {
  out = {};
  if (text.empty()) return false;
  if (text.front() == '+' || text.front() == '-') {
    out.negative = text.front() == '-';
    text.remove_prefix(1);
  }
  auto dot = text.find('.');
  std::string_view ip = dot == std::string_view::npos ? text : text.substr(0, dot);
  std::string_view fp = dot == std::string_view::npos
                            ? std::string_view{}
                            : text.substr(dot + 1);
  if (!all_digits(ip)) return false;
  if (dot != std::string_view::npos && !all_digits(fp)) return false;
  out.int_digits = strip_leading_zeros(std::string(ip));
  out.frac_digits = strip_trailing_zeros(std::string(fp));
  if (out.int_digits == "0" && out.frac_digits.empty()) out.negative = false;
  return true;
}

std::string double_digits(std::string_view digits, int carry_in) {
  std::string out;
  out.reserve(digits.size() + 1);
  int carry = carry_in;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    int v = (digits[digits.size() - 1 - i] - '0') * 2 + carry;
    carry = v / 10;
    out.push_back(static_cast<char>('0' + v % 10));
  }
  if (carry) out.push_back(static_cast<char>('0' + carry));
  std::reverse(out.begin(), out.end());
  return strip_leading_zeros(std::move(out));
}

std::string halve_digits(std::string_view digits, int& rem) {
  std::string out;
  out.reserve(digits.size());
  int carry = 0;
  for (char c : digits) {
    int v = carry * 10 + (c - '0');
    out.push_back(static_cast<char>('0' + v / 2));
    carry = v % 2;
  }
  rem = carry;
  return strip_leading_zeros(std::move(out));
}

std::string int_digits_from_bits(const std::vector<std::uint8_t>& bits) {
  std::string dec = "0";
  for (auto b : bits) dec = double_digits(dec, b);
  return dec;
}

std::string frac_digits_from_bits(const std::vector<std::uint8_t>& bits) {
  // Processes LSB-first: frac := (bit + frac) / 2 keeps the value exact and
  // grows at most one decimal digit per bit.
  std::string frac;
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
    std::string out;
    int carry = *it;
    for (char c : frac) {
      int v = carry * 10 + (c - '0');
      out.push_back(static_cast<char>('0' + v / 2));
      carry = v % 2;
    }
    if (carry) out.push_back('5');
    frac = std::move(out);
  }
  return strip_trailing_zeros(std::move(frac));
}

std::vector<std::uint8_t> bits_from_int_digits(std::string_view digits) {
  std::vector<std::uint8_t> bits;  // built LSB first, reversed at the end
  std::string rest(digits);
  while (rest != "0") {
    int rem = 0;
    rest = halve_digits(rest, rem);
    bits.push_back(static_cast<std::uint8_t>(rem));
  }
  std::reverse(bits.begin(), bits.end());
  return bits;
}

bool bits_from_frac_digits(std::string_view digits, int count,
                           std::vector<std::uint8_t>& out) {
  std::string frac(digits);
  for (int i = 0; i < count; ++i) {
    // frac *= 2; the carry out of the leading digit is the next bit.
    std::string next;
    next.resize(frac.size(), '0');
    int carry = 0;
    for (std::size_t j = 0; j < frac.size(); ++j) {
      int v = (frac[frac.size() - 1 - j] - '0') * 2 + carry;
      next[frac.size() - 1 - j] = static_cast<char>('0' + v % 10);
      carry = v / 10;
    }
    out.push_back(static_cast<std::uint8_t>(carry));
    frac = strip_trailing_zeros(std::move(next));
  }
  return frac.empty();
}

int compare_magnitude(const ParsedDecimal& a, const ParsedDecimal& b) {
  if (a.int_digits.size() != b.int_digits.size())
    return a.int_digits.size() < b.int_digits.size() ? -1 : 1;
  if (int c = a.int_digits.compare(b.int_digits); c != 0) return c < 0 ? -1 : 1;
  // Fraction strings compare lexicographically once padded.
  std::string fa = a.frac_digits, fb = b.frac_digits;
  std::size_t n = std::max(fa.size(), fb.size());
  fa.resize(n, '0');
  fb.resize(n, '0');
  int c = fa.compare(fb);
  return c < 0 ? -1 : c > 0 ? 1 : 0;
}

std::string add_decimal(const ParsedDecimal& a, const ParsedDecimal& b) {
  std::size_t frac_len = std::max(a.frac_digits.size(), b.frac_digits.size());
  auto align = [frac_len](const ParsedDecimal& d) {
    std::string s = d.int_digits + d.frac_digits;
    s.append(frac_len - d.frac_digits.size(), '0');
    return s;
  };
  std::string ma = align(a), mb = align(b);

  bool negative;
  std::string digits;
  if (a.negative == b.negative) {
    negative = a.negative;
    digits = add_digits(ma, mb);
  } else {
    int cmp = compare_magnitude(a, b);
    if (cmp == 0) return "0";
    const bool a_larger = cmp > 0;
    negative = a_larger ? a.negative : b.negative;
    std::size_t n = std::max(ma.size(), mb.size());
    ma.insert(ma.begin(), n - ma.size(), '0');
    mb.insert(mb.begin(), n - mb.size(), '0');
    digits = a_larger ? sub_digits(ma, mb) : sub_digits(mb, ma);
  }

  ParsedDecimal result;
  result.negative = negative;
  if (digits.size() <= frac_len) digits.insert(digits.begin(), frac_len + 1 - digits.size(), '0');
  result.int_digits = strip_leading_zeros(digits.substr(0, digits.size() - frac_len));
  result.frac_digits = strip_trailing_zeros(digits.substr(digits.size() - frac_len));
  return render(result);
}

std::string render(const ParsedDecimal& d) {
  std::string out;
  if (d.negative && !(d.int_digits == "0" && d.frac_digits.empty())) out += '-';
  out += d.int_digits.empty() ? "0" : d.int_digits;
  if (!d.frac_digits.empty()) {
    out += '.';
    out += d.frac_digits;
  }
  return out;
}

}  // namespace vn::detail
