#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sclab/errors.hpp"

namespace sclab {

// Append-only bit string with fixed-width big-endian fields.
class BitString {
 public:
  BitString() = default;

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_.at(i); }

  void push_bit(bool b) { bits_.push_back(b); }

  void push(std::uint64_t value, unsigned width) {
    require(width == 64 || value < (std::uint64_t{1} << width), "value does not fit in field width");
    for (unsigned k = width; k-- > 0;) bits_.push_back(((value >> k) & 1U) != 0);
  }

  void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }

  // Reads `width` bits starting at `pos`; throws on overrun.
  std::uint64_t read(std::size_t pos, unsigned width) const {
    if (pos + width > bits_.size()) throw ContractViolation("bit string too short for requested field");
    std::uint64_t v = 0;
    for (unsigned k = 0; k < width; ++k) v = (v << 1U) | (bits_[pos + k] ? 1U : 0U);
    return v;
  }

  // Bits packed MSB-first into nibbles; the final nibble is zero padded.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (std::size_t i = 0; i < bits_.size(); i += 4) {
      unsigned nibble = 0;
      for (std::size_t k = 0; k < 4; ++k) {
        nibble <<= 1U;
        if (i + k < bits_.size() && bits_[i + k]) nibble |= 1U;
      }
      out.push_back(kDigits[nibble]);
    }
    return out;
  }

  static BitString from_hex(std::string_view hex, std::size_t bit_length) {
    require(hex.size() == (bit_length + 3) / 4, "hex length does not match bit length");
    BitString b;
    for (std::size_t i = 0; i < hex.size(); ++i) {
      const char c = hex[i];
      unsigned nibble = 0;
      if (c >= '0' && c <= '9') {
        nibble = static_cast<unsigned>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        nibble = static_cast<unsigned>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        nibble = static_cast<unsigned>(c - 'A' + 10);
      } else {
        throw PreconditionError("invalid hex digit in bit string");
      }
      for (unsigned k = 4; k-- > 0;) {
        if (b.size() < bit_length) {
          b.push_bit(((nibble >> k) & 1U) != 0);
        } else {
          require(((nibble >> k) & 1U) == 0, "non-zero padding in hex bit string");
        }
      }
    }
    return b;
  }

  std::string to_binary() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  static BitString from_binary(std::string_view s) {
    BitString b;
    for (char c : s) {
      require(c == '0' || c == '1', "binary bit string must contain only 0 and 1");
      b.push_bit(c == '1');
    }
    return b;
  }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString& a, const BitString& b) { return a.bits_ <=> b.bits_; }

 private:
  std::vector<bool> bits_;
};

// ceil(log2(n)) for n >= 1.
constexpr unsigned ceil_log2(std::uint64_t n) noexcept {
  unsigned w = 0;
  while ((std::uint64_t{1} << w) < n) ++w;
  return w;
}

}  // namespace sclab
