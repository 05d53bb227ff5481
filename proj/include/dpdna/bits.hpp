#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dpdna/error.hpp"

namespace dpdna {

// Packed bit string, MSB-first within each byte: bit 0 of the vector is the
// most significant bit of byte 0. Matches how file bytes become patterns.
class BitVec {
 public:
  BitVec() = default;

  static BitVec from_bytes(const std::uint8_t* data, std::size_t size);
  static BitVec from_bytes(const std::vector<std::uint8_t>& bytes);
  static BitVec from_string(std::string_view bits);  // '0'/'1' only

  std::size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  bool bit(std::size_t i) const {
    return (bytes_[i >> 3] >> (7u - (i & 7u))) & 1u;
  }

  // Two-bit pattern k covers bits 2k and 2k+1; bit 2k is the high bit, so a
  // bit string "10" is pattern value 2.
  unsigned pattern(std::size_t k) const {
    const std::size_t i = k << 1;
    return (bytes_[i >> 3] >> (6u - (i & 7u))) & 3u;
  }
  std::size_t pattern_count() const { return nbits_ / 2; }

  void push_back(bool b);
  void append(const BitVec& other);
  // Appends the low `nbits` bits of `value`, most significant first.
  void append_bits(std::uint64_t value, unsigned nbits);
  std::uint64_t read_bits(std::size_t pos, unsigned nbits) const;

  BitVec slice(std::size_t pos, std::size_t len) const;

  // Pads the final partial byte with zero bits.
  std::vector<std::uint8_t> to_bytes() const;
  std::string to_string() const;

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.nbits_ == b.nbits_ && a.bytes_ == b.bytes_;
  }

 private:
  std::vector<std::uint8_t> bytes_;  // trailing slack bits always zero
  std::size_t nbits_ = 0;
};

// Counts of the four two-bit patterns; index is the pattern value.
struct PatternHistogram {
  std::array<std::uint64_t, 4> count{0, 0, 0, 0};

  std::uint64_t total() const { return count[0] + count[1] + count[2] + count[3]; }
  friend bool operator==(const PatternHistogram&, const PatternHistogram&) = default;
};

// Requires even length.
PatternHistogram pattern_histogram(const BitVec& bits);

const char* pattern_name(unsigned pattern);  // "00".."11"

}  // namespace dpdna
