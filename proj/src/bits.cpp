#include "dpdna/bits.hpp"

namespace dpdna {

BitVec BitVec::from_bytes(const std::uint8_t* data, std::size_t size) {
  BitVec v;
  v.bytes_.assign(data, data + size);
  v.nbits_ = size * 8;
  return v;
}

BitVec BitVec::from_bytes(const std::vector<std::uint8_t>& bytes) {
  return from_bytes(bytes.data(), bytes.size());
}

BitVec BitVec::from_string(std::string_view bits) {
  BitVec v;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw Error(ErrorKind::invalid_argument, "bit string must contain only 0/1");
    v.push_back(c == '1');
  }
  return v;
}

void BitVec::push_back(bool b) {
  if ((nbits_ & 7u) == 0) bytes_.push_back(0);
  if (b) bytes_[nbits_ >> 3] |= std::uint8_t(1u << (7u - (nbits_ & 7u)));
  ++nbits_;
}

void BitVec::append(const BitVec& other) {
  if ((nbits_ & 7u) == 0) {
    bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
    nbits_ += other.nbits_;
    return;
  }
  for (std::size_t i = 0; i < other.nbits_; ++i) push_back(other.bit(i));
}

void BitVec::append_bits(std::uint64_t value, unsigned nbits) {
  for (unsigned i = nbits; i-- > 0;) push_back((value >> i) & 1u);
}

std::uint64_t BitVec::read_bits(std::size_t pos, unsigned nbits) const {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < nbits; ++i) v = (v << 1) | std::uint64_t(bit(pos + i));
  return v;
}

BitVec BitVec::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > nbits_)
    throw Error(ErrorKind::invalid_argument, "bit slice out of range");
  BitVec out;
  out.bytes_.reserve((len + 7) / 8);
  for (std::size_t i = 0; i < len; ++i) out.push_back(bit(pos + i));
  return out;
}

std::vector<std::uint8_t> BitVec::to_bytes() const { return bytes_; }

std::string BitVec::to_string() const {
  std::string out;
  out.reserve(nbits_);
  for (std::size_t i = 0; i < nbits_; ++i) out.push_back(bit(i) ? '1' : '0');
  return out;
}

PatternHistogram pattern_histogram(const BitVec& bits) {
  if (bits.size() % 2 != 0)
    throw Error(ErrorKind::invalid_argument, "pattern histogram needs an even bit count");
  PatternHistogram h;
  const std::size_t n = bits.pattern_count();
  for (std::size_t k = 0; k < n; ++k) ++h.count[bits.pattern(k)];
  return h;
}

const char* pattern_name(unsigned pattern) {
  static const char* names[4] = {"00", "01", "10", "11"};
  return names[pattern & 3u];
}

}  // namespace dpdna
