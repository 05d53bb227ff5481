#include "dpdna/codecs.hpp"

#include <algorithm>
#include <sstream>

namespace dpdna {

namespace {

// Cyclic offsets of the plain two-bit code, indexed by pattern value.
constexpr unsigned kTwoBitOffset[4] = {1, 3, 2, 0};

constexpr std::uint64_t kPow3[13] = {1,      3,      9,      27,     81,
                                     243,    729,    2187,   6561,   19683,
                                     59049,  177147, 531441};

constexpr std::size_t kChunkBits = 19;
constexpr std::size_t kChunkTrits = 12;

// Smallest m with 3^m >= 2^k, for tail chunks of k <= 19 bits.
constexpr std::uint8_t kTailTrits[20] = {0, 1, 2, 2, 3, 4, 4, 5, 6, 6,
                                         7, 7, 8, 9, 9, 10, 11, 11, 12, 12};

}  // namespace

RotatingTable::RotatingTable(SchemeId s) : scheme_(s) {
  const auto xx = doubled_pattern(s);
  offset_to_pattern_ = {-1, -1, -1, -1};
  for (unsigned v = 0; v < 4; ++v) {
    unsigned off;
    if (xx && v == *xx) {
      off = 0;  // pair marker; no single uses offset 0 in this table
    } else if (xx && v == 3) {
      off = kTwoBitOffset[*xx];  // '11' inherits the freed offset
    } else {
      off = kTwoBitOffset[v];
    }
    for (unsigned p = 0; p < 4; ++p) {
      Emission& e = rows_[p][v];
      if (xx && v == *xx) {
        e.pair = true;
        e.first = nt_from_index(p);
        e.second = nt_from_index(p + 2);
      } else {
        e.pair = false;
        e.first = nt_from_index(p + off);
      }
    }
    if (!(xx && v == *xx)) offset_to_pattern_[off] = int(v);
  }
}

const RotatingTable& RotatingTable::for_scheme(SchemeId s) {
  if (!is_payload_scheme(s))
    throw Error(ErrorKind::invalid_argument, "no rotating table for this scheme");
  static const RotatingTable tables[kPayloadSchemeCount] = {
      RotatingTable(SchemeId::two_bit), RotatingTable(SchemeId::code00),
      RotatingTable(SchemeId::code01), RotatingTable(SchemeId::code10),
      RotatingTable(SchemeId::code11)};
  return tables[static_cast<unsigned>(s)];
}

void RotatingTable::validate() const {
  const auto xx = doubled_pattern(scheme_);
  for (unsigned p = 0; p < 4; ++p) {
    const Nucleotide prev = nt_from_index(p);
    bool seen[4] = {false, false, false, false};
    for (unsigned v = 0; v < 4; ++v) {
      const Emission& e = rows_[p][v];
      if (e.pair) {
        if (!xx || v != *xx)
          throw Error(ErrorKind::internal, "pair emission outside the doubled pattern");
        if (e.first != prev)
          throw Error(ErrorKind::internal, "pair must start at the previous nucleotide");
        if (e.second == e.first)
          throw Error(ErrorKind::internal, "pair nucleotides must differ");
        continue;
      }
      if (xx && e.first == prev)
        throw Error(ErrorKind::internal,
                    "single emission collides with the pair marker");
      if (seen[nt_index(e.first)])
        throw Error(ErrorKind::internal, "row emissions are not distinct");
      seen[nt_index(e.first)] = true;
    }
  }
}

std::string RotatingTable::dump() const {
  std::ostringstream out;
  out << "scheme " << scheme_name(scheme_) << "\nprev |";
  for (unsigned v = 0; v < 4; ++v) out << "  " << pattern_name(v);
  out << '\n';
  for (unsigned p = 0; p < 4; ++p) {
    out << "   " << nt_char(nt_from_index(p)) << " |";
    for (unsigned v = 0; v < 4; ++v) {
      const Emission& e = rows_[p][v];
      std::string cell(1, nt_char(e.first));
      if (e.pair) cell += nt_char(e.second);
      out << ' ' << cell;
      if (cell.size() == 1) out << ' ';
      out << ' ';
    }
    out << '\n';
  }
  return out.str();
}

DnaSeq table_encode(const RotatingTable& table, const BitVec& bits, Nucleotide start,
                    Nucleotide* end_prev) {
  if (bits.size() % 2 != 0)
    throw Error(ErrorKind::invalid_argument, "encode needs an even bit count");
  DnaSeq out;
  out.reserve(bits.pattern_count() + bits.pattern_count() / 4 + 1);
  Nucleotide prev = start;
  const std::size_t n = bits.pattern_count();
  for (std::size_t k = 0; k < n; ++k) {
    const Emission& e = table.at(prev, bits.pattern(k));
    out.push_back(e.first);
    if (e.pair) out.push_back(e.second);
    prev = out.back();
  }
  if (end_prev) *end_prev = prev;
  return out;
}

TableDecoder::TableDecoder(SchemeId s, Nucleotide start)
    : table_(&RotatingTable::for_scheme(s)), prev_(start) {}

std::size_t TableDecoder::step(const DnaSeq& seq, std::size_t pos, std::size_t limit,
                               BitVec& out) {
  if (pos >= limit) throw Error(ErrorKind::parse, "decode ran past the field end");
  const Nucleotide cur = seq[pos];
  const auto xx = doubled_pattern(table_->scheme());
  if (xx && cur == prev_) {
    if (pos + 1 >= limit)
      throw Error(ErrorKind::parse, "dangling pair at the end of the stream");
    const Nucleotide second = seq[pos + 1];
    if (second == cur)
      throw Error(ErrorKind::parse, "pair starting nucleotide must differ from its second");
    out.append_bits(*xx, 2);
    prev_ = second;
    return 2;
  }
  const unsigned offset = (nt_index(cur) - nt_index(prev_)) & 3u;
  const int pattern = table_->pattern_for_offset(offset);
  if (pattern < 0) throw Error(ErrorKind::parse, "transition not in table row");
  out.append_bits(unsigned(pattern), 2);
  prev_ = cur;
  return 1;
}

BitVec table_decode(const RotatingTable& table, const DnaSeq& seq, Nucleotide start) {
  TableDecoder dec(table.scheme(), start);
  BitVec out;
  std::size_t pos = 0;
  while (pos < seq.size()) pos += dec.step(seq, pos, seq.size(), out);
  return out;
}

DnaSeq two_bit_encode(const BitVec& bits, Nucleotide start) {
  return table_encode(RotatingTable::for_scheme(SchemeId::two_bit), bits, start);
}

BitVec two_bit_decode(const DnaSeq& seq, Nucleotide start) {
  return table_decode(RotatingTable::for_scheme(SchemeId::two_bit), seq, start);
}

DnaSeq xx_encode(unsigned xx, const BitVec& bits, Nucleotide start) {
  return table_encode(RotatingTable::for_scheme(xx_scheme(xx)), bits, start);
}

BitVec xx_decode(unsigned xx, const DnaSeq& seq, Nucleotide start) {
  return table_decode(RotatingTable::for_scheme(xx_scheme(xx)), seq, start);
}

DnaSeq scheme_encode(SchemeId s, const BitVec& bits, Nucleotide start) {
  return table_encode(RotatingTable::for_scheme(s), bits, start);
}

BitVec scheme_decode(SchemeId s, const DnaSeq& seq, Nucleotide start) {
  return table_decode(RotatingTable::for_scheme(s), seq, start);
}

double xx_density(unsigned xx, const PatternHistogram& h) {
  const std::uint64_t total = h.total();
  if (total == 0) throw Error(ErrorKind::invalid_argument, "density of an empty segment");
  return 2.0 * double(total) / double(total + h.count[xx & 3u]);
}

// --- metadata fields --------------------------------------------------------

std::size_t trit_len_for_bits(std::size_t nbits) {
  return (nbits / kChunkBits) * kChunkTrits + kTailTrits[nbits % kChunkBits];
}

std::array<unsigned, 3> scheme_single_patterns(SchemeId s) {
  const auto xx = doubled_pattern(s);
  const unsigned skip = xx ? *xx : 3u;  // two_bit leaves out '11'
  std::array<unsigned, 3> out{};
  unsigned n = 0;
  for (unsigned v = 0; v < 4; ++v)
    if (v != skip) out[n++] = v;
  return out;
}

std::vector<std::uint8_t> bits_to_trits(const BitVec& bits) {
  std::vector<std::uint8_t> out;
  out.reserve(trit_len_for_bits(bits.size()));
  std::size_t pos = 0;
  while (pos < bits.size()) {
    const std::size_t k = std::min(kChunkBits, bits.size() - pos);
    const std::uint64_t value = bits.read_bits(pos, unsigned(k));
    const unsigned m = kTailTrits[k];
    for (unsigned i = m; i-- > 0;)
      out.push_back(std::uint8_t((value / kPow3[i]) % 3));
    pos += k;
  }
  return out;
}

BitVec trits_from_bits_inverse(std::span<const std::uint8_t> trits, std::size_t nbits) {
  BitVec out;
  std::size_t bit_pos = 0, trit_pos = 0;
  while (bit_pos < nbits) {
    const std::size_t k = std::min(kChunkBits, nbits - bit_pos);
    const unsigned m = kTailTrits[k];
    if (trit_pos + m > trits.size())
      throw Error(ErrorKind::parse, "truncated metadata field");
    std::uint64_t value = 0;
    for (unsigned i = 0; i < m; ++i) {
      const std::uint8_t t = trits[trit_pos + i];
      if (t > 2) throw Error(ErrorKind::parse, "invalid trit");
      value = value * 3 + t;
    }
    if (k < 64 && value >= (std::uint64_t(1) << k))
      throw Error(ErrorKind::parse, "metadata field out of range");
    out.append_bits(value, unsigned(k));
    bit_pos += k;
    trit_pos += m;
  }
  return out;
}

DnaSeq trit_field_encode(SchemeId s, const BitVec& bits, Nucleotide start,
                         Nucleotide* end_prev) {
  const RotatingTable& table = RotatingTable::for_scheme(s);
  const auto singles = scheme_single_patterns(s);
  DnaSeq out;
  Nucleotide prev = start;
  for (std::uint8_t t : bits_to_trits(bits)) {
    const Emission& e = table.at(prev, singles[t]);
    out.push_back(e.first);
    prev = e.first;
  }
  if (end_prev) *end_prev = prev;
  return out;
}

BitVec trit_field_decode(SchemeId s, const DnaSeq& seq, std::size_t pos,
                         std::size_t nbits, Nucleotide start, Nucleotide* end_prev) {
  const RotatingTable& table = RotatingTable::for_scheme(s);
  const auto singles = scheme_single_patterns(s);
  const std::size_t n = trit_len_for_bits(nbits);
  if (pos + n > seq.size())
    throw Error(ErrorKind::parse, "truncated metadata field");
  std::vector<std::uint8_t> trits;
  trits.reserve(n);
  Nucleotide prev = start;
  for (std::size_t i = 0; i < n; ++i) {
    const Nucleotide cur = seq[pos + i];
    const unsigned offset = (nt_index(cur) - nt_index(prev)) & 3u;
    const int pattern = table.pattern_for_offset(offset);
    int trit = -1;
    for (unsigned t = 0; t < 3; ++t)
      if (pattern >= 0 && singles[t] == unsigned(pattern)) trit = int(t);
    if (trit < 0)
      throw Error(ErrorKind::parse, "nucleotide outside the metadata alphabet");
    trits.push_back(std::uint8_t(trit));
    prev = cur;
  }
  if (end_prev) *end_prev = prev;
  return trits_from_bits_inverse(trits, nbits);
}

// --- baseline codecs --------------------------------------------------------

DnaSeq church_encode(const BitVec& bits) {
  DnaSeq out;
  out.reserve(bits.size());
  bool one_toggle = false, zero_toggle = false;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits.bit(i)) {
      out.push_back(one_toggle ? Nucleotide::C : Nucleotide::A);
      one_toggle = !one_toggle;
    } else {
      out.push_back(zero_toggle ? Nucleotide::G : Nucleotide::T);
      zero_toggle = !zero_toggle;
    }
  }
  return out;
}

BitVec church_decode(const DnaSeq& seq) {
  BitVec out;
  for (Nucleotide n : seq)
    out.push_back(n == Nucleotide::A || n == Nucleotide::C);
  return out;
}

std::size_t goldman_trit_count(std::uint8_t byte) { return byte < 236 ? 5 : 6; }

namespace {

void goldman_byte_trits(std::uint8_t byte, std::vector<std::uint8_t>& out) {
  // Bytes 0..235 are the 5-trit codewords in lexicographic order; 5-trit
  // values 236..242 are reserved prefixes of the 6-trit codewords.
  unsigned value, len;
  if (byte < 236) {
    value = byte;
    len = 5;
  } else {
    const unsigned k = byte - 236u;
    value = (236u + k / 3u) * 3u + k % 3u;
    len = 6;
  }
  for (unsigned i = len; i-- > 0;)
    out.push_back(std::uint8_t((value / kPow3[i]) % 3));
}

}  // namespace

DnaSeq goldman_encode(std::span<const std::uint8_t> bytes, Nucleotide start) {
  std::vector<std::uint8_t> trits;
  trits.reserve(bytes.size() * 6);
  for (std::uint8_t b : bytes) goldman_byte_trits(b, trits);
  DnaSeq out;
  out.reserve(trits.size());
  Nucleotide prev = start;
  for (std::uint8_t t : trits) {
    prev = rotate(prev, 1u + t);
    out.push_back(prev);
  }
  return out;
}

std::vector<std::uint8_t> goldman_decode(const DnaSeq& seq, Nucleotide start) {
  std::vector<std::uint8_t> trits;
  trits.reserve(seq.size());
  Nucleotide prev = start;
  for (Nucleotide cur : seq) {
    const unsigned offset = (nt_index(cur) - nt_index(prev)) & 3u;
    if (offset == 0)
      throw Error(ErrorKind::parse, "repeated nucleotide is not a valid transition");
    trits.push_back(std::uint8_t(offset - 1));
    prev = cur;
  }
  std::vector<std::uint8_t> out;
  std::size_t pos = 0;
  while (pos < trits.size()) {
    if (pos + 5 > trits.size())
      throw Error(ErrorKind::parse, "dangling trits at the end of the stream");
    unsigned value = 0;
    for (unsigned i = 0; i < 5; ++i) value = value * 3 + trits[pos + i];
    pos += 5;
    if (value < 236) {
      out.push_back(std::uint8_t(value));
      continue;
    }
    if (pos >= trits.size())
      throw Error(ErrorKind::parse, "dangling trits at the end of the stream");
    const unsigned byte = 236u + (value - 236u) * 3u + trits[pos++];
    if (byte > 255) throw Error(ErrorKind::parse, "trit sequence matches no codeword");
    out.push_back(std::uint8_t(byte));
  }
  return out;
}

std::uint64_t blawat_nt_count(std::uint64_t bits) { return (bits * 5 + 7) / 8; }

}  // namespace dpdna
