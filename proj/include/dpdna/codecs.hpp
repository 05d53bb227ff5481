#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dpdna/bits.hpp"
#include "dpdna/error.hpp"
#include "dpdna/nucleotide.hpp"
#include "dpdna/scheme.hpp"

namespace dpdna {

// One table cell: a single emission, or an ordered pair for the doubled
// pattern of an unbalanced code.
struct Emission {
  Nucleotide first{};
  Nucleotide second{};  // meaningful only when pair
  bool pair = false;
};

// Emission table for one payload scheme. Rows are the previous nucleotide,
// columns the two-bit pattern. Offsets from the previous nucleotide:
//   two_bit: '00'->+1 '01'->+3 '10'->+2 '11'->+0
//   xx code: pattern xx emits the pair (prev, prev+2); '11' takes over the
//   offset freed by xx; the other two patterns keep their two-bit offsets.
class RotatingTable {
 public:
  static const RotatingTable& for_scheme(SchemeId s);

  const Emission& at(Nucleotide prev, unsigned pattern) const {
    return rows_[nt_index(prev)][pattern];
  }
  SchemeId scheme() const { return scheme_; }

  // Pattern for a single emission with the given cyclic offset, or -1. For
  // unbalanced codes offset 0 is the pair marker and has no single.
  int pattern_for_offset(unsigned offset) const { return offset_to_pattern_[offset]; }

  // Row bijectivity, prefix-freeness (pair first element = prev, no single
  // equals prev in xx tables), pair elements distinct. Throws on violation.
  void validate() const;

  // Diagnostic dump: rows = previous nucleotide, columns = patterns.
  std::string dump() const;

 private:
  RotatingTable(SchemeId s);
  SchemeId scheme_;
  std::array<std::array<Emission, 4>, 4> rows_{};
  std::array<int, 4> offset_to_pattern_{};
};

// Encodes `bits` (even length) starting the rotation after `start`. The
// optional out-param reports the final previous nucleotide for callers that
// continue the stream.
DnaSeq table_encode(const RotatingTable& table, const BitVec& bits, Nucleotide start,
                    Nucleotide* end_prev = nullptr);

// Incremental decoder used by strand parsing: one pattern per step.
class TableDecoder {
 public:
  TableDecoder(SchemeId s, Nucleotide start);

  // Decodes the pattern at seq[pos..]; appends two bits to `out` and returns
  // nucleotides consumed (1 or 2). `limit` is one past the last readable
  // position. Throws Error{parse} on a dangling or degenerate pair.
  std::size_t step(const DnaSeq& seq, std::size_t pos, std::size_t limit, BitVec& out);

  Nucleotide prev() const { return prev_; }

 private:
  const RotatingTable* table_;
  Nucleotide prev_;
};

BitVec table_decode(const RotatingTable& table, const DnaSeq& seq, Nucleotide start);

// Named entry points for the individual codes.
DnaSeq two_bit_encode(const BitVec& bits, Nucleotide start);
BitVec two_bit_decode(const DnaSeq& seq, Nucleotide start);
DnaSeq xx_encode(unsigned xx, const BitVec& bits, Nucleotide start);
BitVec xx_decode(unsigned xx, const DnaSeq& seq, Nucleotide start);
DnaSeq scheme_encode(SchemeId s, const BitVec& bits, Nucleotide start);
BitVec scheme_decode(SchemeId s, const DnaSeq& seq, Nucleotide start);

// Density of the xx code on a segment with histogram h:
// 2*total / (total + count[xx]). 2.0 when xx never occurs, 1.6 at uniform.
double xx_density(unsigned xx, const PatternHistogram& h);

// --- metadata fields -------------------------------------------------------
// Index and ECC fields are rendered in base 3 over the scheme's three
// single-emission patterns (one nucleotide per trit, rotation shared with
// the rest of the strand). Unlike feeding raw bits through the scheme, this
// keeps homopolymer runs bounded for arbitrary field contents and gives the
// fields a content-independent size. Bits map to trits in 19-bit chunks of
// 12 trits each (3^12 > 2^19), plus a minimal tail chunk.

std::size_t trit_len_for_bits(std::size_t nbits);
std::array<unsigned, 3> scheme_single_patterns(SchemeId s);
std::vector<std::uint8_t> bits_to_trits(const BitVec& bits);
BitVec trits_from_bits_inverse(std::span<const std::uint8_t> trits, std::size_t nbits);

DnaSeq trit_field_encode(SchemeId s, const BitVec& bits, Nucleotide start,
                         Nucleotide* end_prev = nullptr);
// Reads trit_len_for_bits(nbits) nucleotides at seq[pos..].
BitVec trit_field_decode(SchemeId s, const DnaSeq& seq, std::size_t pos,
                         std::size_t nbits, Nucleotide start,
                         Nucleotide* end_prev = nullptr);

// --- baseline codecs -------------------------------------------------------

// Alternation code: 1 -> A/C, 0 -> T/G, each alternating independently and
// resetting per call. Exactly 1 bit per nucleotide.
DnaSeq church_encode(const BitVec& bits);
BitVec church_decode(const DnaSeq& seq);

// Prefix-free byte-to-trit table (bytes 0..235 take 5 trits, 236..255 take
// 6), then trit t after previous p emits p+1+t cyclically, so no nucleotide
// ever repeats.
std::size_t goldman_trit_count(std::uint8_t byte);
DnaSeq goldman_encode(std::span<const std::uint8_t> bytes, Nucleotide start);
std::vector<std::uint8_t> goldman_decode(const DnaSeq& seq, Nucleotide start);

// Accounting-only fixed-rate reference: ceil(bits / 1.6) nucleotides.
std::uint64_t blawat_nt_count(std::uint64_t bits);

}  // namespace dpdna
