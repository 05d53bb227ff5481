#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dpdna/bits.hpp"
#include "dpdna/config.hpp"
#include "dpdna/nucleotide.hpp"
#include "dpdna/scheme.hpp"
#include "dpdna/selector.hpp"

namespace dpdna {

struct FieldSpan {
  std::uint32_t offset = 0;
  std::uint32_t length = 0;
};

// Field order on the wire: primerF | Encoding | index | payload | ECC | primerR.
struct StrandLayout {
  FieldSpan primer_f, encoding, index, payload, ecc, primer_r;
};

struct StrandRecord {
  std::uint64_t index = 0;
  SchemeId scheme = SchemeId::two_bit;
  BitVec payload_bits;
  DnaSeq full_seq;
  StrandLayout layout{};
};

// Two-nucleotide Encoding field: the 4-bit wire id under the 11-code,
// rotating from `start` (the forward primer's last nucleotide). Ids contain
// no '11' pattern, so the field is always two single emissions.
DnaSeq encode_scheme_field(std::uint8_t wire_id, Nucleotide start);

// Deterministic integrity filler: CRC-32 of (index, wire id, payload length,
// payload bytes), repeated/truncated to ecc_bits.
BitVec ecc_fill(std::uint64_t index, SchemeId scheme, const BitVec& payload,
                std::size_t ecc_bits);

// `segment` must be the bits choose_code saw; only choice.bits_used of them
// are consumed. Throws Error{capacity} when the strand exceeds the cap.
StrandRecord assemble_strand(const BitVec& segment, std::uint64_t index,
                             const CodeChoice& choice, const SystemConfig& cfg);

// Inverse of assemble_strand for a single strand in isolation. Splits
// payload from ECC by the unique point where the remaining nucleotides
// exactly fit the ECC field implied by the payload bits so far. Throws
// Error{parse} on structural damage and Error{integrity} (with the claimed
// index) on checksum mismatch.
StrandRecord parse_strand(const DnaSeq& seq, const SystemConfig& cfg);

// FASTA-like records: ">" index "|" wire-id "|" total-nt, one sequence line.
void write_fasta(std::ostream& out, std::span<const StrandRecord> records);
std::string fasta_header(const StrandRecord& r);

struct FastaEntry {
  std::string header;
  DnaSeq seq;
};
std::vector<FastaEntry> read_fasta(std::istream& in);

}  // namespace dpdna
