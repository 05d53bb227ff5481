#include "dpdna/strand.hpp"

#include <zlib.h>

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "dpdna/codecs.hpp"

namespace dpdna {

DnaSeq encode_scheme_field(std::uint8_t wire_id, Nucleotide start) {
  BitVec bits;
  bits.append_bits(wire_id, 4);
  DnaSeq out = table_encode(RotatingTable::for_scheme(SchemeId::code11), bits, start);
  if (out.size() != 2)
    throw Error(ErrorKind::internal, "scheme field must render to two nucleotides");
  return out;
}

BitVec ecc_fill(std::uint64_t index, SchemeId scheme, const BitVec& payload,
                std::size_t ecc_bits) {
  std::vector<std::uint8_t> buf;
  buf.reserve(17 + payload.size() / 8 + 1);
  for (unsigned i = 0; i < 8; ++i) buf.push_back(std::uint8_t(index >> (8 * i)));
  buf.push_back(scheme_wire_id(scheme));
  const std::uint64_t nbits = payload.size();
  for (unsigned i = 0; i < 8; ++i) buf.push_back(std::uint8_t(nbits >> (8 * i)));
  const std::vector<std::uint8_t> body = payload.to_bytes();
  buf.insert(buf.end(), body.begin(), body.end());

  std::uint32_t crc = std::uint32_t(crc32(0L, Z_NULL, 0));
  crc = std::uint32_t(crc32(crc, buf.data(), uInt(buf.size())));

  const std::uint8_t word[4] = {std::uint8_t(crc >> 24), std::uint8_t(crc >> 16),
                                std::uint8_t(crc >> 8), std::uint8_t(crc)};
  std::vector<std::uint8_t> fill((ecc_bits + 7) / 8);
  for (std::size_t i = 0; i < fill.size(); ++i) fill[i] = word[i % 4];
  return BitVec::from_bytes(fill).slice(0, ecc_bits);
}

StrandRecord assemble_strand(const BitVec& segment, std::uint64_t index,
                             const CodeChoice& choice, const SystemConfig& cfg) {
  if (choice.bits_used == 0 || choice.bits_used > segment.size())
    throw Error(ErrorKind::invalid_argument, "choice does not match the segment");
  if (cfg.index_bits < 64 && index >= (std::uint64_t(1) << cfg.index_bits))
    throw Error(ErrorKind::capacity, "strand index exceeds the index field", {index});

  StrandRecord rec;
  rec.index = index;
  rec.scheme = choice.scheme;
  rec.payload_bits = segment.slice(0, choice.bits_used);

  Nucleotide prev = cfg.start_nt();
  const DnaSeq enc = encode_scheme_field(scheme_wire_id(choice.scheme), prev);
  prev = enc.back();

  BitVec index_bits;
  index_bits.append_bits(index, unsigned(cfg.index_bits));
  const DnaSeq idx_nt = trit_field_encode(choice.scheme, index_bits, prev, &prev);

  const RotatingTable& table = RotatingTable::for_scheme(choice.scheme);
  const DnaSeq payload_nt = table_encode(table, rec.payload_bits, prev, &prev);

  const std::size_t ecc_bits = cfg.ecc_bits_for(choice.bits_used);
  const BitVec ecc = ecc_fill(index, choice.scheme, rec.payload_bits, ecc_bits);
  const DnaSeq ecc_nt = trit_field_encode(choice.scheme, ecc, prev, &prev);

  DnaSeq& seq = rec.full_seq;
  seq.reserve(cfg.primer_forward.size() + 2 + idx_nt.size() + payload_nt.size() +
              ecc_nt.size() + cfg.primer_reverse.size());
  auto put = [&seq](const DnaSeq& part) {
    const std::uint32_t off = std::uint32_t(seq.size());
    seq.insert(seq.end(), part.begin(), part.end());
    return FieldSpan{off, std::uint32_t(part.size())};
  };
  rec.layout.primer_f = put(cfg.primer_forward);
  rec.layout.encoding = put(enc);
  rec.layout.index = put(idx_nt);
  rec.layout.payload = put(payload_nt);
  rec.layout.ecc = put(ecc_nt);
  rec.layout.primer_r = put(cfg.primer_reverse);

  if (seq.size() > cfg.strand_cap_nt)
    throw Error(ErrorKind::capacity,
                "assembled strand of " + std::to_string(seq.size()) +
                    " nt exceeds the cap of " + std::to_string(cfg.strand_cap_nt),
                {index});
  return rec;
}

namespace {

SchemeId decode_scheme_field(const DnaSeq& seq, std::size_t pos, Nucleotide start,
                             Nucleotide* end_prev) {
  const RotatingTable& table = RotatingTable::for_scheme(SchemeId::code11);
  std::uint8_t id = 0;
  Nucleotide prev = start;
  for (unsigned i = 0; i < 2; ++i) {
    const Nucleotide cur = seq[pos + i];
    const unsigned offset = (nt_index(cur) - nt_index(prev)) & 3u;
    const int pattern = table.pattern_for_offset(offset);
    if (pattern < 0) throw Error(ErrorKind::parse, "malformed scheme field");
    id = std::uint8_t((id << 2) | unsigned(pattern));
    prev = cur;
  }
  const auto scheme = scheme_from_wire(id);
  if (!scheme) throw Error(ErrorKind::parse, "unknown scheme id");
  if (end_prev) *end_prev = prev;
  return *scheme;
}

}  // namespace

StrandRecord parse_strand(const DnaSeq& seq, const SystemConfig& cfg) {
  const std::size_t pf = cfg.primer_forward.size();
  const std::size_t pr = cfg.primer_reverse.size();
  const std::size_t idx_nt = trit_len_for_bits(cfg.index_bits);
  if (seq.size() < pf + 2 + idx_nt + pr)
    throw Error(ErrorKind::parse, "strand shorter than its fixed fields");

  if (!std::equal(cfg.primer_forward.begin(), cfg.primer_forward.end(), seq.begin()))
    throw Error(ErrorKind::parse, "forward primer mismatch");
  if (!std::equal(cfg.primer_reverse.begin(), cfg.primer_reverse.end(),
                  seq.end() - std::ptrdiff_t(pr)))
    throw Error(ErrorKind::parse, "reverse primer mismatch");

  StrandRecord rec;
  rec.full_seq = seq;
  rec.layout.primer_f = {0, std::uint32_t(pf)};
  rec.layout.primer_r = {std::uint32_t(seq.size() - pr), std::uint32_t(pr)};

  Nucleotide prev = cfg.start_nt();
  std::size_t pos = pf;
  rec.scheme = decode_scheme_field(seq, pos, prev, &prev);
  rec.layout.encoding = {std::uint32_t(pos), 2};
  pos += 2;

  const BitVec index_field =
      trit_field_decode(rec.scheme, seq, pos, cfg.index_bits, prev, &prev);
  rec.index = index_field.read_bits(0, unsigned(cfg.index_bits));
  rec.layout.index = {std::uint32_t(pos), std::uint32_t(idx_nt)};
  pos += idx_nt;

  // Payload/ECC boundary: remaining nucleotides shrink strictly faster than
  // the ECC field implied by the payload decoded so far can grow, so at most
  // one split point fits exactly.
  const std::size_t region_end = seq.size() - pr;
  TableDecoder dec(rec.scheme, prev);
  BitVec payload;
  const std::uint32_t payload_start = std::uint32_t(pos);
  for (;;) {
    const std::size_t remaining = region_end - pos;
    const std::size_t need = trit_len_for_bits(cfg.ecc_bits_for(payload.size()));
    if (remaining == need) break;
    if (remaining < need)
      throw Error(ErrorKind::parse, "no consistent payload split",
                  {rec.index});
    pos += dec.step(seq, pos, region_end, payload);
  }
  rec.payload_bits = payload;
  rec.layout.payload = {payload_start, std::uint32_t(pos - payload_start)};
  prev = dec.prev();

  const std::size_t ecc_bits = cfg.ecc_bits_for(payload.size());
  const BitVec ecc = trit_field_decode(rec.scheme, seq, pos, ecc_bits, prev, &prev);
  rec.layout.ecc = {std::uint32_t(pos), std::uint32_t(region_end - pos)};
  const BitVec expect = ecc_fill(rec.index, rec.scheme, payload, ecc_bits);
  if (!(ecc == expect))
    throw Error(ErrorKind::integrity, "checksum mismatch", {rec.index});
  return rec;
}

std::string fasta_header(const StrandRecord& r) {
  std::ostringstream out;
  out << '>' << r.index << '|' << wire_id_string(r.scheme) << '|' << r.full_seq.size();
  return out.str();
}

void write_fasta(std::ostream& out, std::span<const StrandRecord> records) {
  for (const StrandRecord& r : records)
    out << fasta_header(r) << '\n' << to_string(r.full_seq) << '\n';
}

std::vector<FastaEntry> read_fasta(std::istream& in) {
  std::vector<FastaEntry> entries;
  std::string line;
  std::string pending_seq;
  bool open = false;
  auto flush = [&] {
    if (!open) return;
    if (pending_seq.empty())
      throw Error(ErrorKind::parse, "record without a sequence line");
    entries.back().seq = parse_dna(pending_seq);
    pending_seq.clear();
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '>') {
      flush();
      entries.push_back(FastaEntry{line.substr(1), {}});
      open = true;
      continue;
    }
    if (!open) throw Error(ErrorKind::parse, "sequence data before the first header");
    pending_seq += line;
  }
  flush();
  return entries;
}

}  // namespace dpdna
