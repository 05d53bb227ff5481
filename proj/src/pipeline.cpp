#include "dpdna/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "dpdna/codecs.hpp"
#include "dpdna/selector.hpp"

namespace dpdna {

using nlohmann::json;

// --- encode ------------------------------------------------------------------

EncodeResult encode_bytes(std::span<const std::uint8_t> data, const SystemConfig& cfg,
                          std::string_view source_name, bool audit) {
  cfg.validate();
  const std::uint32_t L = cfg.effective_segment_bits();
  const Nucleotide start = cfg.start_nt();

  BitVec bits = BitVec::from_bytes(data.data(), data.size());
  const std::uint64_t bit_length = bits.size();
  std::uint32_t padded = 0;
  if (bits.size() % 2 != 0) {
    bits.push_back(false);
    padded = 1;
  }

  EncodeResult result;
  result.manifest.source_name = std::string(source_name);
  result.manifest.byte_length = data.size();
  result.manifest.bit_length = bit_length;
  result.manifest.padded_bits = padded;
  result.manifest.config = cfg;
  result.manifest.effective_segment_bits = L;

  std::uint64_t pos = 0, index = 0;
  while (pos < bits.size()) {
    const std::uint64_t take = std::min<std::uint64_t>(L, bits.size() - pos);
    const BitVec segment = bits.slice(pos, take);
    const CodeChoice choice = choose_code(segment, start, cfg);
    StrandRecord rec = assemble_strand(segment, index, choice, cfg);

    result.manifest.strands.push_back(
        {index, choice.scheme, std::uint32_t(choice.bits_used)});
    result.manifest.payload_bits_total += choice.bits_used;
    result.manifest.payload_nt_total += rec.layout.payload.length;
    result.manifest.strand_nt_total += rec.full_seq.size();

    if (audit) {
      json a;
      a["index"] = index;
      a["scheme"] = scheme_name(choice.scheme);
      a["bits_used"] = choice.bits_used;
      a["payload_nt"] = rec.layout.payload.length;
      a["total_nt"] = rec.full_seq.size();
      a["epsilon"] = choice.epsilon;
      a["selected_xx"] = pattern_name(choice.selected_xx);
      a["full_two_bit_pass"] = choice.full_two_bit_pass;
      if (choice.vl) {
        a["vl"] = {{"segment_bits", choice.vl->segment_bits},
                   {"excluded_bits", choice.vl->excluded_bits},
                   {"eps1", choice.vl->eps1},
                   {"eps2", choice.vl->eps2},
                   {"l_meta", choice.vl->l_meta},
                   {"lhs", choice.vl->lhs},
                   {"rhs", choice.vl->rhs},
                   {"cut", choice.vl->take_high_density}};
      }
      result.audit_lines.push_back(a.dump());
    }

    result.strands.push_back(std::move(rec));
    pos += choice.bits_used;
    ++index;
  }
  return result;
}

EncodeResult encode_file(const std::string& path, const SystemConfig& cfg, bool audit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path);
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::io, "read failed on " + path);
  return encode_bytes(data, cfg, std::filesystem::path(path).filename().string(), audit);
}

// --- manifest ----------------------------------------------------------------

json Manifest::to_json() const {
  json j;
  j["format_version"] = format_version;
  j["source_name"] = source_name;
  j["byte_length"] = byte_length;
  j["bit_length"] = bit_length;
  j["padded_bits"] = padded_bits;
  j["effective_segment_bits"] = effective_segment_bits;
  j["payload_bits_total"] = payload_bits_total;
  j["payload_nt_total"] = payload_nt_total;
  j["strand_nt_total"] = strand_nt_total;
  j["config"] = {{"strand_cap_nt", config.strand_cap_nt},
                 {"homo_max_run", config.homo_max_run},
                 {"primer_forward", to_string(config.primer_forward)},
                 {"primer_reverse", to_string(config.primer_reverse)},
                 {"index_bits", config.index_bits},
                 {"ecc_overhead_ratio", config.ecc_overhead_ratio},
                 {"segment_bits", config.segment_bits},
                 {"schemes", config.schemes.to_string()},
                 {"seed", config.seed}};
  json arr = json::array();
  for (const ManifestStrand& s : strands)
    arr.push_back({{"index", s.index},
                   {"scheme", scheme_name(s.scheme)},
                   {"bits", s.bits_used}});
  j["strands"] = std::move(arr);
  return j;
}

Manifest Manifest::from_json(const json& j) {
  try {
    Manifest m;
    m.format_version = j.at("format_version").get<int>();
    if (m.format_version != 1)
      throw Error(ErrorKind::config, "unsupported manifest version");
    m.source_name = j.at("source_name").get<std::string>();
    m.byte_length = j.at("byte_length").get<std::uint64_t>();
    m.bit_length = j.at("bit_length").get<std::uint64_t>();
    m.padded_bits = j.at("padded_bits").get<std::uint32_t>();
    m.effective_segment_bits = j.at("effective_segment_bits").get<std::uint32_t>();
    m.payload_bits_total = j.at("payload_bits_total").get<std::uint64_t>();
    m.payload_nt_total = j.at("payload_nt_total").get<std::uint64_t>();
    m.strand_nt_total = j.at("strand_nt_total").get<std::uint64_t>();
    const json& c = j.at("config");
    m.config.strand_cap_nt = c.at("strand_cap_nt").get<std::uint32_t>();
    m.config.homo_max_run = c.at("homo_max_run").get<std::uint32_t>();
    m.config.primer_forward = parse_dna(c.at("primer_forward").get<std::string>());
    m.config.primer_reverse = parse_dna(c.at("primer_reverse").get<std::string>());
    m.config.index_bits = c.at("index_bits").get<std::uint32_t>();
    m.config.ecc_overhead_ratio = c.at("ecc_overhead_ratio").get<double>();
    m.config.segment_bits = c.at("segment_bits").get<std::uint32_t>();
    m.config.schemes = SchemeMask::parse(c.at("schemes").get<std::string>());
    m.config.seed = c.at("seed").get<std::uint64_t>();
    if (m.bit_length != m.byte_length * 8)
      throw Error(ErrorKind::config, "manifest bit/byte lengths disagree");
    for (const json& s : j.at("strands")) {
      const auto scheme = scheme_from_name(s.at("scheme").get<std::string>());
      if (!scheme || !is_payload_scheme(*scheme))
        throw Error(ErrorKind::config, "manifest names an unknown scheme");
      m.strands.push_back({s.at("index").get<std::uint64_t>(), *scheme,
                           s.at("bits").get<std::uint32_t>()});
    }
    return m;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config) throw;
    throw Error(ErrorKind::config, std::string("malformed manifest: ") + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorKind::config, std::string("malformed manifest: ") + e.what());
  }
}

// --- decode ------------------------------------------------------------------

std::vector<std::uint8_t> decode_records(std::span<const StrandRecord> records,
                                         const Manifest& manifest) {
  std::unordered_map<std::uint64_t, const ManifestStrand*> expect;
  expect.reserve(manifest.strands.size());
  for (const ManifestStrand& s : manifest.strands) expect[s.index] = &s;

  std::unordered_map<std::uint64_t, const StrandRecord*> have;
  have.reserve(records.size());
  for (const StrandRecord& r : records) {
    const auto it = expect.find(r.index);
    if (it == expect.end())
      throw Error(ErrorKind::integrity, "strand index not in the manifest", {r.index});
    if (r.scheme != it->second->scheme || r.payload_bits.size() != it->second->bits_used)
      throw Error(ErrorKind::integrity, "strand disagrees with the manifest", {r.index});
    const auto [pos, fresh] = have.emplace(r.index, &r);
    if (!fresh && !(pos->second->payload_bits == r.payload_bits))
      throw Error(ErrorKind::integrity, "conflicting duplicates of one strand",
                  {r.index});
  }

  std::vector<std::uint64_t> missing;
  for (const ManifestStrand& s : manifest.strands)
    if (!have.count(s.index)) missing.push_back(s.index);
  if (!missing.empty())
    throw Error(ErrorKind::parse,
                "missing " + std::to_string(missing.size()) + " strand(s)", missing);

  BitVec bits;
  for (const ManifestStrand& s : manifest.strands)
    bits.append(have[s.index]->payload_bits);
  if (bits.size() != manifest.payload_bits_total ||
      bits.size() != manifest.bit_length + manifest.padded_bits)
    throw Error(ErrorKind::integrity, "payload bit accounting mismatch");

  std::vector<std::uint8_t> out = bits.slice(0, manifest.bit_length).to_bytes();
  if (out.size() != manifest.byte_length)
    throw Error(ErrorKind::integrity, "decoded byte count mismatch");
  return out;
}

std::vector<std::uint8_t> decode_strands(std::span<const DnaSeq> seqs,
                                         const Manifest& manifest) {
  std::unordered_map<std::uint64_t, StrandRecord> verified;
  std::set<std::uint64_t> corrupt;
  std::size_t unparseable = 0;
  for (const DnaSeq& s : seqs) {
    std::optional<StrandRecord> rec;
    try {
      rec = parse_strand(s, manifest.config);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::integrity) {
        for (std::uint64_t i : e.strand_indices()) corrupt.insert(i);
        if (e.strand_indices().empty()) ++unparseable;
      } else if (e.kind() == ErrorKind::parse) {
        for (std::uint64_t i : e.strand_indices()) corrupt.insert(i);
        ++unparseable;
      } else {
        throw;
      }
      continue;
    }
    rec->full_seq = DnaSeq();  // parsed copy not needed past this point
    const auto it = verified.find(rec->index);
    if (it == verified.end())
      verified.emplace(rec->index, std::move(*rec));
    else if (!(it->second.payload_bits == rec->payload_bits))
      throw Error(ErrorKind::integrity, "conflicting duplicates of one strand",
                  {rec->index});
  }

  if (!seqs.empty() && verified.empty() && corrupt.empty() &&
      unparseable == seqs.size() && !manifest.strands.empty())
    throw Error(ErrorKind::config,
                "no strand matches the expected layout (wrong manifest?)");

  // A corrupted copy is harmless if a verified copy of the same index exists.
  std::vector<std::uint64_t> bad;
  for (std::uint64_t i : corrupt)
    if (!verified.count(i)) bad.push_back(i);
  if (!bad.empty())
    throw Error(ErrorKind::integrity,
                std::to_string(bad.size()) + " strand(s) failed verification", bad);

  std::vector<StrandRecord> records;
  records.reserve(verified.size());
  for (auto& [idx, rec] : verified) records.push_back(std::move(rec));
  return decode_records(records, manifest);
}

// --- density -----------------------------------------------------------------

DensityReport density_report(std::span<const StrandRecord> records) {
  DensityReport r;
  r.strand_count = records.size();
  for (const StrandRecord& rec : records) {
    r.payload_bits += rec.payload_bits.size();
    r.payload_nt += rec.layout.payload.length;
    r.total_nt += rec.full_seq.size();
    r.scheme_usage[scheme_name(rec.scheme)]++;
  }
  if (r.payload_nt) r.payload_density = double(r.payload_bits) / double(r.payload_nt);
  if (r.total_nt) r.overall_density = double(r.payload_bits) / double(r.total_nt);
  return r;
}

json DensityReport::to_json() const {
  json u = json::object();
  for (const auto& [name, count] : scheme_usage) u[name] = count;
  return json{{"payload_density", payload_density},
              {"overall_density", overall_density},
              {"payload_bits", payload_bits},
              {"payload_nt", payload_nt},
              {"total_nt", total_nt},
              {"strand_count", strand_count},
              {"scheme_usage", std::move(u)}};
}

// --- baselines ---------------------------------------------------------------

namespace {

struct BaselineMeta {
  std::uint64_t meta_nt;        // primers + index allowance, per strand
  std::uint64_t max_payload_nt; // payload capacity under the cap
  std::uint64_t ppm;            // ECC overhead in parts per million of payload nt
};

BaselineMeta baseline_meta(const SystemConfig& cfg) {
  BaselineMeta m;
  m.meta_nt = cfg.primer_forward.size() + cfg.primer_reverse.size() +
              (cfg.index_bits + 1) / 2;
  m.ppm = cfg.ecc_ratio_ppm();
  const std::uint64_t room =
      cfg.strand_cap_nt > m.meta_nt ? cfg.strand_cap_nt - m.meta_nt : 0;
  std::uint64_t p = 0;
  while (p < room && (p + 1) + ((p + 1) * m.ppm + 999999) / 1000000 <= room) ++p;
  if (p == 0) throw Error(ErrorKind::config, "cap leaves no baseline payload room");
  m.max_payload_nt = p;
  return m;
}

// Chunk a payload-nucleotide total into strands and sum the accounting.
BaselineRow baseline_account(SchemeId scheme, std::uint64_t payload_bits,
                             std::uint64_t payload_nt, std::uint64_t chunk_nt,
                             const BaselineMeta& m) {
  BaselineRow row;
  row.scheme = scheme;
  row.payload_bits = payload_bits;
  row.payload_nt = payload_nt;
  std::uint64_t left = payload_nt;
  while (left > 0) {
    const std::uint64_t take = std::min(left, chunk_nt);
    row.total_nt += m.meta_nt + take + (take * m.ppm + 999999) / 1000000;
    row.strand_count += 1;
    left -= take;
  }
  if (payload_nt) row.payload_density = double(payload_bits) / double(payload_nt);
  if (row.total_nt) row.overall_density = double(payload_bits) / double(row.total_nt);
  return row;
}

}  // namespace

BaselineRow run_church(std::span<const std::uint8_t> data, const SystemConfig& cfg) {
  const BaselineMeta m = baseline_meta(cfg);
  const std::uint64_t bits = std::uint64_t(data.size()) * 8;
  return baseline_account(SchemeId::church, bits, bits, m.max_payload_nt, m);
}

BaselineRow run_goldman(std::span<const std::uint8_t> data, const SystemConfig& cfg) {
  const BaselineMeta m = baseline_meta(cfg);
  std::uint64_t nt = 0;
  for (std::uint8_t b : data) nt += goldman_trit_count(b);
  return baseline_account(SchemeId::goldman, std::uint64_t(data.size()) * 8, nt,
                          m.max_payload_nt, m);
}

BaselineRow run_blawat(std::span<const std::uint8_t> data, const SystemConfig& cfg) {
  const BaselineMeta m = baseline_meta(cfg);
  // Byte-aligned chunks: 5 nucleotides per byte, as many bytes as fit.
  const std::uint64_t bytes_per_strand = std::max<std::uint64_t>(1, m.max_payload_nt / 5);
  const std::uint64_t bits = std::uint64_t(data.size()) * 8;
  return baseline_account(SchemeId::blawat, bits, blawat_nt_count(bits),
                          bytes_per_strand * 5, m);
}

BenchReport baseline_compare(std::span<const std::uint8_t> data, const SystemConfig& cfg) {
  BenchReport rep;
  auto push = [&rep](const std::string& name, double pd, double od, std::uint64_t n) {
    rep.rows.push_back({name, pd, od, n});
  };
  const BaselineRow church = run_church(data, cfg);
  push("church", church.payload_density, church.overall_density, church.strand_count);
  const BaselineRow goldman = run_goldman(data, cfg);
  push("goldman", goldman.payload_density, goldman.overall_density, goldman.strand_count);
  const BaselineRow blawat = run_blawat(data, cfg);
  push("blawat", blawat.payload_density, blawat.overall_density, blawat.strand_count);
  for (std::uint32_t homo : {2u, 3u}) {
    SystemConfig c = cfg;
    c.homo_max_run = homo;
    const EncodeResult enc = encode_bytes(data, c, "bench");
    const DensityReport d = density_report(enc.strands);
    push("dpdna-homo" + std::to_string(homo), d.payload_density, d.overall_density,
         d.strand_count);
  }
  return rep;
}

json BenchReport::to_json() const {
  json arr = json::array();
  for (const BenchRow& r : rows)
    arr.push_back({{"name", r.name},
                   {"payload_density", r.payload_density},
                   {"overall_density", r.overall_density},
                   {"strand_count", r.strand_count}});
  return json{{"rows", std::move(arr)}};
}

std::string BenchReport::to_table() const {
  std::ostringstream out;
  out << std::left << std::setw(14) << "scheme" << std::right << std::setw(12)
      << "payload b/nt" << std::setw(12) << "overall" << std::setw(10) << "strands"
      << '\n';
  out << std::fixed << std::setprecision(4);
  for (const BenchRow& r : rows)
    out << std::left << std::setw(14) << r.name << std::right << std::setw(12)
        << r.payload_density << std::setw(12) << r.overall_density << std::setw(10)
        << r.strand_count << '\n';
  return out.str();
}

std::vector<SweepRow> length_sweep(std::span<const std::uint8_t> data, SystemConfig cfg,
                                   std::span<const std::uint32_t> caps) {
  std::vector<SweepRow> rows;
  for (std::uint32_t cap : caps) {
    SystemConfig c = cfg;
    c.strand_cap_nt = cap;
    c.segment_bits = 0;  // re-fit the segment to each cap
    const EncodeResult enc = encode_bytes(data, c, "sweep");
    rows.push_back({cap, density_report(enc.strands)});
  }
  return rows;
}

// --- channel + analysis -------------------------------------------------------

std::vector<DnaSeq> inject_errors(std::span<const DnaSeq> strands, double sub_rate,
                                  double ins_rate, double del_rate, std::uint64_t seed) {
  for (double r : {sub_rate, ins_rate, del_rate})
    if (r < 0.0 || r >= 1.0)
      throw Error(ErrorKind::invalid_argument, "rates must lie in [0,1)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<unsigned> any_nt(0, 3);
  std::uniform_int_distribution<unsigned> nonzero(1, 3);

  std::vector<DnaSeq> out;
  out.reserve(strands.size());
  for (const DnaSeq& s : strands) {
    DnaSeq t;
    t.reserve(s.size() + 4);
    for (Nucleotide n : s) {
      const double d = u(rng);
      if (d < del_rate) continue;
      if (d < del_rate + sub_rate)
        t.push_back(rotate(n, nonzero(rng)));
      else
        t.push_back(n);
      if (u(rng) < ins_rate) t.push_back(nt_from_index(any_nt(rng)));
    }
    out.push_back(std::move(t));
  }
  return out;
}

PatternAnalysis analyze_patterns(std::span<const std::uint8_t> data,
                                 std::uint32_t segment_bits) {
  if (segment_bits < 2 || segment_bits % 2 != 0)
    throw Error(ErrorKind::invalid_argument, "segment size must be even and positive");
  const BitVec bits = BitVec::from_bytes(data.data(), data.size());

  PatternAnalysis a;
  a.segment_bits = segment_bits;
  for (unsigned k = 0; k < 10; ++k)
    a.bins.emplace_back(0.05 * k, 0.05 * (k + 1));
  a.bins.emplace_back(0.50, 1.0);
  for (auto& v : a.bin_counts) v.assign(a.bins.size(), 0);

  std::uint64_t full = bits.size() / segment_bits;
  std::uint64_t seg_len = segment_bits;
  if (full == 0 && bits.size() >= 2) {
    full = 1;
    seg_len = bits.size() & ~std::uint64_t(1);
  }
  std::array<std::uint64_t, 4> grand{0, 0, 0, 0};
  for (std::uint64_t s = 0; s < full; ++s) {
    const PatternHistogram h = pattern_histogram(bits.slice(s * seg_len, seg_len));
    const double total = double(h.total());
    for (unsigned v = 0; v < 4; ++v) {
      grand[v] += h.count[v];
      const double ratio = double(h.count[v]) / total;
      const std::size_t bin = std::min<std::size_t>(std::size_t(ratio / 0.05), 10);
      a.bin_counts[v][bin] += 1;
    }
  }
  a.segment_count = full;
  const std::uint64_t g = grand[0] + grand[1] + grand[2] + grand[3];
  for (unsigned v = 0; v < 4; ++v)
    a.overall_ratio[v] = g ? double(grand[v]) / double(g) : 0.0;
  return a;
}

json PatternAnalysis::to_json() const {
  json bin_arr = json::array();
  for (const auto& [lo, hi] : bins) bin_arr.push_back({{"lo", lo}, {"hi", hi}});
  json counts = json::object();
  for (unsigned v = 0; v < 4; ++v) counts[pattern_name(v)] = bin_counts[v];
  json ratios = json::object();
  for (unsigned v = 0; v < 4; ++v) ratios[pattern_name(v)] = overall_ratio[v];
  return json{{"segment_bits", segment_bits},
              {"segment_count", segment_count},
              {"overall_ratio", std::move(ratios)},
              {"bins", std::move(bin_arr)},
              {"bin_counts", std::move(counts)}};
}

std::string PatternAnalysis::to_table() const {
  std::ostringstream out;
  out << "segments of " << segment_bits << " bits: " << segment_count << '\n';
  out << std::fixed << std::setprecision(4);
  out << "overall ratios:";
  for (unsigned v = 0; v < 4; ++v)
    out << "  " << pattern_name(v) << '=' << overall_ratio[v];
  out << '\n';
  out << std::left << std::setw(14) << "ratio bin";
  for (unsigned v = 0; v < 4; ++v) out << std::right << std::setw(10) << pattern_name(v);
  out << '\n';
  for (std::size_t b = 0; b < bins.size(); ++b) {
    std::ostringstream label;
    label << std::fixed << std::setprecision(2) << '[' << bins[b].first << ',' << bins[b].second << ')';
    out << std::left << std::setw(14) << label.str();
    for (unsigned v = 0; v < 4; ++v) out << std::right << std::setw(10) << bin_counts[v][b];
    out << '\n';
  }
  return out.str();
}

json feasibility_json(const FeasibilityReport& r) {
  return json{{"strand_count", r.strand_count},
              {"mean_gc", r.mean_gc},
              {"homopolymer_violation", r.homopolymer_violation},
              {"length_violation", r.length_violation},
              {"hairpin_ratio", r.hairpin_ratio},
              {"avg_score", r.avg_score},
              {"gc_violations", r.gc_violations},
              {"homopolymer_violations", r.homopolymer_violations},
              {"hairpin_count", r.hairpin_count},
              {"length_violations", r.length_violations}};
}

}  // namespace dpdna
