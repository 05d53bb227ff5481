#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpdna/config.hpp"
#include "dpdna/feasibility.hpp"
#include "dpdna/strand.hpp"

namespace dpdna {

struct ManifestStrand {
  std::uint64_t index = 0;
  SchemeId scheme = SchemeId::two_bit;
  std::uint32_t bits_used = 0;
};

// Decode-side contract for one encoded file: the exact config snapshot, the
// true bit length (before any odd-tail padding), and per-strand records.
struct Manifest {
  int format_version = 1;
  std::string source_name;
  std::uint64_t byte_length = 0;
  std::uint64_t bit_length = 0;
  std::uint32_t padded_bits = 0;
  SystemConfig config;
  std::uint32_t effective_segment_bits = 0;
  std::vector<ManifestStrand> strands;
  std::uint64_t payload_bits_total = 0;
  std::uint64_t payload_nt_total = 0;
  std::uint64_t strand_nt_total = 0;

  nlohmann::json to_json() const;
  static Manifest from_json(const nlohmann::json& j);
};

struct EncodeResult {
  std::vector<StrandRecord> strands;
  Manifest manifest;
  std::vector<std::string> audit_lines;  // one JSON object per strand when audited
};

// Greedy segmentation: each strand takes up to segment_bits bits (bits a cut
// excluded are prepended to the next strand), chooses a code, and is
// assembled independently. An odd tail is padded with one zero bit.
EncodeResult encode_bytes(std::span<const std::uint8_t> data, const SystemConfig& cfg,
                          std::string_view source_name, bool audit = false);
EncodeResult encode_file(const std::string& path, const SystemConfig& cfg,
                         bool audit = false);

// Reassembles the byte stream from parsed strands. Throws Error{parse} for a
// missing index and Error{integrity} listing offending indices.
std::vector<std::uint8_t> decode_records(std::span<const StrandRecord> records,
                                         const Manifest& manifest);
// Full path from raw sequences: parse each strand with the manifest's config
// snapshot, then decode. Duplicate claims of one index keep the strand that
// verifies.
std::vector<std::uint8_t> decode_strands(std::span<const DnaSeq> seqs,
                                         const Manifest& manifest);

struct DensityReport {
  double payload_density = 0.0;  // payload bits / payload nt
  double overall_density = 0.0;  // payload bits / total strand nt
  std::uint64_t payload_bits = 0;
  std::uint64_t payload_nt = 0;
  std::uint64_t total_nt = 0;
  std::uint64_t strand_count = 0;
  std::map<std::string, std::uint64_t> scheme_usage;

  nlohmann::json to_json() const;
};

DensityReport density_report(std::span<const StrandRecord> records);

// --- baselines --------------------------------------------------------------
// Baseline strands carry primers + a 2 bits/nt index allowance (no Encoding
// field) and reserve ceil(0.15 * payload nt) for ECC; payload density comes
// from materialized sequences for Church/Goldman and from the fixed rate for
// the accounting-only Blawat row.

struct BaselineRow {
  SchemeId scheme = SchemeId::church;
  double payload_density = 0.0;
  double overall_density = 0.0;
  std::uint64_t payload_bits = 0;
  std::uint64_t payload_nt = 0;
  std::uint64_t total_nt = 0;
  std::uint64_t strand_count = 0;
};

BaselineRow run_church(std::span<const std::uint8_t> data, const SystemConfig& cfg);
BaselineRow run_goldman(std::span<const std::uint8_t> data, const SystemConfig& cfg);
BaselineRow run_blawat(std::span<const std::uint8_t> data, const SystemConfig& cfg);

struct BenchRow {
  std::string name;
  double payload_density = 0.0;
  double overall_density = 0.0;
  std::uint64_t strand_count = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;  // church, goldman, blawat, dpdna homo-2, dpdna homo-3
  nlohmann::json to_json() const;
  std::string to_table() const;
};

BenchReport baseline_compare(std::span<const std::uint8_t> data, const SystemConfig& cfg);

struct SweepRow {
  std::uint32_t cap = 0;
  DensityReport report;
};

std::vector<SweepRow> length_sweep(std::span<const std::uint8_t> data, SystemConfig cfg,
                                   std::span<const std::uint32_t> caps);

// --- channel + analysis -----------------------------------------------------

// Independent per-nucleotide substitution/insertion/deletion channel with a
// deterministic generator.
std::vector<DnaSeq> inject_errors(std::span<const DnaSeq> strands, double sub_rate,
                                  double ins_rate, double del_rate, std::uint64_t seed);

// Pattern-ratio distribution over fixed-size bit segments: overall share per
// pattern plus, for each pattern, how many segments fall into each ratio bin.
struct PatternAnalysis {
  std::uint32_t segment_bits = 0;
  std::uint64_t segment_count = 0;
  std::array<double, 4> overall_ratio{};
  std::vector<std::pair<double, double>> bins;           // [lo, hi)
  std::array<std::vector<std::uint64_t>, 4> bin_counts;  // per pattern

  nlohmann::json to_json() const;
  std::string to_table() const;
};

PatternAnalysis analyze_patterns(std::span<const std::uint8_t> data,
                                 std::uint32_t segment_bits = 300);

nlohmann::json feasibility_json(const FeasibilityReport& r);

}  // namespace dpdna
