#include <doctest.h>

#include <algorithm>
#include <random>

#include "dpdna/pipeline.hpp"

using namespace dpdna;

namespace {

std::vector<std::uint8_t> random_bytes(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = std::uint8_t(rng());
  return v;
}

std::vector<std::uint8_t> textish(std::size_t n) {
  static const std::string words = "the quick brown fox jumps over a lazy dog and ";
  std::vector<std::uint8_t> v;
  v.reserve(n);
  while (v.size() < n) v.push_back(std::uint8_t(words[v.size() % words.size()]));
  return v;
}

std::vector<DnaSeq> sequences(const EncodeResult& enc) {
  std::vector<DnaSeq> seqs;
  seqs.reserve(enc.strands.size());
  for (const StrandRecord& r : enc.strands) seqs.push_back(r.full_seq);
  return seqs;
}

void check_round_trip(const std::vector<std::uint8_t>& data, const SystemConfig& cfg) {
  const EncodeResult enc = encode_bytes(data, cfg, "t");
  CHECK(enc.manifest.byte_length == data.size());
  CHECK(enc.manifest.bit_length == data.size() * 8);
  CHECK(enc.manifest.padded_bits == 0);
  CHECK(enc.manifest.strands.size() == enc.strands.size());
  std::uint64_t used = 0;
  for (const ManifestStrand& s : enc.manifest.strands) used += s.bits_used;
  CHECK(used == enc.manifest.bit_length + enc.manifest.padded_bits);

  CHECK(decode_records(enc.strands, enc.manifest) == data);

  // Decoding from bare sequences must not depend on their order.
  std::vector<DnaSeq> seqs = sequences(enc);
  std::mt19937_64 shuffle_rng(9);
  std::shuffle(seqs.begin(), seqs.end(), shuffle_rng);
  CHECK(decode_strands(seqs, enc.manifest) == data);
}

}  // namespace

TEST_CASE("encode/decode round trips across corpora and sizes") {
  std::mt19937_64 rng(701);
  const SystemConfig cfg = SystemConfig::defaults();
  for (std::size_t n : {std::size_t(0), std::size_t(1), std::size_t(15), std::size_t(16),
                        std::size_t(1000)}) {
    check_round_trip(random_bytes(rng, n), cfg);
    check_round_trip(textish(n), cfg);
    check_round_trip(std::vector<std::uint8_t>(n, 0x00), cfg);
    check_round_trip(std::vector<std::uint8_t>(n, 0xFF), cfg);
    check_round_trip(std::vector<std::uint8_t>(n, 0x1B), cfg);
  }
  check_round_trip(random_bytes(rng, 100000), cfg);
}

TEST_CASE("round trips under config variants") {
  std::mt19937_64 rng(702);
  const std::vector<std::uint8_t> data = random_bytes(rng, 2000);

  SystemConfig cfg = SystemConfig::defaults();
  cfg.strand_cap_nt = 100;
  check_round_trip(data, cfg);

  cfg = SystemConfig::defaults();
  cfg.homo_max_run = 2;
  check_round_trip(data, cfg);

  cfg = SystemConfig::defaults();
  cfg.schemes = SchemeMask::parse("dpac");
  check_round_trip(data, cfg);

  cfg = SystemConfig::defaults();
  cfg.index_bits = 16;
  check_round_trip(data, cfg);

  cfg = SystemConfig::defaults();
  cfg.ecc_overhead_ratio = 0.0;
  check_round_trip(data, cfg);

  cfg = SystemConfig::defaults();
  cfg.ecc_overhead_ratio = 0.25;
  cfg.strand_cap_nt = 300;
  check_round_trip(data, cfg);
}

TEST_CASE("encode rejects a config that cannot hold a strand") {
  SystemConfig cfg = SystemConfig::defaults();
  cfg.strand_cap_nt = 63;
  CHECK_THROWS_AS(encode_bytes(std::vector<std::uint8_t>{1, 2, 3}, cfg, "t"), Error);
}

TEST_CASE("audit emits one JSON line per strand") {
  std::mt19937_64 rng(703);
  const std::vector<std::uint8_t> data = random_bytes(rng, 500);
  const EncodeResult enc = encode_bytes(data, SystemConfig::defaults(), "t", true);
  REQUIRE(enc.audit_lines.size() == enc.strands.size());
  for (const std::string& line : enc.audit_lines) {
    const nlohmann::json a = nlohmann::json::parse(line);
    CHECK(a.contains("index"));
    CHECK(a.contains("scheme"));
    CHECK(a.contains("bits_used"));
  }
}

TEST_CASE("manifest JSON round trips") {
  std::mt19937_64 rng(704);
  SystemConfig cfg = SystemConfig::defaults();
  cfg.index_bits = 24;
  cfg.seed = 42;
  const EncodeResult enc = encode_bytes(random_bytes(rng, 300), cfg, "sample.bin");
  const Manifest& m = enc.manifest;
  const Manifest back = Manifest::from_json(m.to_json());
  CHECK(back.format_version == m.format_version);
  CHECK(back.source_name == "sample.bin");
  CHECK(back.byte_length == m.byte_length);
  CHECK(back.bit_length == m.bit_length);
  CHECK(back.padded_bits == m.padded_bits);
  CHECK(back.config == m.config);
  CHECK(back.effective_segment_bits == m.effective_segment_bits);
  CHECK(back.payload_bits_total == m.payload_bits_total);
  CHECK(back.payload_nt_total == m.payload_nt_total);
  CHECK(back.strand_nt_total == m.strand_nt_total);
  REQUIRE(back.strands.size() == m.strands.size());
  for (std::size_t i = 0; i < m.strands.size(); ++i) {
    CHECK(back.strands[i].index == m.strands[i].index);
    CHECK(back.strands[i].scheme == m.strands[i].scheme);
    CHECK(back.strands[i].bits_used == m.strands[i].bits_used);
  }
}

TEST_CASE("manifest rejects damage as config errors") {
  std::mt19937_64 rng(705);
  const EncodeResult enc =
      encode_bytes(random_bytes(rng, 100), SystemConfig::defaults(), "t");
  const nlohmann::json good = enc.manifest.to_json();

  auto expect_config = [](const nlohmann::json& j) {
    try {
      Manifest::from_json(j);
      FAIL("damaged manifest accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::config);
    }
  };

  nlohmann::json j = good;
  j["format_version"] = 2;
  expect_config(j);

  j = good;
  j.erase("bit_length");
  expect_config(j);

  j = good;
  j["bit_length"] = j["bit_length"].get<std::uint64_t>() + 1;
  expect_config(j);

  j = good;
  j["strands"][0]["scheme"] = "goldman";
  expect_config(j);

  j = good;
  j["config"]["schemes"] = "nonsense";
  expect_config(j);

  j = good;
  j["config"]["primer_forward"] = "ACGTX";
  expect_config(j);
}

TEST_CASE("decode_records flags mismatches") {
  std::mt19937_64 rng(706);
  const std::vector<std::uint8_t> data = random_bytes(rng, 200);
  const EncodeResult enc = encode_bytes(data, SystemConfig::defaults(), "t");
  REQUIRE(enc.strands.size() >= 2);

  SUBCASE("missing strand -> parse with the missing indices") {
    std::vector<StrandRecord> partial(enc.strands.begin() + 1, enc.strands.end());
    try {
      decode_records(partial, enc.manifest);
      FAIL("missing strand not noticed");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::parse);
      REQUIRE(e.strand_indices().size() == 1);
      CHECK(e.strand_indices()[0] == enc.strands.front().index);
    }
  }

  SUBCASE("alien index -> integrity") {
    std::vector<StrandRecord> recs(enc.strands.begin(), enc.strands.end());
    recs.push_back(recs.back());
    recs.back().index = 999;
    try {
      decode_records(recs, enc.manifest);
      FAIL("alien strand accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::integrity);
    }
  }

  SUBCASE("conflicting duplicates -> integrity") {
    std::vector<StrandRecord> recs(enc.strands.begin(), enc.strands.end());
    StrandRecord dup = recs[0];
    BitVec twisted;
    twisted.push_back(!dup.payload_bits.bit(0));
    twisted.append(dup.payload_bits.slice(1, dup.payload_bits.size() - 1));
    dup.payload_bits = twisted;
    recs.push_back(dup);
    try {
      decode_records(recs, enc.manifest);
      FAIL("conflicting duplicate accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::integrity);
      REQUIRE(e.strand_indices().size() == 1);
      CHECK(e.strand_indices()[0] == recs[0].index);
    }
  }

  SUBCASE("agreeing duplicates are fine") {
    std::vector<StrandRecord> recs(enc.strands.begin(), enc.strands.end());
    recs.push_back(recs[0]);
    CHECK(decode_records(recs, enc.manifest) == data);
  }
}

TEST_CASE("decode_strands recovers and attributes damage") {
  // All-zero payloads keep every strand on the two-bit code, where a single
  // substitution always decodes to different bits and trips the checksum.
  const std::vector<std::uint8_t> data(1000, 0x00);
  const SystemConfig cfg = SystemConfig::defaults();
  const EncodeResult enc = encode_bytes(data, cfg, "t");
  const std::vector<DnaSeq> clean = sequences(enc);
  REQUIRE(clean.size() >= 3);

  SUBCASE("payload corruption -> integrity naming the strand") {
    std::vector<DnaSeq> seqs = clean;
    const std::size_t victim = 2;
    const std::size_t pos = enc.strands[victim].layout.payload.offset + 5;
    seqs[victim][pos] = rotate(seqs[victim][pos], 1);
    try {
      decode_strands(seqs, enc.manifest);
      FAIL("corruption not attributed");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::integrity);
      REQUIRE(e.strand_indices().size() == 1);
      CHECK(e.strand_indices()[0] == enc.strands[victim].index);
    }
  }

  SUBCASE("a verified copy rescues a corrupted one") {
    std::vector<DnaSeq> seqs = clean;
    DnaSeq bad = clean[2];
    const std::size_t pos = enc.strands[2].layout.payload.offset + 5;
    bad[pos] = rotate(bad[pos], 1);
    seqs.push_back(bad);        // corrupt copy
    seqs.push_back(clean[2]);   // later duplicate of the good strand
    CHECK(decode_strands(seqs, enc.manifest) == data);
  }

  SUBCASE("dropped strand -> parse with the missing index") {
    std::vector<DnaSeq> seqs(clean.begin(), clean.end() - 1);
    try {
      decode_strands(seqs, enc.manifest);
      FAIL("missing strand not noticed");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::parse);
      REQUIRE(e.strand_indices().size() == 1);
      CHECK(e.strand_indices()[0] == enc.strands.back().index);
    }
  }

  SUBCASE("foreign pool -> config hint") {
    Manifest wrong = enc.manifest;
    wrong.config.primer_forward = parse_dna("TTTTTTTTTTTTTTTTTTTT");
    try {
      decode_strands(clean, wrong);
      FAIL("foreign pool decoded");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::config);
      CHECK(std::string(e.what()).find("manifest") != std::string::npos);
    }
  }
}

TEST_CASE("density report sums and scheme usage") {
  std::mt19937_64 rng(707);
  const std::vector<std::uint8_t> data = random_bytes(rng, 3000);
  const EncodeResult enc = encode_bytes(data, SystemConfig::defaults(), "t");
  const DensityReport d = density_report(enc.strands);
  CHECK(d.strand_count == enc.strands.size());
  CHECK(d.payload_bits == enc.manifest.payload_bits_total);
  CHECK(d.payload_nt == enc.manifest.payload_nt_total);
  CHECK(d.total_nt == enc.manifest.strand_nt_total);
  CHECK(d.payload_density ==
        doctest::Approx(double(d.payload_bits) / double(d.payload_nt)));
  CHECK(d.overall_density == doctest::Approx(double(d.payload_bits) / double(d.total_nt)));
  std::uint64_t usage = 0;
  for (const auto& [name, count] : d.scheme_usage) usage += count;
  CHECK(usage == d.strand_count);
  const nlohmann::json j = d.to_json();
  CHECK(j.at("payload_bits").get<std::uint64_t>() == d.payload_bits);
}

TEST_CASE("baseline accounting: church, goldman, blawat") {
  std::mt19937_64 rng(708);
  const std::vector<std::uint8_t> data = random_bytes(rng, 200000);
  const SystemConfig cfg = SystemConfig::defaults();

  const BaselineRow church = run_church(data, cfg);
  CHECK(church.payload_density == 1.0);
  CHECK(church.payload_nt == data.size() * 8);
  // cap 150 leaves 81 payload nt beside 56 metadata nt and the ECC reserve
  CHECK(church.strand_count == (church.payload_nt + 80) / 81);
  CHECK(church.overall_density < 1.0);

  const BaselineRow goldman = run_goldman(data, cfg);
  CHECK(std::abs(goldman.payload_density - 1.5754) < 0.005);
  CHECK(goldman.overall_density < goldman.payload_density);

  const BaselineRow blawat = run_blawat(data, cfg);
  CHECK(blawat.payload_density == 1.6);
  CHECK(blawat.payload_nt == data.size() * 5);
  CHECK(blawat.strand_count == (data.size() + 15) / 16);  // 16 bytes per strand
}

TEST_CASE("baseline comparison table orders its rows") {
  std::mt19937_64 rng(709);
  const std::vector<std::uint8_t> data = random_bytes(rng, 20000);
  const BenchReport rep = baseline_compare(data, SystemConfig::defaults());
  REQUIRE(rep.rows.size() == 5);
  CHECK(rep.rows[0].name == "church");
  CHECK(rep.rows[1].name == "goldman");
  CHECK(rep.rows[2].name == "blawat");
  CHECK(rep.rows[3].name == "dpdna-homo2");
  CHECK(rep.rows[4].name == "dpdna-homo3");
  CHECK(rep.rows[4].payload_density >= rep.rows[3].payload_density);
  CHECK(rep.rows[3].payload_density > rep.rows[1].payload_density);
  CHECK(rep.to_table().find("church") != std::string::npos);
  CHECK(rep.to_json().at("rows").size() == 5);
}

TEST_CASE("length sweep re-fits the segment per cap") {
  std::mt19937_64 rng(710);
  const std::vector<std::uint8_t> data = random_bytes(rng, 2000);
  const std::vector<std::uint32_t> caps = {100, 150, 300, 700};
  const std::vector<SweepRow> rows = length_sweep(data, SystemConfig::defaults(), caps);
  REQUIRE(rows.size() == caps.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].cap == caps[i]);
    CHECK(rows[i].report.payload_bits == data.size() * 8);
    if (i > 0)
      CHECK(rows[i].report.overall_density > rows[i - 1].report.overall_density);
  }
}

TEST_CASE("error injection is deterministic and rate-checked") {
  std::mt19937_64 rng(711);
  const EncodeResult enc =
      encode_bytes(random_bytes(rng, 500), SystemConfig::defaults(), "t");
  const std::vector<DnaSeq> clean = sequences(enc);

  const std::vector<DnaSeq> same = inject_errors(clean, 0.0, 0.0, 0.0, 1);
  CHECK(same == clean);

  const std::vector<DnaSeq> a = inject_errors(clean, 0.05, 0.01, 0.01, 7);
  const std::vector<DnaSeq> b = inject_errors(clean, 0.05, 0.01, 0.01, 7);
  CHECK(a == b);
  CHECK_FALSE(a == clean);

  const std::vector<DnaSeq> subs = inject_errors(clean, 0.2, 0.0, 0.0, 7);
  REQUIRE(subs.size() == clean.size());
  for (std::size_t i = 0; i < subs.size(); ++i)
    CHECK(subs[i].size() == clean[i].size());

  CHECK_THROWS_AS(inject_errors(clean, 1.0, 0.0, 0.0, 1), Error);
  CHECK_THROWS_AS(inject_errors(clean, 0.0, -0.1, 0.0, 1), Error);
}

TEST_CASE("pattern analysis bins uniform data exactly") {
  const std::vector<std::uint8_t> data(1000, 0x1B);  // patterns 00 01 10 11 per byte
  const PatternAnalysis a = analyze_patterns(data, 80);
  CHECK(a.segment_count == 100);
  for (unsigned v = 0; v < 4; ++v) {
    CHECK(a.overall_ratio[v] == 0.25);
    // ratio 0.25 lands in the [0.25, 0.30) bin for every segment
    CHECK(a.bin_counts[v][5] == a.segment_count);
  }
  REQUIRE(a.bins.size() == 11);
  CHECK(a.bins.back().first == 0.5);
  CHECK(a.bins.back().second == 1.0);
  CHECK(a.to_table().find("segments") != std::string::npos);
  CHECK(a.to_json().contains("bin_counts"));

  const PatternAnalysis tail = analyze_patterns(std::vector<std::uint8_t>(3, 0xFF), 300);
  CHECK(tail.segment_count == 1);
  CHECK(tail.overall_ratio[3] == 1.0);
  CHECK(tail.bin_counts[3][10] == 1);

  CHECK_THROWS_AS(analyze_patterns(data, 0), Error);
  CHECK_THROWS_AS(analyze_patterns(data, 7), Error);
}

TEST_CASE("encode_file reports missing input as io") {
  try {
    encode_file("/nonexistent/input.bin", SystemConfig::defaults());
    FAIL("missing file accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
}
