#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "dpdna.h"

namespace {

std::vector<uint8_t> sample_bytes(std::size_t n, uint8_t fill = 0) {
  std::vector<uint8_t> v(n, fill);
  if (!fill)
    for (std::size_t i = 0; i < n; ++i) v[i] = uint8_t((i * 131) ^ (i >> 3));
  return v;
}

struct OwnedText {
  char* p = nullptr;
  ~OwnedText() { dpdna_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

}  // namespace

TEST_CASE("version and error baseline") {
  REQUIRE(dpdna_version() != nullptr);
  CHECK(std::string(dpdna_version()) == "1.0.0");
  CHECK(dpdna_last_error() != nullptr);
}

TEST_CASE("config keys and validation") {
  dpdna_config* cfg = dpdna_config_new();
  REQUIRE(cfg != nullptr);

  CHECK(dpdna_config_validate(cfg) == DPDNA_OK);
  CHECK(dpdna_config_set_u64(cfg, "strand_cap_nt", 300) == DPDNA_OK);
  CHECK(dpdna_config_set_u64(cfg, "homo_max_run", 2) == DPDNA_OK);
  CHECK(dpdna_config_set_u64(cfg, "index_bits", 24) == DPDNA_OK);
  CHECK(dpdna_config_set_f64(cfg, "ecc_overhead_ratio", 0.2) == DPDNA_OK);
  CHECK(dpdna_config_set_str(cfg, "schemes", "dpac") == DPDNA_OK);
  CHECK(dpdna_config_validate(cfg) == DPDNA_OK);

  CHECK(dpdna_config_set_u64(cfg, "no_such_key", 1) == DPDNA_E_INVALID);
  CHECK(dpdna_config_set_f64(cfg, "no_such_key", 1.0) == DPDNA_E_INVALID);
  CHECK(dpdna_config_set_str(cfg, "no_such_key", "x") == DPDNA_E_INVALID);
  CHECK(dpdna_config_set_str(cfg, "primer_forward", "ACGTX") == DPDNA_E_INVALID);
  CHECK(dpdna_config_set_str(cfg, "schemes", "nonsense") == DPDNA_E_CONFIG);

  CHECK(dpdna_config_set_u64(cfg, "homo_max_run", 9) == DPDNA_OK);
  CHECK(dpdna_config_validate(cfg) == DPDNA_E_CONFIG);
  CHECK(std::string(dpdna_last_error()).find("homopolymer") != std::string::npos);

  OwnedText js;
  CHECK(dpdna_config_set_u64(cfg, "homo_max_run", 3) == DPDNA_OK);
  CHECK(dpdna_config_json(cfg, &js.p) == DPDNA_OK);
  CHECK(js.str().find("strand_cap_nt") != std::string::npos);

  dpdna_config_free(cfg);
}

TEST_CASE("encode, inspect, decode") {
  const std::vector<uint8_t> data = sample_bytes(600);
  dpdna_config* cfg = dpdna_config_new();
  REQUIRE(cfg != nullptr);

  dpdna_archive* a = nullptr;
  REQUIRE(dpdna_encode(cfg, data.data(), data.size(), "sample.bin", 1, &a) == DPDNA_OK);
  REQUIRE(a != nullptr);

  const uint64_t count = dpdna_archive_strand_count(a);
  CHECK(count > 0);

  std::vector<std::string> strands;
  for (uint64_t i = 0; i < count; ++i) {
    OwnedText s;
    REQUIRE(dpdna_archive_strand(a, i, &s.p) == DPDNA_OK);
    const std::string seq = s.str();
    CHECK(seq.size() <= 150);
    CHECK(seq.find_first_not_of("ACGT") == std::string::npos);
    strands.push_back(seq);
  }
  {
    OwnedText s;
    CHECK(dpdna_archive_strand(a, count, &s.p) == DPDNA_E_INVALID);
  }

  OwnedText fasta, manifest, audit, density_json, density_table, feas;
  REQUIRE(dpdna_archive_fasta(a, &fasta.p) == DPDNA_OK);
  CHECK(fasta.str()[0] == '>');
  REQUIRE(dpdna_archive_manifest_json(a, &manifest.p) == DPDNA_OK);
  CHECK(manifest.str().find("format_version") != std::string::npos);
  REQUIRE(dpdna_archive_audit(a, &audit.p) == DPDNA_OK);
  {
    const std::string text = audit.str();
    std::size_t lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(lines == count);
  }
  REQUIRE(dpdna_archive_density(a, DPDNA_FORMAT_JSON, &density_json.p) == DPDNA_OK);
  CHECK(density_json.str().find("payload_density") != std::string::npos);
  REQUIRE(dpdna_archive_density(a, DPDNA_FORMAT_TABLE, &density_table.p) == DPDNA_OK);
  CHECK(density_table.str().find("bits/nt") != std::string::npos);
  REQUIRE(dpdna_archive_feasibility(a, DPDNA_FORMAT_JSON, &feas.p) == DPDNA_OK);
  CHECK(feas.str().find("hairpin") != std::string::npos);

  // decode from the strand array
  {
    std::vector<const char*> ptrs;
    for (const std::string& s : strands) ptrs.push_back(s.c_str());
    uint8_t* out = nullptr;
    size_t out_size = 0;
    REQUIRE(dpdna_decode(manifest.p, ptrs.data(), ptrs.size(), &out, &out_size) ==
            DPDNA_OK);
    REQUIRE(out_size == data.size());
    CHECK(std::memcmp(out, data.data(), out_size) == 0);
    dpdna_free(out);
  }

  // decode from the FASTA text
  {
    uint8_t* out = nullptr;
    size_t out_size = 0;
    REQUIRE(dpdna_decode_fasta(manifest.p, fasta.p, &out, &out_size) == DPDNA_OK);
    REQUIRE(out_size == data.size());
    CHECK(std::memcmp(out, data.data(), out_size) == 0);
    dpdna_free(out);
  }

  dpdna_archive_free(a);
  dpdna_config_free(cfg);
}

TEST_CASE("decode failures carry status and message") {
  const std::vector<uint8_t> data = sample_bytes(400, 0x00);
  dpdna_config* cfg = dpdna_config_new();
  dpdna_archive* a = nullptr;
  REQUIRE(dpdna_encode(cfg, data.data(), data.size(), "z", 0, &a) == DPDNA_OK);

  OwnedText manifest;
  REQUIRE(dpdna_archive_manifest_json(a, &manifest.p) == DPDNA_OK);
  const uint64_t count = dpdna_archive_strand_count(a);
  std::vector<std::string> strands;
  for (uint64_t i = 0; i < count; ++i) {
    OwnedText s;
    REQUIRE(dpdna_archive_strand(a, i, &s.p) == DPDNA_OK);
    strands.push_back(s.str());
  }

  uint8_t* out = nullptr;
  size_t out_size = 0;

  SUBCASE("tampered strand -> integrity, named in the message") {
    // all-zero payloads ride the two-bit code, so one substitution inside the
    // payload region always surfaces as a checksum mismatch
    std::string& victim = strands[0];
    const std::size_t pos = 50;
    victim[pos] = victim[pos] == 'A' ? 'C' : 'A';
    std::vector<const char*> ptrs;
    for (const std::string& s : strands) ptrs.push_back(s.c_str());
    CHECK(dpdna_decode(manifest.p, ptrs.data(), ptrs.size(), &out, &out_size) ==
          DPDNA_E_INTEGRITY);
    CHECK(std::string(dpdna_last_error()).find("strand") != std::string::npos);
    CHECK(out == nullptr);
  }

  SUBCASE("missing strand -> parse") {
    std::vector<const char*> ptrs;
    for (std::size_t i = 1; i < strands.size(); ++i) ptrs.push_back(strands[i].c_str());
    CHECK(dpdna_decode(manifest.p, ptrs.data(), ptrs.size(), &out, &out_size) ==
          DPDNA_E_PARSE);
  }

  SUBCASE("broken manifest -> config") {
    std::vector<const char*> ptrs;
    for (const std::string& s : strands) ptrs.push_back(s.c_str());
    CHECK(dpdna_decode("{ not json", ptrs.data(), ptrs.size(), &out, &out_size) ==
          DPDNA_E_CONFIG);
    CHECK(dpdna_decode("{}", ptrs.data(), ptrs.size(), &out, &out_size) ==
          DPDNA_E_CONFIG);
  }

  SUBCASE("non-ACGT strand -> invalid") {
    std::vector<const char*> ptrs = {"ACGU"};
    CHECK(dpdna_decode(manifest.p, ptrs.data(), ptrs.size(), &out, &out_size) ==
          DPDNA_E_INVALID);
  }

  dpdna_archive_free(a);
  dpdna_config_free(cfg);
}

TEST_CASE("reports: bench, sweep, analyze, check") {
  const std::vector<uint8_t> data = sample_bytes(4000);
  dpdna_config* cfg = dpdna_config_new();

  OwnedText bench;
  REQUIRE(dpdna_bench(cfg, data.data(), data.size(), DPDNA_FORMAT_TABLE, &bench.p) ==
          DPDNA_OK);
  CHECK(bench.str().find("church") != std::string::npos);
  CHECK(bench.str().find("dpdna-homo3") != std::string::npos);

  const uint32_t caps[3] = {100, 150, 300};
  OwnedText sweep;
  REQUIRE(dpdna_sweep(cfg, data.data(), data.size(), caps, 3, DPDNA_FORMAT_JSON,
                      &sweep.p) == DPDNA_OK);
  CHECK(sweep.str().find("\"cap\": 100") != std::string::npos);

  OwnedText analyze;
  REQUIRE(dpdna_analyze(data.data(), data.size(), 300, DPDNA_FORMAT_JSON, &analyze.p) ==
          DPDNA_OK);
  CHECK(analyze.str().find("overall_ratio") != std::string::npos);
  OwnedText bad;
  CHECK(dpdna_analyze(data.data(), data.size(), 7, DPDNA_FORMAT_JSON, &bad.p) ==
        DPDNA_E_INVALID);

  OwnedText check;
  REQUIRE(dpdna_check_fasta(">1|x|8\nACGTACGT\n>2|x|4\nAAAA\n", 3, DPDNA_FORMAT_JSON,
                            &check.p) == DPDNA_OK);
  CHECK(check.str().find("homopolymer") != std::string::npos);
  OwnedText checkbad;
  CHECK(dpdna_check_fasta("no header", 3, DPDNA_FORMAT_JSON, &checkbad.p) ==
        DPDNA_E_PARSE);

  dpdna_config_free(cfg);
}

TEST_CASE("null arguments are rejected up front") {
  uint8_t* out = nullptr;
  size_t out_size = 0;
  char* text = nullptr;
  CHECK(dpdna_config_set_u64(nullptr, "seed", 1) == DPDNA_E_INVALID);
  CHECK(dpdna_config_validate(nullptr) == DPDNA_E_INVALID);
  CHECK(dpdna_config_json(nullptr, &text) == DPDNA_E_INVALID);
  CHECK(dpdna_encode(nullptr, nullptr, 0, "x", 0, nullptr) == DPDNA_E_INVALID);
  CHECK(dpdna_decode(nullptr, nullptr, 0, &out, &out_size) == DPDNA_E_INVALID);
  CHECK(dpdna_decode_fasta(nullptr, ">x\nACGT\n", &out, &out_size) == DPDNA_E_INVALID);
  CHECK(dpdna_archive_strand(nullptr, 0, &text) == DPDNA_E_INVALID);
  CHECK(dpdna_archive_fasta(nullptr, &text) == DPDNA_E_INVALID);
  CHECK(dpdna_bench(nullptr, nullptr, 0, DPDNA_FORMAT_JSON, &text) == DPDNA_E_INVALID);
  CHECK(dpdna_analyze(nullptr, 4, 300, DPDNA_FORMAT_JSON, &text) == DPDNA_E_INVALID);
  CHECK(dpdna_check_fasta(nullptr, 3, DPDNA_FORMAT_JSON, &text) == DPDNA_E_INVALID);
  CHECK(dpdna_archive_strand_count(nullptr) == 0);
}
