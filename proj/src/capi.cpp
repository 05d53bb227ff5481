#include "dpdna.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dpdna/pipeline.hpp"

using nlohmann::json;

struct dpdna_config {
  dpdna::SystemConfig cfg = dpdna::SystemConfig::defaults();
};

struct dpdna_archive {
  dpdna::EncodeResult result;
};

namespace {

thread_local std::string g_last_error;

dpdna_status map_kind(dpdna::ErrorKind k) {
  using dpdna::ErrorKind;
  switch (k) {
    case ErrorKind::invalid_argument: return DPDNA_E_INVALID;
    case ErrorKind::io: return DPDNA_E_IO;
    case ErrorKind::config: return DPDNA_E_CONFIG;
    case ErrorKind::parse: return DPDNA_E_PARSE;
    case ErrorKind::integrity: return DPDNA_E_INTEGRITY;
    case ErrorKind::capacity: return DPDNA_E_CAPACITY;
    case ErrorKind::internal: return DPDNA_E_INTERNAL;
  }
  return DPDNA_E_INTERNAL;
}

std::string describe(const dpdna::Error& e) {
  std::string msg = e.what();
  const auto& idx = e.strand_indices();
  if (!idx.empty()) {
    msg += " [strands:";
    for (std::size_t i = 0; i < idx.size() && i < 16; ++i)
      msg += ' ' + std::to_string(idx[i]);
    if (idx.size() > 16) msg += " ...";
    msg += ']';
  }
  return msg;
}

template <class F>
dpdna_status guarded(F&& f) noexcept {
  try {
    f();
    return DPDNA_OK;
  } catch (const dpdna::Error& e) {
    g_last_error = describe(e);
    return map_kind(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DPDNA_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DPDNA_E_INTERNAL;
  }
}

dpdna_status fail_invalid(const char* msg) {
  g_last_error = msg;
  return DPDNA_E_INVALID;
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size());
  p[s.size()] = '\0';
  return p;
}

json config_json(const dpdna::SystemConfig& c) {
  return json{{"strand_cap_nt", c.strand_cap_nt},
              {"homo_max_run", c.homo_max_run},
              {"primer_forward", dpdna::to_string(c.primer_forward)},
              {"primer_reverse", dpdna::to_string(c.primer_reverse)},
              {"index_bits", c.index_bits},
              {"ecc_overhead_ratio", c.ecc_overhead_ratio},
              {"segment_bits", c.segment_bits},
              {"schemes", c.schemes.to_string()},
              {"seed", c.seed}};
}

dpdna::Manifest manifest_from_text(const char* manifest_json) {
  json j;
  try {
    j = json::parse(manifest_json);
  } catch (const std::exception& e) {
    throw dpdna::Error(dpdna::ErrorKind::config,
                       std::string("manifest is not valid JSON: ") + e.what());
  }
  return dpdna::Manifest::from_json(j);
}

std::vector<dpdna::DnaSeq> seqs_from_fasta_text(const char* fasta) {
  std::istringstream in(fasta);
  std::vector<dpdna::DnaSeq> seqs;
  for (dpdna::FastaEntry& e : dpdna::read_fasta(in)) seqs.push_back(std::move(e.seq));
  return seqs;
}

}  // namespace

extern "C" {

const char* dpdna_version(void) { return "1.0.0"; }

const char* dpdna_last_error(void) { return g_last_error.c_str(); }

void dpdna_free(void* p) { std::free(p); }

dpdna_config* dpdna_config_new(void) {
  try {
    return new dpdna_config();
  } catch (...) {
    return nullptr;
  }
}

void dpdna_config_free(dpdna_config* cfg) { delete cfg; }

dpdna_status dpdna_config_set_u64(dpdna_config* cfg, const char* key, uint64_t value) {
  if (!cfg || !key) return fail_invalid("null argument");
  return guarded([&] {
    const std::string k = key;
    if (k == "strand_cap_nt")
      cfg->cfg.strand_cap_nt = static_cast<std::uint32_t>(value);
    else if (k == "homo_max_run")
      cfg->cfg.homo_max_run = static_cast<std::uint32_t>(value);
    else if (k == "index_bits")
      cfg->cfg.index_bits = static_cast<std::uint32_t>(value);
    else if (k == "segment_bits")
      cfg->cfg.segment_bits = static_cast<std::uint32_t>(value);
    else if (k == "seed")
      cfg->cfg.seed = value;
    else
      throw dpdna::Error(dpdna::ErrorKind::invalid_argument,
                         "unknown integer key: " + k);
  });
}

dpdna_status dpdna_config_set_f64(dpdna_config* cfg, const char* key, double value) {
  if (!cfg || !key) return fail_invalid("null argument");
  return guarded([&] {
    const std::string k = key;
    if (k == "ecc_overhead_ratio")
      cfg->cfg.ecc_overhead_ratio = value;
    else
      throw dpdna::Error(dpdna::ErrorKind::invalid_argument, "unknown float key: " + k);
  });
}

dpdna_status dpdna_config_set_str(dpdna_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail_invalid("null argument");
  return guarded([&] {
    const std::string k = key;
    if (k == "primer_forward")
      cfg->cfg.primer_forward = dpdna::parse_dna(value);
    else if (k == "primer_reverse")
      cfg->cfg.primer_reverse = dpdna::parse_dna(value);
    else if (k == "schemes")
      cfg->cfg.schemes = dpdna::SchemeMask::parse(value);
    else
      throw dpdna::Error(dpdna::ErrorKind::invalid_argument,
                         "unknown string key: " + k);
  });
}

dpdna_status dpdna_config_validate(const dpdna_config* cfg) {
  if (!cfg) return fail_invalid("null argument");
  return guarded([&] { cfg->cfg.validate(); });
}

dpdna_status dpdna_config_json(const dpdna_config* cfg, char** out) {
  if (!cfg || !out) return fail_invalid("null argument");
  return guarded([&] { *out = dup_string(config_json(cfg->cfg).dump(2)); });
}

dpdna_status dpdna_encode(const dpdna_config* cfg, const uint8_t* data, size_t size,
                          const char* source_name, int audit, dpdna_archive** out) {
  if (!cfg || !out || (!data && size > 0)) return fail_invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    auto a = std::make_unique<dpdna_archive>();
    a->result = dpdna::encode_bytes({data, size}, cfg->cfg,
                                    source_name ? source_name : "", audit != 0);
    *out = a.release();
  });
}

void dpdna_archive_free(dpdna_archive* a) { delete a; }

uint64_t dpdna_archive_strand_count(const dpdna_archive* a) {
  return a ? a->result.strands.size() : 0;
}

dpdna_status dpdna_archive_strand(const dpdna_archive* a, uint64_t i, char** out) {
  if (!a || !out) return fail_invalid("null argument");
  return guarded([&] {
    if (i >= a->result.strands.size())
      throw dpdna::Error(dpdna::ErrorKind::invalid_argument, "strand index out of range");
    *out = dup_string(dpdna::to_string(a->result.strands[i].full_seq));
  });
}

dpdna_status dpdna_archive_fasta(const dpdna_archive* a, char** out) {
  if (!a || !out) return fail_invalid("null argument");
  return guarded([&] {
    std::ostringstream s;
    dpdna::write_fasta(s, a->result.strands);
    *out = dup_string(s.str());
  });
}

dpdna_status dpdna_archive_manifest_json(const dpdna_archive* a, char** out) {
  if (!a || !out) return fail_invalid("null argument");
  return guarded([&] { *out = dup_string(a->result.manifest.to_json().dump()); });
}

dpdna_status dpdna_archive_audit(const dpdna_archive* a, char** out) {
  if (!a || !out) return fail_invalid("null argument");
  return guarded([&] {
    std::string joined;
    for (const std::string& line : a->result.audit_lines) {
      joined += line;
      joined += '\n';
    }
    *out = dup_string(joined);
  });
}

dpdna_status dpdna_archive_density(const dpdna_archive* a, dpdna_format fmt, char** out) {
  if (!a || !out) return fail_invalid("null argument");
  return guarded([&] {
    const dpdna::DensityReport r = dpdna::density_report(a->result.strands);
    if (fmt == DPDNA_FORMAT_JSON) {
      *out = dup_string(r.to_json().dump(2));
      return;
    }
    std::ostringstream s;
    s.precision(4);
    s << std::fixed;
    s << "strands          " << r.strand_count << '\n'
      << "payload bits     " << r.payload_bits << '\n'
      << "payload nt       " << r.payload_nt << '\n'
      << "total nt         " << r.total_nt << '\n'
      << "payload density  " << r.payload_density << " bits/nt\n"
      << "overall density  " << r.overall_density << " bits/nt\n";
    for (const auto& [name, count] : r.scheme_usage)
      s << "scheme " << name << std::string(name.size() < 11 ? 11 - name.size() : 1, ' ')
        << count << '\n';
    *out = dup_string(s.str());
  });
}

dpdna_status dpdna_archive_feasibility(const dpdna_archive* a, dpdna_format fmt,
                                       char** out) {
  if (!a || !out) return fail_invalid("null argument");
  return guarded([&] {
    std::vector<dpdna::DnaSeq> seqs;
    seqs.reserve(a->result.strands.size());
    for (const dpdna::StrandRecord& r : a->result.strands) seqs.push_back(r.full_seq);
    const dpdna::FeasibilityReport rep = dpdna::corpus_report(seqs, dpdna::RuleSet{});
    *out = dup_string(fmt == DPDNA_FORMAT_JSON ? dpdna::feasibility_json(rep).dump(2)
                                               : rep.to_table());
  });
}

dpdna_status dpdna_decode(const char* manifest_json, const char* const* strands,
                          size_t count, uint8_t** out, size_t* out_size) {
  if (!manifest_json || !out || !out_size || (!strands && count > 0))
    return fail_invalid("null argument");
  *out = nullptr;
  *out_size = 0;
  return guarded([&] {
    const dpdna::Manifest m = manifest_from_text(manifest_json);
    std::vector<dpdna::DnaSeq> seqs;
    seqs.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!strands[i])
        throw dpdna::Error(dpdna::ErrorKind::invalid_argument, "null strand string");
      seqs.push_back(dpdna::parse_dna(strands[i]));
    }
    const std::vector<std::uint8_t> bytes = dpdna::decode_strands(seqs, m);
    auto* p = static_cast<uint8_t*>(std::malloc(bytes.size() ? bytes.size() : 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, bytes.data(), bytes.size());
    *out = p;
    *out_size = bytes.size();
  });
}

dpdna_status dpdna_decode_fasta(const char* manifest_json, const char* fasta,
                                uint8_t** out, size_t* out_size) {
  if (!manifest_json || !fasta || !out || !out_size)
    return fail_invalid("null argument");
  *out = nullptr;
  *out_size = 0;
  return guarded([&] {
    const dpdna::Manifest m = manifest_from_text(manifest_json);
    const std::vector<dpdna::DnaSeq> seqs = seqs_from_fasta_text(fasta);
    const std::vector<std::uint8_t> bytes = dpdna::decode_strands(seqs, m);
    auto* p = static_cast<uint8_t*>(std::malloc(bytes.size() ? bytes.size() : 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, bytes.data(), bytes.size());
    *out = p;
    *out_size = bytes.size();
  });
}

dpdna_status dpdna_bench(const dpdna_config* cfg, const uint8_t* data, size_t size,
                         dpdna_format fmt, char** out) {
  if (!cfg || !out || (!data && size > 0)) return fail_invalid("null argument");
  return guarded([&] {
    const dpdna::BenchReport rep = dpdna::baseline_compare({data, size}, cfg->cfg);
    *out = dup_string(fmt == DPDNA_FORMAT_JSON ? rep.to_json().dump(2) : rep.to_table());
  });
}

dpdna_status dpdna_sweep(const dpdna_config* cfg, const uint8_t* data, size_t size,
                         const uint32_t* caps, size_t cap_count, dpdna_format fmt,
                         char** out) {
  if (!cfg || !out || !caps || cap_count == 0 || (!data && size > 0))
    return fail_invalid("null argument");
  return guarded([&] {
    const std::vector<dpdna::SweepRow> rows =
        dpdna::length_sweep({data, size}, cfg->cfg, {caps, cap_count});
    if (fmt == DPDNA_FORMAT_JSON) {
      json arr = json::array();
      for (const dpdna::SweepRow& r : rows) {
        json j = r.report.to_json();
        j["cap"] = r.cap;
        arr.push_back(std::move(j));
      }
      *out = dup_string(json{{"rows", std::move(arr)}}.dump(2));
      return;
    }
    std::ostringstream s;
    s << "  cap  payload b/nt  overall b/nt   strands\n" << std::fixed;
    s.precision(4);
    for (const dpdna::SweepRow& r : rows) {
      s.width(5);
      s << r.cap << "  ";
      s.width(12);
      s << r.report.payload_density << "  ";
      s.width(12);
      s << r.report.overall_density << "  ";
      s.width(8);
      s << r.report.strand_count << '\n';
    }
    *out = dup_string(s.str());
  });
}

dpdna_status dpdna_analyze(const uint8_t* data, size_t size, uint32_t segment_bits,
                           dpdna_format fmt, char** out) {
  if (!out || (!data && size > 0)) return fail_invalid("null argument");
  return guarded([&] {
    const dpdna::PatternAnalysis a = dpdna::analyze_patterns({data, size}, segment_bits);
    *out = dup_string(fmt == DPDNA_FORMAT_JSON ? a.to_json().dump(2) : a.to_table());
  });
}

dpdna_status dpdna_check_fasta(const char* fasta, uint32_t homo_max, dpdna_format fmt,
                               char** out) {
  if (!fasta || !out) return fail_invalid("null argument");
  return guarded([&] {
    const std::vector<dpdna::DnaSeq> seqs = seqs_from_fasta_text(fasta);
    dpdna::RuleSet rules;
    rules.homopolymer_max = homo_max;
    const dpdna::FeasibilityReport rep = dpdna::corpus_report(seqs, rules);
    *out = dup_string(fmt == DPDNA_FORMAT_JSON ? dpdna::feasibility_json(rep).dump(2)
                                               : rep.to_table());
  });
}

}  // extern "C"
