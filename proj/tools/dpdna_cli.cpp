// dpdna command-line front end. Talks to the library exclusively through the
// C interface in dpdna.h; everything here is argument plumbing and file IO.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpdna.h"

namespace {

int exit_code_for(dpdna_status s) {
  switch (s) {
    case DPDNA_OK: return 0;
    case DPDNA_E_IO: return 2;
    case DPDNA_E_INVALID:
    case DPDNA_E_CONFIG:
    case DPDNA_E_CAPACITY: return 3;
    case DPDNA_E_PARSE:
    case DPDNA_E_INTEGRITY: return 4;
    case DPDNA_E_INTERNAL: return 1;
  }
  return 1;
}

[[noreturn]] void die(dpdna_status s) {
  std::cerr << "error: " << dpdna_last_error() << '\n';
  std::exit(exit_code_for(s));
}

[[noreturn]] void die_io(const std::string& msg) {
  std::cerr << "error: " << msg << '\n';
  std::exit(2);
}

void check(dpdna_status s) {
  if (s != DPDNA_OK) die(s);
}

struct CStr {
  char* p = nullptr;
  ~CStr() { dpdna_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct Bytes {
  uint8_t* p = nullptr;
  size_t n = 0;
  ~Bytes() { dpdna_free(p); }
};

struct Config {
  dpdna_config* p = dpdna_config_new();
  ~Config() { dpdna_config_free(p); }
};

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die_io("cannot open " + path);
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  if (in.bad()) die_io("read failed on " + path);
  return data;
}

std::string read_text_file(const std::string& path) {
  const std::vector<uint8_t> data = read_file(path);
  return std::string(data.begin(), data.end());
}

void write_file_atomic(const std::string& path, const void* data, size_t size) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) die_io("cannot create " + tmp);
    out.write(static_cast<const char*>(data), std::streamsize(size));
    if (!out) die_io("write failed on " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) die_io("cannot move " + tmp + " to " + path + ": " + ec.message());
}

void write_text_atomic(const std::string& path, const std::string& text) {
  write_file_atomic(path, text.data(), text.size());
}

// Config sources, lowest to highest precedence: library defaults, the JSON
// file named by $DPDNA_CONFIG, then command-line flags.
struct CfgFlags {
  std::optional<uint64_t> cap, homo, index_bits, segment_bits, seed;
  std::optional<double> ecc_ratio;
  std::optional<std::string> schemes, primers_file;
};

void attach_config_flags(CLI::App* cmd, CfgFlags& f) {
  cmd->add_option("--cap", f.cap, "strand length cap in nucleotides");
  cmd->add_option("--homo", f.homo, "max homopolymer run admitted for the 2bit code (2 or 3)");
  cmd->add_option("--index-bits", f.index_bits, "width of the strand index field");
  cmd->add_option("--segment-bits", f.segment_bits, "bits per segment (0 = auto-fit)");
  cmd->add_option("--seed", f.seed, "deterministic seed");
  cmd->add_option("--ecc-ratio", f.ecc_ratio, "ECC overhead as a fraction of payload bits");
  cmd->add_option("--scheme-mask", f.schemes, "enabled codes: all | dpac | comma list of {2bit,00,01,10,11}");
  cmd->add_option("--primers", f.primers_file, "file with forward and reverse primer lines");
}

void apply_env_config(dpdna_config* cfg) {
  const char* path = std::getenv("DPDNA_CONFIG");
  if (!path || !*path) return;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const std::exception& e) {
    std::cerr << "error: bad config file " << path << ": " << e.what() << '\n';
    std::exit(3);
  }
  for (const auto& [key, value] : j.items()) {
    dpdna_status s;
    if (value.is_number_float())
      s = dpdna_config_set_f64(cfg, key.c_str(), value.get<double>());
    else if (value.is_number())
      s = dpdna_config_set_u64(cfg, key.c_str(), value.get<uint64_t>());
    else if (value.is_string())
      s = dpdna_config_set_str(cfg, key.c_str(), value.get<std::string>().c_str());
    else
      s = dpdna_config_set_str(cfg, key.c_str(), value.dump().c_str());
    if (s != DPDNA_OK) die(s);
  }
}

void apply_flags(dpdna_config* cfg, const CfgFlags& f) {
  if (f.cap) check(dpdna_config_set_u64(cfg, "strand_cap_nt", *f.cap));
  if (f.homo) check(dpdna_config_set_u64(cfg, "homo_max_run", *f.homo));
  if (f.index_bits) check(dpdna_config_set_u64(cfg, "index_bits", *f.index_bits));
  if (f.segment_bits) check(dpdna_config_set_u64(cfg, "segment_bits", *f.segment_bits));
  if (f.seed) check(dpdna_config_set_u64(cfg, "seed", *f.seed));
  if (f.ecc_ratio) check(dpdna_config_set_f64(cfg, "ecc_overhead_ratio", *f.ecc_ratio));
  if (f.schemes) check(dpdna_config_set_str(cfg, "schemes", f.schemes->c_str()));
  if (f.primers_file) {
    std::ifstream in(*f.primers_file);
    if (!in) die_io("cannot open " + *f.primers_file);
    std::string fwd, rev;
    if (!std::getline(in, fwd) || !std::getline(in, rev)) {
      std::cerr << "error: primer file needs two lines (forward, reverse)\n";
      std::exit(3);
    }
    if (!fwd.empty() && fwd.back() == '\r') fwd.pop_back();
    if (!rev.empty() && rev.back() == '\r') rev.pop_back();
    check(dpdna_config_set_str(cfg, "primer_forward", fwd.c_str()));
    check(dpdna_config_set_str(cfg, "primer_reverse", rev.c_str()));
  }
}

dpdna_format format_of(const std::string& name) {
  return name == "json" ? DPDNA_FORMAT_JSON : DPDNA_FORMAT_TABLE;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DNA-storage constrained encoder"};
  app.require_subcommand(1);

  // encode
  auto* enc = app.add_subcommand("encode", "encode a file into DNA strands");
  std::string enc_input, enc_output, enc_manifest, enc_audit, enc_format = "table";
  CfgFlags enc_flags;
  enc->add_option("input", enc_input, "file to encode")->required();
  enc->add_option("-o,--output", enc_output, "FASTA output path")->required();
  enc->add_option("--manifest", enc_manifest, "manifest path (default: <output>.manifest.json)");
  enc->add_option("--audit", enc_audit, "write per-strand decision log (JSON lines)");
  enc->add_option("--format", enc_format, "summary format: table | json")
      ->check(CLI::IsMember({"table", "json"}));
  attach_config_flags(enc, enc_flags);

  // decode
  auto* dec = app.add_subcommand("decode", "decode strands back into the original file");
  std::string dec_input, dec_manifest, dec_output;
  dec->add_option("input", dec_input, "FASTA strand file")->required();
  dec->add_option("--manifest", dec_manifest, "manifest written at encode time")->required();
  dec->add_option("-o,--output", dec_output, "output path (default: stdout)");

  // analyze
  auto* ana = app.add_subcommand("analyze", "pattern distribution of a file's bits");
  std::string ana_input, ana_format = "table";
  uint32_t ana_segment_bits = 300;
  ana->add_option("input", ana_input, "file to analyze")->required();
  ana->add_option("--segment-bits", ana_segment_bits, "segment size in bits");
  ana->add_option("--format", ana_format)->check(CLI::IsMember({"table", "json"}));

  // check
  auto* chk = app.add_subcommand("check", "design-rule report over a FASTA file");
  std::string chk_input, chk_format = "table";
  uint32_t chk_homo = 3;
  chk->add_option("input", chk_input, "FASTA strand file")->required();
  chk->add_option("--homo", chk_homo, "homopolymer limit to check against");
  chk->add_option("--format", chk_format)->check(CLI::IsMember({"table", "json"}));

  // bench
  auto* ben = app.add_subcommand("bench", "density comparison against reference codes");
  std::string ben_input, ben_format = "table";
  CfgFlags ben_flags;
  ben->add_option("input", ben_input, "file to benchmark")->required();
  ben->add_option("--format", ben_format)->check(CLI::IsMember({"table", "json"}));
  attach_config_flags(ben, ben_flags);

  // sweep
  auto* swp = app.add_subcommand("sweep", "density across strand length caps");
  std::string swp_input, swp_format = "table";
  std::vector<uint32_t> swp_caps = {100, 150, 300, 700};
  CfgFlags swp_flags;
  swp->add_option("input", swp_input, "file to encode at each cap")->required();
  swp->add_option("--caps", swp_caps, "cap list")->delimiter(',');
  swp->add_option("--format", swp_format)->check(CLI::IsMember({"table", "json"}));
  attach_config_flags(swp, swp_flags);

  CLI11_PARSE(app, argc, argv);

  Config cfg;
  if (!cfg.p) die_io("out of memory");
  apply_env_config(cfg.p);

  if (*enc) {
    apply_flags(cfg.p, enc_flags);
    const std::vector<uint8_t> data = read_file(enc_input);
    const std::string name = std::filesystem::path(enc_input).filename().string();
    dpdna_archive* a = nullptr;
    check(dpdna_encode(cfg.p, data.data(), data.size(), name.c_str(),
                       enc_audit.empty() ? 0 : 1, &a));
    CStr fasta, manifest, summary;
    check(dpdna_archive_fasta(a, &fasta.p));
    check(dpdna_archive_manifest_json(a, &manifest.p));
    check(dpdna_archive_density(a, format_of(enc_format), &summary.p));
    write_text_atomic(enc_output, fasta.str());
    const std::string manifest_path =
        enc_manifest.empty() ? enc_output + ".manifest.json" : enc_manifest;
    write_text_atomic(manifest_path, manifest.str());
    if (!enc_audit.empty()) {
      CStr audit;
      check(dpdna_archive_audit(a, &audit.p));
      write_text_atomic(enc_audit, audit.str());
    }
    dpdna_archive_free(a);
    std::cout << summary.str();
    if (!summary.str().empty() && summary.str().back() != '\n') std::cout << '\n';
    return 0;
  }

  if (*dec) {
    const std::string manifest = read_text_file(dec_manifest);
    const std::string fasta = read_text_file(dec_input);
    Bytes out;
    check(dpdna_decode_fasta(manifest.c_str(), fasta.c_str(), &out.p, &out.n));
    if (dec_output.empty()) {
      std::cout.write(reinterpret_cast<const char*>(out.p), std::streamsize(out.n));
    } else {
      write_file_atomic(dec_output, out.p, out.n);
      std::cerr << "decoded " << out.n << " bytes\n";
    }
    return 0;
  }

  if (*ana) {
    const std::vector<uint8_t> data = read_file(ana_input);
    CStr out;
    check(dpdna_analyze(data.data(), data.size(), ana_segment_bits,
                        format_of(ana_format), &out.p));
    std::cout << out.str();
    return 0;
  }

  if (*chk) {
    const std::string fasta = read_text_file(chk_input);
    CStr out;
    check(dpdna_check_fasta(fasta.c_str(), chk_homo, format_of(chk_format), &out.p));
    std::cout << out.str();
    return 0;
  }

  if (*ben) {
    apply_flags(cfg.p, ben_flags);
    const std::vector<uint8_t> data = read_file(ben_input);
    CStr out;
    check(dpdna_bench(cfg.p, data.data(), data.size(), format_of(ben_format), &out.p));
    std::cout << out.str();
    return 0;
  }

  if (*swp) {
    apply_flags(cfg.p, swp_flags);
    const std::vector<uint8_t> data = read_file(swp_input);
    CStr out;
    check(dpdna_sweep(cfg.p, data.data(), data.size(), swp_caps.data(), swp_caps.size(),
                      format_of(swp_format), &out.p));
    std::cout << out.str();
    return 0;
  }

  return 0;
}
