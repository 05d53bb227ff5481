#include "dpdna/config.hpp"

#include <cmath>

#include "dpdna/codecs.hpp"
#include "dpdna/error.hpp"

namespace dpdna {

SystemConfig SystemConfig::defaults() {
  SystemConfig cfg;
  cfg.primer_forward = parse_dna(kDefaultPrimerForward);
  cfg.primer_reverse = parse_dna(kDefaultPrimerReverse);
  return cfg;
}

Nucleotide SystemConfig::start_nt() const {
  if (primer_forward.empty())
    throw Error(ErrorKind::config, "forward primer is empty");
  return primer_forward.back();
}

std::uint64_t SystemConfig::ecc_ratio_ppm() const {
  return std::uint64_t(std::llround(ecc_overhead_ratio * 1e6));
}

std::uint64_t SystemConfig::ecc_bits_for(std::uint64_t payload_bits) const {
  const std::uint64_t ppm = ecc_ratio_ppm();
  return (payload_bits * ppm + 999999u) / 1000000u;
}

std::uint32_t SystemConfig::fixed_meta_nt() const {
  return std::uint32_t(primer_forward.size() + primer_reverse.size() + 2 +
                       trit_len_for_bits(index_bits));
}

std::uint32_t SystemConfig::effective_segment_bits() const {
  return segment_bits != 0 ? segment_bits : default_segment_bits(*this);
}

void SystemConfig::validate() const {
  if (homo_max_run != 2 && homo_max_run != 3)
    throw Error(ErrorKind::config, "homopolymer limit must be 2 or 3");
  if (primer_forward.empty() || primer_reverse.empty())
    throw Error(ErrorKind::config, "primers must be non-empty");
  if (index_bits < 1 || index_bits > 64)
    throw Error(ErrorKind::config, "index_bits must be in [1, 64]");
  if (!(ecc_overhead_ratio >= 0.0) || ecc_overhead_ratio >= 1.0)
    throw Error(ErrorKind::config, "ecc_overhead_ratio must be in [0, 1)");
  if (!schemes.any_xx())
    throw Error(ErrorKind::config,
                "at least one unbalanced code must be enabled; the 2bit code "
                "cannot encode arbitrary segments alone");
  if (strand_cap_nt > 1000)
    throw Error(ErrorKind::config, "strand cap exceeds the 1000 nt design rule");
  if (segment_bits != 0) {
    if (segment_bits % 2 != 0)
      throw Error(ErrorKind::config, "segment_bits must be even");
    SystemConfig probe = *this;
    probe.segment_bits = 0;
    if (segment_bits > default_segment_bits(probe))
      throw Error(ErrorKind::config,
                  "segment_bits too large: worst-case strand exceeds the cap");
  } else {
    (void)default_segment_bits(*this);  // throws when the cap is too small
  }
}

std::uint32_t default_segment_bits(const SystemConfig& cfg) {
  const std::uint64_t cap = cfg.strand_cap_nt;
  const std::uint64_t fixed = cfg.fixed_meta_nt();
  auto fits = [&](std::uint64_t L) {
    const std::uint64_t patterns = L / 2;
    const std::uint64_t worst_payload_nt = patterns + patterns / 4;
    const std::uint64_t ecc_nt = trit_len_for_bits(cfg.ecc_bits_for(L));
    return fixed + worst_payload_nt + ecc_nt <= cap;
  };
  if (!fits(2))
    throw Error(ErrorKind::config, "strand cap too small for metadata plus one pattern");
  std::uint64_t L = 2;
  while (fits(L + 2)) L += 2;
  return std::uint32_t(L);
}

std::uint32_t vl_meta_nt(const SystemConfig& cfg) {
  return std::uint32_t(cfg.primer_forward.size() + cfg.primer_reverse.size() + 2 +
                       (cfg.index_bits + 1) / 2);
}

}  // namespace dpdna
