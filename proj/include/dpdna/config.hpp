#pragma once

#include <cstdint>
#include <string>

#include "dpdna/nucleotide.hpp"
#include "dpdna/scheme.hpp"

namespace dpdna {

// Score-0 primer pair: 50% GC, runs <= 2, no short-stem self-hairpin. The
// forward primer's last nucleotide seeds every strand's rotation.
inline constexpr const char* kDefaultPrimerForward = "ACGCATAGTGCTTGACTGAC";
inline constexpr const char* kDefaultPrimerReverse = "TGCAGTACGATCCTAGTGCA";

struct SystemConfig {
  std::uint32_t strand_cap_nt = 150;
  std::uint32_t homo_max_run = 3;  // 2 or 3
  DnaSeq primer_forward;
  DnaSeq primer_reverse;
  std::uint32_t index_bits = 32;
  double ecc_overhead_ratio = 0.15;
  // 0 selects the worst-case-fit default for the cap.
  std::uint32_t segment_bits = 0;
  SchemeMask schemes;
  std::uint64_t seed = 1;

  static SystemConfig defaults();

  void validate() const;  // throws Error{config}

  Nucleotide start_nt() const;  // last nucleotide of the forward primer

  // ecc_overhead_ratio quantized to parts-per-million so field sizing is
  // exact integer arithmetic on both encode and decode.
  std::uint64_t ecc_ratio_ppm() const;
  std::uint64_t ecc_bits_for(std::uint64_t payload_bits) const;

  // Nucleotides of every field except payload and ECC: primers + Encoding +
  // index field.
  std::uint32_t fixed_meta_nt() const;

  std::uint32_t effective_segment_bits() const;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

// Largest even segment length whose worst-case strand still fits the cap:
// unbalanced-code payload can reach T + floor(T/4) nucleotides for T
// patterns, plus the ECC field at its own worst size. Throws Error{config}
// when the cap cannot hold even one pattern.
std::uint32_t default_segment_bits(const SystemConfig& cfg);

// Metadata-nucleotide constant fed to evaluate_vl by the cutting decision:
// primers + 2 + ceil(index_bits/2). Kept as the nominal 2 bits/nt
// approximation of the index field.
std::uint32_t vl_meta_nt(const SystemConfig& cfg);

}  // namespace dpdna
