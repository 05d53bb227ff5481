#pragma once

#include <cstdint>
#include <optional>

#include "dpdna/bits.hpp"
#include "dpdna/codecs.hpp"
#include "dpdna/config.hpp"

namespace dpdna {

// Cutting decision: keep the whole segment at density eps1, or drop M bits
// and encode the remainder at eps2. Both sides count l_meta metadata
// nucleotides per strand.
struct VlDecision {
  std::uint64_t segment_bits = 0;   // L
  std::uint64_t excluded_bits = 0;  // M
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::uint32_t l_meta = 0;
  double lhs = 0.0;  // L / (L/eps1 + l_meta)
  double rhs = 0.0;  // (L-M) / ((L-M)/eps2 + l_meta)
  bool take_high_density = false;
};

struct CodeChoice {
  SchemeId scheme = SchemeId::two_bit;
  std::uint64_t bits_used = 0;
  std::uint64_t payload_nt = 0;
  double epsilon = 0.0;
  unsigned selected_xx = 3;       // DPAC candidate, even when two_bit wins
  bool full_two_bit_pass = false; // whole segment passed the run scan
  std::optional<VlDecision> vl;   // present when the cut comparison ran
};

// Minimum-count pattern; ties prefer '11' > '10' > '01' > '00'. The masked
// overload restricts candidates to enabled unbalanced codes.
unsigned select_unbalanced(const PatternHistogram& h);
unsigned select_unbalanced(const PatternHistogram& h, SchemeMask mask);

// Largest even-bit prefix whose two-bit encoding keeps homopolymer runs
// <= homo_max, counting adjacency with `start`. Equivalently: the prefix
// stops at the first run of homo_max consecutive '11' patterns.
std::size_t max_feasible_two_bit_prefix(const BitVec& bits, Nucleotide start,
                                        unsigned homo_max);

// Strict comparison; requires L > 0, 0 <= M < L, positive densities.
VlDecision evaluate_vl(std::uint64_t L, std::uint64_t M, double eps1, double eps2,
                       std::uint32_t l_meta);

// Two-path selection for one segment: the unbalanced code picked from the
// pattern histogram versus a two-bit prefix. A full-pass segment takes the
// two-bit code outright; a partial prefix goes through evaluate_vl.
CodeChoice choose_code(const BitVec& segment, Nucleotide start, const SystemConfig& cfg);

}  // namespace dpdna
