#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpdna/error.hpp"

namespace dpdna {

// Cyclic order A -> C -> G -> T -> A; all rotation arithmetic is mod 4 on
// these indices.
enum class Nucleotide : std::uint8_t { A = 0, C = 1, G = 2, T = 3 };

using DnaSeq = std::vector<Nucleotide>;

inline constexpr unsigned nt_index(Nucleotide n) { return static_cast<unsigned>(n); }

inline constexpr Nucleotide nt_from_index(unsigned i) {
  return static_cast<Nucleotide>(i & 3u);
}

inline constexpr Nucleotide rotate(Nucleotide n, unsigned offset) {
  return nt_from_index(nt_index(n) + offset);
}

// Watson-Crick pairing: A<->T, C<->G.
inline constexpr Nucleotide complement(Nucleotide n) {
  return nt_from_index(3u - nt_index(n));
}

inline constexpr char nt_char(Nucleotide n) { return "ACGT"[nt_index(n)]; }

std::optional<Nucleotide> nt_from_char(char c);

std::string to_string(const DnaSeq& s);
DnaSeq parse_dna(std::string_view text);  // throws Error{invalid_argument} on non-ACGT

DnaSeq reverse_complement(const DnaSeq& s);

// Fraction of G/C over the whole sequence. Empty input is an error.
double gc_content(const DnaSeq& s);

// Longest homopolymer run. When `preceding` is given it counts as the
// neighbour of s[0], so a run may span the boundary.
std::size_t max_homopolymer_run(const DnaSeq& s,
                                std::optional<Nucleotide> preceding = std::nullopt);

}  // namespace dpdna
