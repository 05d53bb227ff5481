#include "dpdna/nucleotide.hpp"

#include <algorithm>

namespace dpdna {

std::optional<Nucleotide> nt_from_char(char c) {
  switch (c) {
    case 'A': case 'a': return Nucleotide::A;
    case 'C': case 'c': return Nucleotide::C;
    case 'G': case 'g': return Nucleotide::G;
    case 'T': case 't': return Nucleotide::T;
    default: return std::nullopt;
  }
}

std::string to_string(const DnaSeq& s) {
  std::string out;
  out.reserve(s.size());
  for (Nucleotide n : s) out.push_back(nt_char(n));
  return out;
}

DnaSeq parse_dna(std::string_view text) {
  DnaSeq out;
  out.reserve(text.size());
  for (char c : text) {
    auto n = nt_from_char(c);
    if (!n) throw Error(ErrorKind::invalid_argument,
                        std::string("invalid nucleotide character '") + c + "'");
    out.push_back(*n);
  }
  return out;
}

DnaSeq reverse_complement(const DnaSeq& s) {
  DnaSeq out;
  out.reserve(s.size());
  for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(complement(*it));
  return out;
}

double gc_content(const DnaSeq& s) {
  if (s.empty()) throw Error(ErrorKind::invalid_argument, "gc_content of empty sequence");
  std::size_t gc = 0;
  for (Nucleotide n : s)
    if (n == Nucleotide::C || n == Nucleotide::G) ++gc;
  return double(gc) / double(s.size());
}

std::size_t max_homopolymer_run(const DnaSeq& s, std::optional<Nucleotide> preceding) {
  if (s.empty()) return 0;
  std::size_t best = 1, run = 1;
  if (preceding && *preceding == s[0]) run = 2;
  best = run;
  for (std::size_t i = 1; i < s.size(); ++i) {
    run = (s[i] == s[i - 1]) ? run + 1 : 1;
    best = std::max(best, run);
  }
  return best;
}

}  // namespace dpdna
