#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "dpdna/nucleotide.hpp"

namespace dpdna {

// Biochemical design rules scored per strand. Defaults follow common primer
// design practice: no homopolymer of 4+, GC within 40-60%, no self-hairpin,
// strands at most 1000 nt. The 12-nt stem threshold keeps the hairpin rule
// meaningful at these lengths; a 6-nt stem fires on nearly every
// pseudo-random 150-mer.
struct RuleSet {
  std::uint32_t homopolymer_max = 3;  // longest allowed run
  double gc_low = 0.40;
  double gc_high = 0.60;
  std::uint32_t hairpin_stem_min = 12;
  std::uint32_t hairpin_loop_min = 3;
  std::uint32_t length_max = 1000;
};

struct StrandScore {
  bool homopolymer = false;
  bool gc = false;
  bool hairpin = false;
  bool length = false;

  int score() const { return int(homopolymer) + int(gc) + int(hairpin) + int(length); }
};

// True when some stem of stem_min nucleotides reappears as its reverse
// complement at least loop_min nucleotides downstream (a fold-back stem).
bool detect_hairpin(const DnaSeq& s, std::uint32_t stem_min, std::uint32_t loop_min);

StrandScore score_strand(const DnaSeq& s, const RuleSet& rules);

struct FeasibilityReport {
  std::uint64_t strand_count = 0;
  double mean_gc = 0.0;
  bool homopolymer_violation = false;
  bool length_violation = false;
  double hairpin_ratio = 0.0;
  double avg_score = 0.0;
  std::uint64_t gc_violations = 0;
  std::uint64_t homopolymer_violations = 0;
  std::uint64_t hairpin_count = 0;
  std::uint64_t length_violations = 0;

  std::string to_table() const;
};

// Requires at least one strand.
FeasibilityReport corpus_report(std::span<const DnaSeq> strands, const RuleSet& rules);

}  // namespace dpdna
