#include "dpdna/feasibility.hpp"

#include <iomanip>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "dpdna/error.hpp"

namespace dpdna {

bool detect_hairpin(const DnaSeq& s, std::uint32_t stem_min, std::uint32_t loop_min) {
  const std::size_t k = stem_min;
  if (k > 32) throw Error(ErrorKind::invalid_argument, "stem too long to hash");
  if (k == 0 || s.size() < 2 * k + loop_min) return false;

  // Rolling 2-bit hash of every k-mer; a stem at i whose reverse complement
  // starts at j folds back iff j >= i + k + loop. Positions are bucketed by
  // the k-mer code of the *reverse complement* they would pair with.
  const std::uint64_t mask =
      (k == 32) ? ~std::uint64_t(0) : ((std::uint64_t(1) << (2 * k)) - 1);

  std::vector<std::uint64_t> code(s.size() - k + 1);
  std::uint64_t h = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    h = ((h << 2) | nt_index(s[i])) & mask;
    if (i + 1 >= k) code[i + 1 - k] = h;
  }

  // revcomp code of the k-mer at i, built once per position.
  std::unordered_map<std::uint64_t, std::size_t> earliest;  // code -> first i
  earliest.reserve(code.size());
  for (std::size_t i = 0; i < code.size(); ++i)
    if (!earliest.count(code[i])) earliest[code[i]] = i;

  for (std::size_t i = 0; i < code.size(); ++i) {
    std::uint64_t rc = 0;
    std::uint64_t c = code[i];
    for (std::size_t b = 0; b < k; ++b) {
      rc = (rc << 2) | (3u - (c & 3u));
      c >>= 2;
    }
    const auto it = earliest.find(rc);
    if (it == earliest.end()) continue;
    // Need some j with code[j] == rc and j >= i + k + loop. The earliest j
    // is not enough; scan forward from the earliest hit only when needed.
    if (it->second >= i + k + loop_min) return true;
    for (std::size_t j = i + k + loop_min; j < code.size(); ++j)
      if (code[j] == rc) return true;
  }
  return false;
}

StrandScore score_strand(const DnaSeq& s, const RuleSet& rules) {
  if (s.empty()) throw Error(ErrorKind::invalid_argument, "empty strand");
  StrandScore sc;
  sc.homopolymer = max_homopolymer_run(s) > rules.homopolymer_max;
  const double gc = gc_content(s);
  sc.gc = gc < rules.gc_low || gc > rules.gc_high;
  sc.hairpin = detect_hairpin(s, rules.hairpin_stem_min, rules.hairpin_loop_min);
  sc.length = s.size() > rules.length_max;
  return sc;
}

FeasibilityReport corpus_report(std::span<const DnaSeq> strands, const RuleSet& rules) {
  if (strands.empty())
    throw Error(ErrorKind::invalid_argument, "feasibility needs at least one strand");
  FeasibilityReport r;
  r.strand_count = strands.size();
  double gc_sum = 0.0;
  std::uint64_t score_sum = 0;
  for (const DnaSeq& s : strands) {
    const StrandScore sc = score_strand(s, rules);
    gc_sum += gc_content(s);
    score_sum += std::uint64_t(sc.score());
    r.gc_violations += sc.gc;
    r.homopolymer_violations += sc.homopolymer;
    r.hairpin_count += sc.hairpin;
    r.length_violations += sc.length;
  }
  r.mean_gc = gc_sum / double(r.strand_count);
  r.homopolymer_violation = r.homopolymer_violations > 0;
  r.length_violation = r.length_violations > 0;
  r.hairpin_ratio = double(r.hairpin_count) / double(r.strand_count);
  r.avg_score = double(score_sum) / double(r.strand_count);
  return r;
}

std::string FeasibilityReport::to_table() const {
  std::ostringstream out;
  out << std::fixed;
  out << "strands              " << strand_count << '\n';
  out << "mean GC              " << std::setprecision(4) << mean_gc << '\n';
  out << "GC violations        " << gc_violations << '\n';
  out << "homopolymer > limit  " << homopolymer_violations << '\n';
  out << "hairpin strands      " << hairpin_count << " (ratio " << std::setprecision(5)
      << hairpin_ratio << ")\n";
  out << "length violations    " << length_violations << '\n';
  out << "average score        " << std::setprecision(4) << avg_score << '\n';
  return out.str();
}

}  // namespace dpdna
