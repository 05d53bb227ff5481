#include "dpdna/selector.hpp"

namespace dpdna {

unsigned select_unbalanced(const PatternHistogram& h) {
  return select_unbalanced(h, SchemeMask{});
}

unsigned select_unbalanced(const PatternHistogram& h, SchemeMask mask) {
  int best = -1;
  for (int v = 3; v >= 0; --v) {
    if (!mask.contains(xx_scheme(unsigned(v)))) continue;
    if (best < 0 || h.count[unsigned(v)] < h.count[unsigned(best)]) best = v;
  }
  if (best < 0) throw Error(ErrorKind::config, "no unbalanced code enabled");
  return unsigned(best);
}

std::size_t max_feasible_two_bit_prefix(const BitVec& bits, Nucleotide start,
                                        unsigned homo_max) {
  (void)start;  // the run structure depends only on the patterns
  if (homo_max < 2)
    throw Error(ErrorKind::invalid_argument, "run limit below 2 encodes nothing");
  // Pattern '11' repeats the previous nucleotide, so a streak of s '11'
  // patterns makes a run of s+1 (seeded by the nucleotide before the streak).
  unsigned streak = 0;
  const std::size_t n = bits.pattern_count();
  for (std::size_t k = 0; k < n; ++k) {
    if (bits.pattern(k) == 3u) {
      if (++streak == homo_max) return 2 * k;
    } else {
      streak = 0;
    }
  }
  return bits.size();
}

VlDecision evaluate_vl(std::uint64_t L, std::uint64_t M, double eps1, double eps2,
                       std::uint32_t l_meta) {
  if (L == 0 || M >= L)
    throw Error(ErrorKind::invalid_argument, "cut evaluation needs 0 <= M < L");
  if (eps1 <= 0.0 || eps2 <= 0.0)
    throw Error(ErrorKind::invalid_argument, "densities must be positive");
  VlDecision d;
  d.segment_bits = L;
  d.excluded_bits = M;
  d.eps1 = eps1;
  d.eps2 = eps2;
  d.l_meta = l_meta;
  d.lhs = double(L) / (double(L) / eps1 + double(l_meta));
  const double rem = double(L - M);
  d.rhs = rem / (rem / eps2 + double(l_meta));
  d.take_high_density = d.lhs < d.rhs;
  return d;
}

CodeChoice choose_code(const BitVec& segment, Nucleotide start, const SystemConfig& cfg) {
  if (segment.size() == 0 || segment.size() % 2 != 0)
    throw Error(ErrorKind::invalid_argument, "segment must be a positive even bit count");
  if (!cfg.schemes.any_xx())
    throw Error(ErrorKind::config, "at least one unbalanced code must be enabled");

  const PatternHistogram hist = pattern_histogram(segment);
  const std::uint64_t L = segment.size();
  const std::uint64_t patterns = L / 2;

  CodeChoice choice;
  choice.selected_xx = select_unbalanced(hist, cfg.schemes);
  const std::uint64_t xx_nt = patterns + hist.count[choice.selected_xx];
  const double eps1 = double(L) / double(xx_nt);

  std::size_t prefix = 0;
  if (cfg.schemes.contains(SchemeId::two_bit))
    prefix = max_feasible_two_bit_prefix(segment, start, cfg.homo_max_run);

  if (prefix == L) {
    choice.scheme = SchemeId::two_bit;
    choice.bits_used = L;
    choice.payload_nt = patterns;
    choice.epsilon = 2.0;
    choice.full_two_bit_pass = true;
    return choice;
  }

  if (prefix > 0) {
    choice.vl = evaluate_vl(L, L - prefix, eps1, 2.0, vl_meta_nt(cfg));
    if (choice.vl->take_high_density) {
      choice.scheme = SchemeId::two_bit;
      choice.bits_used = prefix;
      choice.payload_nt = prefix / 2;
      choice.epsilon = 2.0;
      return choice;
    }
  }

  choice.scheme = xx_scheme(choice.selected_xx);
  choice.bits_used = L;
  choice.payload_nt = xx_nt;
  choice.epsilon = eps1;
  return choice;
}

}  // namespace dpdna
