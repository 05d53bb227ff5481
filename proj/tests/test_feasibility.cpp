#include <doctest.h>

#include <random>
#include <vector>

#include "dpdna/config.hpp"
#include "dpdna/feasibility.hpp"

using namespace dpdna;

namespace {

DnaSeq random_seq(std::mt19937_64& rng, std::size_t n) {
  DnaSeq s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.push_back(nt_from_index(unsigned(rng() & 3)));
  return s;
}

// Quadratic reference: every stem position against every downstream window.
bool hairpin_brute(const DnaSeq& s, std::uint32_t stem, std::uint32_t loop) {
  if (s.size() < 2 * std::size_t(stem) + loop) return false;
  for (std::size_t i = 0; i + stem <= s.size(); ++i) {
    const DnaSeq rc =
        reverse_complement(DnaSeq(s.begin() + std::ptrdiff_t(i),
                                  s.begin() + std::ptrdiff_t(i + stem)));
    for (std::size_t j = i + stem + loop; j + stem <= s.size(); ++j) {
      if (std::equal(rc.begin(), rc.end(), s.begin() + std::ptrdiff_t(j))) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("score_strand raises exactly the broken rules") {
  RuleSet rules;

  const DnaSeq balanced = parse_dna("ACGTACGTACGTACGTACGT");
  StrandScore s = score_strand(balanced, rules);
  CHECK(s.score() == 0);

  s = score_strand(parse_dna("ACGTAAAATACGTACGTACG"), rules);
  CHECK(s.homopolymer);
  CHECK_FALSE(s.gc);

  s = score_strand(parse_dna("ATATATATATATATATATAT"), rules);
  CHECK(s.gc);
  CHECK_FALSE(s.homopolymer);

  s = score_strand(parse_dna("GCGCGCGCGCGCGCGCGCGC"), rules);
  CHECK(s.gc);

  rules.length_max = 10;
  s = score_strand(balanced, rules);
  CHECK(s.length);
  CHECK(s.score() == 1);

  CHECK_THROWS_AS(score_strand(DnaSeq{}, rules), Error);
}

TEST_CASE("hairpin: crafted fold-back is seen, short loop is not") {
  const DnaSeq stem = parse_dna("ACGTTGCACGAT");  // 12 nt
  const DnaSeq rc = reverse_complement(stem);

  DnaSeq hp = stem;
  hp.insert(hp.end(), {Nucleotide::A, Nucleotide::A, Nucleotide::A});
  hp.insert(hp.end(), rc.begin(), rc.end());
  CHECK(detect_hairpin(hp, 12, 3));
  CHECK_FALSE(detect_hairpin(hp, 13, 3));

  DnaSeq tight = stem;
  tight.insert(tight.end(), {Nucleotide::A, Nucleotide::A});
  tight.insert(tight.end(), rc.begin(), rc.end());
  CHECK_FALSE(detect_hairpin(tight, 12, 3));
  CHECK(detect_hairpin(tight, 12, 2));

  // Same window but plain repeat, not reverse complement: no stem.
  DnaSeq rep = stem;
  rep.insert(rep.end(), {Nucleotide::A, Nucleotide::A, Nucleotide::A});
  rep.insert(rep.end(), stem.begin(), stem.end());
  CHECK_FALSE(detect_hairpin(rep, 12, 3));
}

TEST_CASE("hairpin matches the quadratic reference") {
  std::mt19937_64 rng(601);
  int positives = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const DnaSeq s = random_seq(rng, 16 + rng() % 49);  // 16..64 nt
    const bool got = detect_hairpin(s, 6, 3);
    const bool want = hairpin_brute(s, 6, 3);
    REQUIRE(got == want);
    positives += want;
  }
  CHECK(positives > 100);  // the sample actually exercises both outcomes
  CHECK(positives < 9900);
}

TEST_CASE("hairpin guards its stem width") {
  std::mt19937_64 rng(602);
  const DnaSeq s = random_seq(rng, 20);
  CHECK_FALSE(detect_hairpin(s, 32, 3));  // 2*32+3 nt cannot fit in 20
  CHECK_THROWS_AS(detect_hairpin(s, 33, 3), Error);
}

TEST_CASE("corpus_report aggregates per-strand results") {
  RuleSet rules;
  std::vector<DnaSeq> strands;
  strands.push_back(parse_dna("ACGTACGTACGTACGTACGT"));  // clean
  strands.push_back(parse_dna("ACGTAAAATACGTACGTACG"));  // homopolymer
  strands.push_back(parse_dna("ATATATATATATATATATAT"));  // gc low
  const FeasibilityReport rep = corpus_report(strands, rules);
  CHECK(rep.strand_count == 3);
  CHECK(rep.homopolymer_violation);
  CHECK(rep.homopolymer_violations == 1);
  CHECK(rep.gc_violations == 1);
  CHECK(rep.hairpin_count == 0);
  CHECK(rep.length_violations == 0);
  CHECK_FALSE(rep.length_violation);
  CHECK(rep.avg_score == doctest::Approx(2.0 / 3.0));
  CHECK(rep.mean_gc == doctest::Approx((0.5 + 0.4 + 0.0) / 3.0));
  CHECK(rep.to_table().find("strands") != std::string::npos);

  const std::vector<DnaSeq> none;
  CHECK_THROWS_AS(corpus_report(none, rules), Error);
}

TEST_CASE("default primers are rule-clean") {
  const SystemConfig cfg = SystemConfig::defaults();
  RuleSet rules;
  CHECK(score_strand(cfg.primer_forward, rules).score() == 0);
  CHECK(score_strand(cfg.primer_reverse, rules).score() == 0);
}
