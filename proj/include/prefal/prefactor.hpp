#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prefal/infinite_word.hpp"
#include "prefal/morphism.hpp"

namespace prefal {

enum class Completeness { BoundedOnly, Certified };

/// Result of scanning a word for unbordered prefixes and bounded greedy
/// factorization data. Certified means up_set is provably all of UP(x),
/// N is exact and up_prime lists exactly the prefixes the factorization
/// uses, in first-occurrence order.
struct UPAnalysis {
  std::vector<FiniteWord> up_set;    // by increasing length
  std::size_t N = 0;                 // longest found unbordered prefix
  std::vector<FiniteWord> up_prime;  // first-occurrence (≺) order
  CodeTable phi;                     // code letter i ↦ up_prime[i]
  Completeness completeness = Completeness::BoundedOnly;
  std::size_t scan_bound = 0;
  std::optional<std::size_t> stall_position;
  std::optional<Morphism> tau_prime;  // fixed-point certificate morphism
  // Derived-word structure computed by the eventually-periodic certificate.
  std::optional<FiniteWord> delta_preperiod, delta_period;
  std::string certificate;  // route description when certified

  bool certified() const { return completeness == Completeness::Certified; }
};

/// All unbordered prefixes of length <= L, found with one border-table pass
/// over prefix(L), plus the bounded greedy factorization data.
UPAnalysis scan_up(const InfiniteWord& x, std::size_t L);

/// First m pieces of the greedy factorization: each piece is the longest
/// up_set member matching at the current position. Throws stall_error when
/// no member matches (evidence that UP(x) exceeds the scan bound).
std::vector<FiniteWord> greedy_factorize(const InfiniteWord& x,
                                         const UPAnalysis& a, std::size_t m);

/// Lazy derived word: code letters of the greedy factorization, assigned in
/// first-occurrence order starting from the analysis' table.
InfiniteWord derive(const InfiniteWord& x, const UPAnalysis& a);

/// Attempts to certify completeness of the analysis:
///   - fixed points of a morphism: the table must close under the morphism
///     and reproduce the word (gives the derived morphism),
///   - (eventually) periodic words: the greedy factorization must enter a
///     cycle of cut positions, exhibiting an infinite prefixal factorization,
///   - words with Sturmian structure: the two-prefix pair is computed
///     exactly by desubstitution.
/// Anything else, and any failed attempt, stays BoundedOnly.
UPAnalysis certify_up(const InfiniteWord& x, UPAnalysis a,
                      std::size_t verify_len = 4096);

/// Refines a prefixal factorization of a prefix of x into factors of the
/// derived word: piece V_i maps to the code word v_i with phi(v_i) = V_i.
/// Requires a certified analysis; a piece that is not a prefix, or whose
/// boundary falls strictly inside an unbordered-prefix piece, is an error.
std::vector<FiniteWord> refine_prefixal(const InfiniteWord& x,
                                        const std::vector<FiniteWord>& pieces,
                                        const UPAnalysis& a);

struct NuEntry {
  std::size_t value = 0;
  bool exact = false;  // true when the level's analysis is certified
};

struct ChainOptions {
  std::size_t depth = 4;
  std::size_t scan_bound = 256;
  std::size_t verify_len = 4096;
  /// Corpus-supplied structural facts: level index -> flag. The only flag
  /// understood is "square_free" (a square-free word has no prefixal
  /// factorization: adjacent pieces with |V_i| <= |V_{i+1}| force a square).
  std::map<std::size_t, std::string> level_flags;
};

struct ChainLevel {
  InfiniteWord word;
  std::optional<UPAnalysis> analysis;
  bool refutes_p1 = false;
  std::string note;
};

struct DerivedChain {
  std::vector<ChainLevel> levels;
  std::vector<NuEntry> nu;
  std::optional<std::pair<std::size_t, std::size_t>> cycle;
  std::string cycle_kind;  // "morphism" | "structure" | "prefix-isomorphism"
  std::optional<std::size_t> refuted_level;
  std::string refutation;
  std::optional<std::size_t> stalled_level;
  std::string stall_note;
};

/// Iterates scan/certify/derive for up to depth levels, recording N per
/// level and looking for repeated levels (exact structural matches first,
/// then prefix isomorphism at length 512).
DerivedChain derived_chain(const InfiniteWord& x, const ChainOptions& opt);

struct HierarchyVerdict {
  enum class Kind { InPInfinityCertified, NotInP, BoundedMember, Unresolved };
  Kind kind = Kind::Unresolved;
  std::size_t n = 0;  // NotInP: smallest n with x outside level n;
                      // BoundedMember: levels checked at the bound
  std::optional<std::pair<std::size_t, std::size_t>> cycle;
  std::string detail;
};

struct HierarchyResult {
  HierarchyVerdict verdict;
  DerivedChain chain;
};

HierarchyResult classify_hierarchy(const InfiniteWord& x,
                                   const ChainOptions& opt);

/// True when prefix(bound) contains no square uu.
bool square_free_prefix(const InfiniteWord& x, std::size_t bound);

}  // namespace prefal
