#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prefal/infinite_word.hpp"
#include "prefal/prefactor.hpp"

namespace prefal {

/// Piece predicates, evaluated against a context word. First matching rule
/// wins; rule lists always end with Otherwise.
struct Predicate {
  enum class Kind {
    IsPrefix,             // piece is a prefix of the context word
    EndsWith,             // last letter equals `letter`
    IsPrefixEndingWith,   // both of the above
    LengthLessThan,       // |piece| < k
    MatchesWord,          // piece equals `word`
    Otherwise
  };
  Kind kind = Kind::Otherwise;
  Letter letter = 0;
  std::size_t k = 0;
  FiniteWord word;
};

struct ColorRule {
  Predicate pred;
  std::string color;
};

class Coloring {
 public:
  explicit Coloring(std::vector<ColorRule> rules);

  const std::vector<ColorRule>& rules() const { return rules_; }
  std::vector<std::string> colors() const;

  /// True when every rule producing this color only matches prefixes of the
  /// context word; such colors admit the refined frontier analysis.
  bool prefix_pure(const std::string& color) const;

 private:
  std::vector<ColorRule> rules_;
};

/// First-match color of the non-empty factor u = x[from..to).
std::string color_of(const Coloring& c, const InfiniteWord& x,
                     std::size_t from, std::size_t to);
std::string color_of(const Coloring& c, const InfiniteWord& x,
                     const FiniteWord& u);

struct ColorFrontier {
  /// Cut points p <= n with a factorization of x[0..p) into pieces all of
  /// this color (0 is always present).
  std::vector<std::size_t> reach;
  /// Prefix-pure colors only: reach restricted to the cut points of the
  /// unbordered-prefix factorization. An infinite monochromatic
  /// factorization in prefix pieces must run along those cuts, so a dying
  /// restricted frontier is evidence while single long pieces are not.
  std::optional<std::vector<std::size_t>> sustained;
  bool dead = false;
  std::size_t dead_at = 0;   // last relevant cut when dead
  std::size_t last = 0;      // max of reach
};

struct FrontierReport {
  std::size_t n = 0;
  std::size_t window = 0;  // a color is dead when its frontier stops before
                           // n - window
  std::map<std::string, ColorFrontier> per_color;
  bool all_dead() const;
};

/// Reachability of factorization cut points per color over prefix(n).
/// Bounded evidence only, never a proof.
FrontierReport frontier(const InfiniteWord& x, const Coloring& c,
                        std::size_t n, std::size_t window = 0);

/// For a word certified outside P1, emits the two-color prefix/non-prefix
/// coloring whose prefix frontier dies: a concrete separating-coloring
/// witness at the bound.
std::pair<Coloring, FrontierReport> refute_via_P1(
    const InfiniteWord& x, const HierarchyVerdict& verdict,
    std::size_t n = 128);

}  // namespace prefal
