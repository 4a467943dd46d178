#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prefal/morphism.hpp"
#include "prefal/sturmian_spec.hpp"
#include "prefal/word.hpp"

namespace prefal {

namespace detail {
class Stream;
}

class InfiniteWord;

/// Structural facts a stream can expose for certificate construction.
struct MorphicInfo {
  Morphism m;
  Letter seed;
};
struct PeriodicInfo {
  FiniteWord period;
};
struct DerivedInfo {
  std::shared_ptr<InfiniteWord> parent;
};

/// Exact structural knowledge attached to a word known to be Sturmian.
struct SturmianCarrierInfo {
  enum class Form { Standard, Singular, Opaque };
  Form form = Form::Opaque;
  std::optional<Directive> directive;  // Standard / Singular
  FiniteWord u;                        // Singular: the word is u·S(directive)
  std::optional<SturmianSpec> spec;    // present for spec-realized roots
};

/// A deterministic lazy symbol stream with an append-only prefix buffer.
/// Copies share the underlying buffer; materialized prefixes never change.
class InfiniteWord {
 public:
  Letter at(std::size_t i) const;

  /// Materializes at least n symbols. Throws stall_error when a derived
  /// stream's factorization stalls before n.
  void ensure(std::size_t n) const;
  bool try_ensure(std::size_t n) const;

  /// How many symbols are materialized right now (grows monotonically).
  std::size_t materialized() const;

  std::span<const Letter> prefix_span(std::size_t n) const;
  FiniteWord prefix(std::size_t n) const;
  std::string render_prefix(std::size_t n) const;

  Letter alphabet_size() const;
  const std::string& glyphs() const;
  std::string describe() const;

  const MorphicInfo* morphic_info() const;
  const PeriodicInfo* periodic_info() const;
  const DerivedInfo* derived_info() const;
  /// Concatenation structure (prefix, tail), when built that way.
  std::pair<const FiniteWord*, const InfiniteWord*> concat_info() const;
  const SturmianCarrierInfo* sturmian_carrier() const;

  /// Attaches Sturmian structure (used by spec realization and the chain).
  void set_sturmian_carrier(SturmianCarrierInfo info);

  // -- constructors ---------------------------------------------------------

  static InfiniteWord periodic(FiniteWord period, std::string glyphs);

  /// Fixed point of m iterated from seed; m must be prolongable on seed.
  static InfiniteWord morphic(Morphism m, Letter seed, std::string glyphs);

  static InfiniteWord concatenation(FiniteWord prefix, InfiniteWord tail);

  /// Lazy image m(base).
  static InfiniteWord image(Morphism m, InfiniteWord base, std::string glyphs);

  /// Standard Sturmian word realized as the limit of the directive's
  /// composition of left Sturmian morphisms.
  static InfiniteWord standard_sturmian(Directive d);

  /// Lazy recoding of parent by its greedy unbordered-prefix factorization.
  /// Pieces come from up_set; code letters are assigned in first-occurrence
  /// order, seeded with the members of up_prime in order. The code alphabet
  /// defaults to |up_set| (a safe upper bound); a certified analysis passes
  /// |up_prime|, and a fresh code beyond it is a hard error.
  static InfiniteWord derived_stream(InfiniteWord parent,
                                     std::vector<FiniteWord> up_set,
                                     std::vector<FiniteWord> up_prime,
                                     Letter code_alphabet = 0);

  /// Inverse of L_a (left=true) or R_a (left=false) on an image stream.
  static InfiniteWord lr_decode(InfiniteWord parent, Letter a, bool left);

  /// First-return coding of a binary word starting a,b with unbordered
  /// prefixes {a, ab}: piece ab maps to code 1, piece a to code 2.
  static InfiniteWord delta_base_stream(InfiniteWord parent, Letter a);

  static InfiniteWord from_function(std::function<Letter(std::size_t)> f,
                                    Letter alphabet, std::string glyphs,
                                    std::string label);

  detail::Stream& stream() const { return *s_; }

 protected:
  explicit InfiniteWord(std::shared_ptr<detail::Stream> s) : s_(std::move(s)) {}

 private:
  std::shared_ptr<detail::Stream> s_;
};

/// Fixed point of the chain morphism i -> u_i for unbordered words
/// u_k <_p ... <_p u_1 with u_1 starting at letter 1; its derived word is
/// the word itself.
InfiniteWord gamma_fixed_point(const std::vector<FiniteWord>& chain);

// -- bounded word statistics ------------------------------------------------

struct FactorStats {
  std::size_t length = 0;
  std::size_t window = 0;
  std::size_t count = 0;  // distinct factors of the given length seen
  std::vector<FiniteWord> left_special;
  std::vector<FiniteWord> right_special;
  std::vector<FiniteWord> bispecial;
};

/// Statistics over factors of length n occurring in prefix(window); counts
/// are lower bounds on the true complexity, exact only when the window is
/// large enough for the generator at hand.
FactorStats factor_stats(const InfiniteWord& x, std::size_t n,
                         std::size_t window);

struct BalanceResult {
  bool balanced = true;
  FiniteWord low, high;  // witness pair when unbalanced
};

/// Checks the balance condition over all pairs of equal-length factors of
/// prefix(bound); binary alphabet only.
BalanceResult is_balanced(const InfiniteWord& x, std::size_t bound);

/// Maximal distance between consecutive occurrence starts of u in
/// prefix(bound), counting the run-up from position 0; nullopt when u
/// occurs fewer than twice.
std::optional<std::size_t> uniform_recurrence_gap(const InfiniteWord& x,
                                                  const FiniteWord& u,
                                                  std::size_t bound);

}  // namespace prefal
