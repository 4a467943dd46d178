#pragma once

#include <optional>
#include <utility>

#include "prefal/infinite_word.hpp"
#include "prefal/sturmian_spec.hpp"

namespace prefal {

/// Realizes a spec as a lazy stream with exact structural information
/// attached. When validate is set, the realized word must pass the
/// bounded Sturmian gate (balance and factor complexity n+1).
InfiniteWord realize(const SturmianSpec& spec, bool validate = true);

/// Standard Sturmian word from a directive sequence.
InfiniteWord standard_word(const Directive& d);

/// The letter a with aa a factor of prefix(bound). Exactly one of aa, bb
/// occurs in a Sturmian word; finding neither or both raises an error.
Letter sturmian_type(const InfiniteWord& x, std::size_t bound = 512);

/// Bounded validation gate: balance on prefix(bound) plus factor counts
/// n+1 for 1 <= n <= max_n.
bool validate_sturmian(const InfiniteWord& x, std::size_t bound = 512,
                       std::size_t max_n = 12);

/// One desubstitution step: writes x as L_a(y) (when x starts with its type
/// letter) or R_a(y) (otherwise) and returns the tag with the lazy preimage.
/// A word starting a,b with type a is the base case and raises an error
/// pointing at delta_base.
std::pair<LR, InfiniteWord> desubstitute(const InfiniteWord& x,
                                         std::size_t bound = 512);

/// Derived word of a Sturmian word with exactly two unbordered prefixes
/// {a, ab}: the first-return coding over code letters 1, 2.
InfiniteWord delta_base(const InfiniteWord& x, std::size_t bound = 512);

/// Exact derived word of a validated spec in P1: desubstitute until the
/// base case, then code first returns. Equal, symbol for symbol, to the
/// greedy unbordered-prefix recoding.
InfiniteWord sturmian_delta(const SturmianSpec& spec);

/// Stream-level version used on words with Sturmian carrier information.
InfiniteWord sturmian_delta_stream(const InfiniteWord& x,
                                   std::size_t bound = 512);

/// Exactly the two unbordered prefixes appearing in the factorization:
/// U the longest unbordered prefix, V the longest proper unbordered prefix
/// of U. Requires a Sturmian word admitting a prefixal factorization.
std::pair<FiniteWord, FiniteWord> up_pair(const InfiniteWord& x,
                                          std::size_t bound = 512);
std::pair<FiniteWord, FiniteWord> up_pair(const SturmianSpec& spec);

/// False exactly when the spec normalizes to a single letter prepended to
/// a standard word (such words have unbounded unbordered prefixes).
bool is_in_P1(const SturmianSpec& spec);

struct Singularity {
  bool singular = false;
  FiniteWord u;         // normal form u·S(directive) when singular
  Directive directive;
};

Singularity is_singular(const SturmianSpec& spec);

struct SturmianVerdict {
  bool in_p_infinity = false;
  std::size_t not_in_p_n = 0;  // meaningful when !in_p_infinity
  NormalForm nf;
};

/// Full classification: nonsingular words sit in every hierarchy level;
/// singular ones exit at a level computed by exact derivation steps on the
/// normal form.
SturmianVerdict classify_sturmian(const SturmianSpec& spec);

/// One exact derivation step on a normal form (u possibly empty for a
/// standard word). The result is the normal form of a word isomorphic to
/// the derived word. Requires |u| != 1.
std::pair<FiniteWord, Directive> delta_step(const FiniteWord& u,
                                            const Directive& d);

/// Next derivation level for a word carrying Sturmian structure, with
/// structure propagated (isomorphic to the derived word; exact for the
/// chain's purposes).
InfiniteWord sturmian_chain_next(const InfiniteWord& x);

}  // namespace prefal
