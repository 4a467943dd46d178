#pragma once

#include <optional>
#include <vector>

#include "prefal/word.hpp"

namespace prefal {

/// Total map from letters to non-empty finite words.
class Morphism {
 public:
  /// images[a] is the image of letter a. Every image must be non-empty and
  /// stay below codomain_size.
  Morphism(std::vector<FiniteWord> images, Letter codomain_size);

  Letter domain_size() const { return static_cast<Letter>(images_.size()); }
  Letter codomain_size() const { return codomain_size_; }
  const FiniteWord& image(Letter a) const { return images_.at(a); }

  FiniteWord apply(const FiniteWord& w) const;
  FiniteWord apply(std::span<const Letter> w) const;

  /// True iff image(seed) starts with seed and has length >= 2, so that
  /// iterating from seed converges to an infinite fixed point.
  bool prolongable_on(Letter seed) const;

  bool operator==(const Morphism& other) const {
    return codomain_size_ == other.codomain_size_ && images_ == other.images_;
  }

 private:
  std::vector<FiniteWord> images_;
  Letter codomain_size_;
};

/// The Sturmian elementary morphisms over {0,1}:
///   L_a: a -> a, b -> ab        R_a: a -> a, b -> ba
enum class LR { L0, L1, R0, R1 };

Morphism lr_morphism(LR tag);
const char* lr_name(LR tag);
std::optional<LR> lr_from_name(std::string_view name);

/// Ordered codeword list: code letter i (0-based) maps to codewords[i].
/// Stands for the order-preserving bijection from code letters onto the
/// unbordered prefixes used by a factorization, so parses are unique.
struct CodeTable {
  std::vector<FiniteWord> codewords;

  Letter code_alphabet() const {
    return static_cast<Letter>(codewords.size());
  }
  FiniteWord apply(std::span<const Letter> code_word) const;
  bool operator==(const CodeTable& other) const = default;
};

/// The unique factorization of w over the table's codewords, as a sequence
/// of code letters, or nullopt when no parse exists. Dynamic programming
/// over cut positions; two distinct complete parses indicate a corrupted
/// table and throw decode_error.
std::optional<std::vector<Letter>> decode(const CodeTable& table,
                                          const FiniteWord& w);

/// Given a morphism m fixing a word x and the code table of x's unbordered-
/// prefix factorization, builds the morphism m' on code letters with
/// table∘m' = m∘table. Throws when some image fails to parse (the table does
/// not describe a factorization compatible with m).
Morphism derived_morphism(const Morphism& m, const CodeTable& table);

}  // namespace prefal
