#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prefal/errors.hpp"

namespace prefal {

/// A letter is a dense alphabet index 0..k-1. Rendering to user glyphs
/// happens at the boundary (see render / parse_letters).
using Letter = std::uint32_t;

/// Immutable finite word over a dense alphabet.
class FiniteWord {
 public:
  FiniteWord() = default;
  explicit FiniteWord(std::vector<Letter> symbols, Letter alphabet_size = 0);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Letter operator[](std::size_t i) const { return symbols_[i]; }
  Letter alphabet_size() const { return alphabet_size_; }

  std::span<const Letter> symbols() const { return symbols_; }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  /// Subword [from, to).
  FiniteWord slice(std::size_t from, std::size_t to) const;
  FiniteWord concat(const FiniteWord& other) const;
  bool is_prefix_of(const FiniteWord& other) const;
  bool is_suffix_of(const FiniteWord& other) const;

  bool operator==(const FiniteWord& other) const {
    return symbols_ == other.symbols_;
  }
  bool operator!=(const FiniteWord& other) const { return !(*this == other); }

 private:
  std::vector<Letter> symbols_;
  Letter alphabet_size_ = 0;
};

/// Glyph alphabets. Words over {0,1} render with "01"; derived words over
/// code letters {1..n} render with digits starting at '1'.
inline constexpr std::string_view kBinaryGlyphs = "01";

/// Glyph table for a code alphabet of size k: "123456789ABC...".
std::string code_glyphs(std::size_t k);

std::string render(const FiniteWord& w, std::string_view glyphs);
std::string render(std::span<const Letter> symbols, std::string_view glyphs);

/// Parses a glyph string into letters using the given glyph table.
FiniteWord parse_letters(std::string_view text, std::string_view glyphs);

/// KMP failure function: table[i] = length of the longest proper border of
/// the prefix of length i+1.
std::vector<std::size_t> border_table(std::span<const Letter> w);

/// Shortest border of w (both proper prefix and proper suffix), or nullopt
/// if w is unbordered. O(|w|) via the failure-function border chain.
std::optional<FiniteWord> shortest_border(const FiniteWord& w);

bool is_unbordered(const FiniteWord& w);

/// Letter bijection phi with phi(x) = y symbol-wise, over the letters that
/// actually occur; nullopt if none exists.
std::optional<std::vector<std::pair<Letter, Letter>>> word_isomorphism(
    std::span<const Letter> x, std::span<const Letter> y);

inline std::optional<std::vector<std::pair<Letter, Letter>>> word_isomorphism(
    const FiniteWord& x, const FiniteWord& y) {
  return word_isomorphism(x.symbols(), y.symbols());
}

}  // namespace prefal
