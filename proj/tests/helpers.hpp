#pragma once

#include <string>

#include "prefal/dsl.hpp"
#include "prefal/prefactor.hpp"

namespace testutil {

inline prefal::InfiniteWord word(const std::string& spec) {
  return prefal::parse_word_spec(spec);
}

/// Binary finite word from "0"/"1" glyphs.
inline prefal::FiniteWord bin(const std::string& s) {
  return prefal::parse_letters(s, prefal::kBinaryGlyphs);
}

/// Finite word over an explicit glyph table.
inline prefal::FiniteWord fw(const std::string& s, const std::string& glyphs) {
  return prefal::parse_letters(s, glyphs);
}

inline prefal::UPAnalysis analyzed(const prefal::InfiniteWord& x,
                                   std::size_t bound = 256) {
  return prefal::certify_up(x, prefal::scan_up(x, bound));
}

inline std::string fib_spec() { return "morphic(0->01,1->0;0)"; }
inline std::string trib_spec() { return "morphic(1->12,2->13,3->1;1)"; }
inline std::string tm_spec() { return "morphic(0->01,1->10;0)"; }

/// The non-uniformly-recurrent block word 0 1 00 11 000 111 ...
inline prefal::InfiniteWord block_word() {
  return prefal::InfiniteWord::from_function(
      [](std::size_t i) -> prefal::Letter {
        // block pair k covers [k(k-1), k(k+1)): k zeros then k ones
        std::size_t k = 1;
        while (k * (k + 1) <= i) ++k;
        std::size_t offset = i - k * (k - 1);
        return offset < k ? 0 : 1;
      },
      2, "01", "blocks(0 1 00 11 000 111 ...)");
}

}  // namespace testutil
