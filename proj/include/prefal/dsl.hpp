#pragma once

#include <string>
#include <string_view>

#include "prefal/coloring.hpp"
#include "prefal/infinite_word.hpp"

namespace prefal {

/// Parses a word spec:
///   morphic(0->01,1->0;0) | periodic(01) | concat(10;WORD)
///   | image(L0 R1;WORD) | image(0->01,1->0;WORD)
///   | sturm_std(DIRECTIVE) | sturm(dir=DIRECTIVE;pre=LETTERS;chain=LR...)
/// with DIRECTIVE := [binary]"("binary")*", e.g. 01(01)* or (10)*.
InfiniteWord parse_word_spec(std::string_view text);

/// Parses a coloring:
///   coloring{ prefix_end(0)->c0; prefix_end(1)->c1; otherwise->c2 }
/// Predicates: prefix | prefix_end(G) | ends(G) | len_lt(K) | word(W)
/// | otherwise. Letters resolve against the context word's glyph table.
Coloring parse_coloring_spec(std::string_view text, std::string_view glyphs);

Directive parse_directive(std::string_view text);

}  // namespace prefal
